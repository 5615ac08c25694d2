"""Reading and writing results and inputs."""
