"""Domain types shared by the whole package."""
