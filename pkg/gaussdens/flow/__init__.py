"""Mean curvature flow of curves and spheres."""
