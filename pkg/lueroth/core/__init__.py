"""Core numeration, geometry and dimension services."""
