"""Exact resolution data of plane curve branches."""
__version__ = "0.1.0"
