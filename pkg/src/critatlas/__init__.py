"""Catalogs of plane graphs of girth 5 that are critical for precoloured faces."""

__version__ = "0.1.0"
