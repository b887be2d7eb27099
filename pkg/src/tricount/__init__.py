"""Counting triangulations of polygons with holes, and the reduction from independent sets."""

__version__ = "0.1.0"
