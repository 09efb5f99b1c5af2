"""Marked-tesselation model of the spin mapping class group P(SL(2,Z)) and of PPSL(2,Z)."""

__version__ = "0.1.0"
