"""Invariants of codimension-two projective toric varieties computed from the Gale dual."""

__version__ = "0.1.0"
