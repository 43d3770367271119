"""Exact verification of Heisenberg-type Poisson-Lie groups and their multiplicative unitaries."""

from plq.exppoly import ONE, ExpPoly

__all__ = ["ONE", "ExpPoly"]
__version__ = "0.1.0"
