"""UAV-aided D2D relay network model and multi-objective scheduling solvers."""

__version__ = "0.1.0"
