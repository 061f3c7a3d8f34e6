"""Half-checking propagators for the travelling salesman problem."""

__version__ = "0.1.0"
