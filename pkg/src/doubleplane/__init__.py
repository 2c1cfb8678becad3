"""Normal forms for space curves in a double plane, computed over a prime field."""

__version__ = "0.1.0"
