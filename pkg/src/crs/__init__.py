"""Course recommendation engine with skill-gap analysis."""

__version__ = "0.1.0"
