"""Relative cohomology of Lie superalgebras over Q."""

__version__ = "0.1.0"
