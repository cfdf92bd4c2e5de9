"""Exact symbolic verification engine for two cube-of-resolutions
tangle invariants over the two-element field."""

__version__ = "0.1.0"
