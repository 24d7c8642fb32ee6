"""Exact reconstruction of an 8x8 zero pattern and its block-diagonal extension that is spectrally arbitrary over C."""

__version__ = "0.1.0"
