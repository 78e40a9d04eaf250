"""Exact point counting over finite fields and mechanical checks of the Weil conjectures."""

__version__ = "0.1.0"
