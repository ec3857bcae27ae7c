"""Mutually unbiased bases for prime-power dimensions."""

__version__ = "1.0.0"
