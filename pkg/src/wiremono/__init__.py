"""Exact arithmetic and identity checking for twisted Brauer and partition monoids."""

__version__ = "0.1.0"
