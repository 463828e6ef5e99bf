"""Hurwitz systems, exceptional dissections of marked surfaces and their braid actions."""

__version__ = "0.1.0"
