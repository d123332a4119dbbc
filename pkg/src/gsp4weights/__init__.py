"""Exact combinatorics of Serre weights and local models for GSp4."""

__version__ = "0.1.0"
