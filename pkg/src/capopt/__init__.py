"""Submission-limit desk-rejection policies and an LP-based optimizer."""

__version__ = "0.1.0"
