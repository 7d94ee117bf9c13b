"""Verification kernel for finite strict 2-groups, their orbit 2-category and 2-sheaves."""

__version__ = "0.1.0"
