"""Semantic exceptions shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""
