"""Combinatorics and norm estimates for R-diagonal dilation semigroups."""

from rdsemi.errors import DomainError, ResourceLimitError, StringParseError

__version__ = "0.1.0"

__all__ = ["DomainError", "ResourceLimitError", "StringParseError", "__version__"]
