"""Exact counting of orbit and conjugacy-class points for PSL(2,Z)."""

from ._core import *  # noqa: F401,F403
from ._core import DomainError, GroupElement, OverflowError, Point, RationalPoint

__all__ = [name for name in dir() if not name.startswith("_")]
