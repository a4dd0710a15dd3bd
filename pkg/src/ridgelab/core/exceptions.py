"""Error types raised across ridgelab."""

from __future__ import annotations


class RidgeLabError(Exception):
    """Base class for library errors."""


class DomainError(RidgeLabError, ValueError):
    """A point (or a finite-difference stencil) lies outside the closed unit ball."""


class BudgetExceededError(RidgeLabError, RuntimeError):
    """A construction needs more centers, queries or candidates than allowed."""


class ClassMismatchError(RidgeLabError, ValueError):
    """An adversary was requested for a class it does not belong to."""


__all__ = ["BudgetExceededError", "ClassMismatchError", "DomainError", "RidgeLabError"]
