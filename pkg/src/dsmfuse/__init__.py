"""Belief fusion on finite pre-Boolean algebras and continuous interval models."""

from . import belief, chebfusion, ordered, prebool

__all__ = ["belief", "chebfusion", "ordered", "prebool"]
__version__ = "0.1.0"
