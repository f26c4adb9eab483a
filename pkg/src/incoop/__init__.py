"""Exact computations for 1-convex extensions of incomplete cooperative games."""

from .core import (
    CompleteGame,
    GameError,
    IncompleteGame,
    NotExtendableError,
    ShapeError,
    coalition,
    players,
    total_excess,
    upper_vector,
)
from .oneconvex import (
    NotAMember,
    decompose,
    describe,
    is_extendable,
    is_one_convex,
    upper_game,
)
from .values import CONCEPTS, compute_value

__all__ = [
    "CONCEPTS",
    "CompleteGame",
    "GameError",
    "IncompleteGame",
    "NotAMember",
    "NotExtendableError",
    "ShapeError",
    "coalition",
    "compute_value",
    "decompose",
    "describe",
    "is_extendable",
    "is_one_convex",
    "players",
    "total_excess",
    "upper_game",
    "upper_vector",
]
