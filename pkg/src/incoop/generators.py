"""Seeded random games with exact small-denominator values."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .core import CompleteGame, GameError, IncompleteGame, grand, members, size
from .oneconvex import DecompositionCertificate, ExtensionDescription

DENOMINATORS = (1, 1, 2, 3, 4, 6)


def rational(rng: random.Random, lo: int, hi: int) -> Fraction:
    """Uniform-ish rational in [lo, hi] with a small denominator."""
    d = rng.choice(DENOMINATORS)
    return Fraction(rng.randint(lo * d, hi * d), d)


def positive_rational(rng: random.Random, hi: int) -> Fraction:
    d = rng.choice(DENOMINATORS)
    return Fraction(rng.randint(1, hi * d), d)


def minimal_game(rng: random.Random, n: int, delta: str = "nonnegative") -> IncompleteGame:
    """Random minimal game; ``delta`` is one of positive, zero, negative, nonnegative, any."""
    singles = [rational(rng, -3, 6) for _ in range(n)]
    if delta == "any":
        delta = rng.choice(["positive", "zero", "negative"])
    if delta == "nonnegative":
        delta = "zero" if rng.random() < 0.15 else "positive"
    if delta == "positive":
        d = positive_rational(rng, 8)
    elif delta == "zero":
        d = Fraction(0)
    elif delta == "negative":
        d = -positive_rational(rng, 8)
    else:
        raise GameError(f"unknown Delta mode {delta!r}")
    return IncompleteGame.minimal(singles, sum(singles, Fraction(0)) + d)


def one_convex_game(rng: random.Random, n: int, tight: bool = False) -> CompleteGame:
    """Random 1-convex game built from its upper vector and nonnegative slacks.

    With ``tight`` the gap of N is zero.
    """
    full = grand(n)
    worth = rational(rng, -2, 12)
    b = [rational(rng, -2, 6) for _ in range(n)]
    if tight:
        b[0] += worth - sum(b, Fraction(0))
    else:
        short = worth - sum(b, Fraction(0))
        if short > 0:
            b = [bi + short / n for bi in b]
        if rng.random() < 0.8:
            b[rng.randrange(n)] += rational(rng, 0, 4)
    vals = [Fraction(0)] * (1 << n)
    vals[full] = worth
    for S in range(1, full):
        outside = sum((b[j] for j in members(full ^ S)), Fraction(0))
        if size(S) == n - 1:
            vals[S] = worth - outside
        else:
            slack = Fraction(0) if rng.random() < 0.3 else rational(rng, 0, 5)
            vals[S] = worth - outside - slack
    return CompleteGame(n, tuple(vals))


def one_convex_game_with_null_player(rng: random.Random, n: int, player: int) -> CompleteGame:
    """1-convex game in which ``player`` (0-based) is a null player.

    Built from a tight 1-convex game on the other players; tightness is
    exactly what keeps the singleton inequality of the null player valid.
    """
    if n < 2:
        raise GameError("need at least two players")
    sub = one_convex_game(rng, n - 1, tight=True)

    def squeeze(S: int) -> int:
        low = S & ((1 << player) - 1)
        high = S >> (player + 1)
        return low | (high << player)

    return CompleteGame.from_function(n, lambda S: sub.values[squeeze(S)])


def complete_game(rng: random.Random, n: int) -> CompleteGame:
    """Arbitrary rational game (no structure)."""
    return CompleteGame.from_function(n, lambda S: rational(rng, -5, 10))


def duv_game(
    rng: random.Random, n: int, known_probability: float = 0.4, extendable: bool = True
) -> IncompleteGame:
    """Game knowing N, every N minus a player, and a random extra selection.

    Extendable instances are restrictions of a random 1-convex game. For a
    non-extendable one a known coalition is pushed above its bound, or the
    upper vector is made too small.
    """
    if n == 1 and not extendable:
        raise GameError("every one-player game is extendable")
    w = one_convex_game(rng, n)
    full = grand(n)
    known = {0, full} | {full ^ (1 << i) for i in range(n)}  # n = 1 adds only the empty set
    for S in range(1, full):
        if S not in known and rng.random() < known_probability:
            known.add(S)
    vals = {S: w.values[S] for S in known}
    if not extendable:
        extra = [S for S in known if S not in (0, full) and size(S) != n - 1]
        if extra and rng.random() < 0.5:
            S = rng.choice(sorted(extra))
            b_out = sum((w.values[full] - w.values[full ^ (1 << j)] for j in members(full ^ S)), Fraction(0))
            vals[S] = w.values[full] - b_out + positive_rational(rng, 3)
        else:
            b_total = sum((w.values[full] - w.values[full ^ (1 << j)] for j in range(n)), Fraction(0))
            vals[full] = b_total + positive_rational(rng, 3)
            for i in range(n):
                vals[full ^ (1 << i)] = w.values[full ^ (1 << i)] + (vals[full] - w.values[full])
            # b is unchanged, v(N) now exceeds b(N)
    return IncompleteGame(n, vals)


def certificate(rng: random.Random, d: ExtensionDescription, max_beta: int = 5) -> DecompositionCertificate:
    """Random convex weights on the extreme games and nonnegative ray weights."""
    k = len(d.extreme_games)
    raw = [rng.randint(0, 6) for _ in range(k)]
    if not any(raw):
        raw[rng.randrange(k)] = 1
    total = sum(raw)
    alphas = {i: Fraction(r, total) for i, r in enumerate(raw)}
    betas = {}
    for T in d.rays_by_coalition:
        betas[T] = Fraction(0) if rng.random() < 0.3 else rational(rng, 0, max_beta)
    return DecompositionCertificate(alphas, betas)


def seeded(seed: Optional[int]) -> random.Random:
    return random.Random(seed)
