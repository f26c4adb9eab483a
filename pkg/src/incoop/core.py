"""Exact game data model: coalitions as bitmasks, complete and incomplete games.

Players are 0-based inside bitmasks (player ``i`` is bit ``i``) and 1-based
everywhere a human reads or writes them; :func:`coalition` and
:func:`players` are the only crossing points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]
PayoffVector = tuple  # tuple[Fraction, ...] of length n

MAX_PLAYERS = 16


class GameError(ValueError):
    """Invalid game data, or an operation applied outside its domain."""


class ShapeError(GameError):
    """The set of known coalitions does not have the shape an operation needs."""


class NotExtendableError(GameError):
    """The incomplete game has no 1-convex extension."""


def to_rational(x: RationalLike) -> Fraction:
    """Exact conversion; floats are refused because they are not exact inputs."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact value {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or "." in s or "e" in s.lower():
            raise GameError(f"not an exact rational: {x!r}")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise GameError(f"not an exact rational: {x!r}") from exc
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def fmt(x: Fraction) -> str:
    """``p/q`` or ``p``; the only number format used for output."""
    return str(x)


# -- coalitions ---------------------------------------------------------------


def _check_n(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_PLAYERS:
        raise GameError(f"player count must be in 1..{MAX_PLAYERS}, got {n!r}")


def grand(n: int) -> int:
    return (1 << n) - 1


def size(mask: int) -> int:
    return bin(mask).count("1")


def members(mask: int) -> list[int]:
    """0-based players of a coalition, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def coalition(players_1based: Iterable[int], n: int) -> int:
    """Bitmask of a coalition given by 1-based player numbers."""
    mask = 0
    for p in players_1based:
        if not 1 <= p <= n:
            raise GameError(f"player {p} outside 1..{n}")
        mask |= 1 << (p - 1)
    return mask


def players(mask: int) -> tuple[int, ...]:
    """1-based player numbers of a coalition."""
    return tuple(i + 1 for i in members(mask))


def label(mask: int) -> str:
    return "{" + ",".join(str(p) for p in players(mask)) + "}"


def all_coalitions(n: int) -> range:
    return range(1 << n)


def subsets(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


# -- complete games -----------------------------------------------------------


@dataclass(frozen=True)
class CompleteGame:
    """Characteristic function on all ``2**n`` coalitions, indexed by mask."""

    n: int
    values: tuple

    def __post_init__(self) -> None:
        _check_n(self.n)
        vals = tuple(to_rational(v) for v in self.values)
        if len(vals) != 1 << self.n:
            raise GameError(f"expected {1 << self.n} values, got {len(vals)}")
        if vals[0] != 0:
            raise GameError("the empty coalition must have value 0")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int], RationalLike]) -> "CompleteGame":
        return cls(n, tuple([Fraction(0)] + [to_rational(fn(m)) for m in range(1, 1 << n)]))

    @classmethod
    def additive(cls, weights: Sequence[RationalLike]) -> "CompleteGame":
        w = [to_rational(x) for x in weights]
        return cls.from_function(len(w), lambda m: sum((w[i] for i in members(m)), Fraction(0)))

    @classmethod
    def zero(cls, n: int) -> "CompleteGame":
        return cls(n, (Fraction(0),) * (1 << n))

    def __call__(self, mask: int) -> Fraction:
        return self.values[mask]

    @property
    def grand(self) -> int:
        return grand(self.n)

    @property
    def worth(self) -> Fraction:
        """v(N)."""
        return self.values[-1]

    def singleton(self, i: int) -> Fraction:
        return self.values[1 << i]

    def __add__(self, other: "CompleteGame") -> "CompleteGame":
        _same_n(self, other)
        return CompleteGame(self.n, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "CompleteGame") -> "CompleteGame":
        _same_n(self, other)
        return CompleteGame(self.n, tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, k: RationalLike) -> "CompleteGame":
        k = to_rational(k)
        return CompleteGame(self.n, tuple(k * a for a in self.values))

    def shift(self, c: Sequence[RationalLike]) -> "CompleteGame":
        """Add the additive game with weights ``c``."""
        return self + CompleteGame.additive(c)

    def permute(self, perm: Sequence[int]) -> "CompleteGame":
        """The game pi_* v with (pi_* v)(pi(S)) = v(S); ``perm[i]`` is pi(i), 0-based."""
        out = [Fraction(0)] * (1 << self.n)
        for m in range(1 << self.n):
            image = 0
            for i in members(m):
                image |= 1 << perm[i]
            out[image] = self.values[m]
        return CompleteGame(self.n, tuple(out))

    def restrict(self, known: Iterable[int]) -> "IncompleteGame":
        return IncompleteGame(self.n, {m: self.values[m] for m in known})

    @cached_property
    def _integer_form(self) -> tuple:
        """``(d, [(mask, k), ...])`` with ``values[mask] == k / d`` on the nonzero entries."""
        d = lcm(*(v.denominator for v in self.values))
        return d, [(m, v.numerator * (d // v.denominator)) for m, v in enumerate(self.values) if v]


def _same_n(a, b) -> None:
    if a.n != b.n:
        raise GameError(f"player counts differ: {a.n} vs {b.n}")


def combine(games: Sequence[CompleteGame], coeffs: Sequence[RationalLike]) -> CompleteGame:
    """Exact linear combination ``sum(c * g)``.

    Works on a common integer denominator, which is much cheaper than
    Fraction arithmetic coordinate by coordinate.
    """
    if not games:
        raise GameError("empty combination")
    n = games[0].n
    for g in games:
        _same_n(games[0], g)
    cs = [to_rational(c) for c in coeffs]
    if len(cs) != len(games):
        raise GameError("one coefficient per game is required")
    pairs = [(c, g._integer_form) for c, g in zip(cs, games) if c]
    if not pairs:
        return CompleteGame.zero(n)
    # den is a multiple of every product c.denominator * d
    den = lcm(*(c.denominator for c, _ in pairs)) * lcm(*(d for _, (d, _) in pairs))
    acc = [0] * (1 << n)
    for c, (d, entries) in pairs:
        k = c.numerator * (den // (c.denominator * d))
        for m, a in entries:
            acc[m] += k * a
    return CompleteGame(n, tuple(Fraction(a, den) for a in acc))


def scaled_integers(values: Sequence[Fraction]) -> tuple[list[int], int]:
    """``(ints, d)`` with ``values[k] == ints[k] / d``."""
    d = lcm(*(v.denominator for v in values)) if values else 1
    return [v.numerator * (d // v.denominator) for v in values], d


# -- incomplete games ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class IncompleteGame:
    """A game known only on the coalitions in ``known``."""

    n: int
    values: Mapping[int, Fraction] = field(repr=False)

    def __post_init__(self) -> None:
        _check_n(self.n)
        full = grand(self.n)
        vals = {}
        for m, v in self.values.items():
            if not isinstance(m, int) or not 0 <= m <= full:
                raise GameError(f"coalition mask {m!r} outside 0..{full}")
            vals[m] = to_rational(v)
        vals.setdefault(0, Fraction(0))
        if vals[0] != 0:
            raise GameError("the empty coalition must have value 0")
        object.__setattr__(self, "values", MappingProxyType(dict(sorted(vals.items()))))

    @classmethod
    def minimal(cls, singletons: Sequence[RationalLike], worth: RationalLike) -> "IncompleteGame":
        n = len(singletons)
        vals = {1 << i: v for i, v in enumerate(singletons)}
        vals[grand(n)] = worth
        return cls(n, vals)

    def __repr__(self) -> str:
        body = ", ".join(f"{label(m)}: {v}" for m, v in self.values.items() if m)
        return f"IncompleteGame(n={self.n}, {{{body}}})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IncompleteGame):
            return NotImplemented
        return self.n == other.n and dict(self.values) == dict(other.values)

    def __call__(self, mask: int) -> Fraction:
        try:
            return self.values[mask]
        except KeyError:
            raise GameError(f"value of {label(mask)} is unknown") from None

    @property
    def known(self) -> frozenset:
        return frozenset(self.values)

    @property
    def unknown(self) -> list[int]:
        return [m for m in range(1 << self.n) if m not in self.values]

    @property
    def grand(self) -> int:
        return grand(self.n)

    @property
    def worth(self) -> Fraction:
        return self(self.grand)

    def singleton(self, i: int) -> Fraction:
        return self(1 << i)

    def is_complete(self) -> bool:
        return len(self.values) == 1 << self.n

    def is_minimal(self) -> bool:
        return self.known == minimal_known(self.n)

    def has_upper_vector(self) -> bool:
        """N and every N minus one player are known."""
        full = self.grand
        return full in self.values and all(full ^ (1 << i) in self.values for i in range(self.n))

    def agrees(self, w: CompleteGame) -> bool:
        return w.n == self.n and all(w.values[m] == v for m, v in self.values.items())

    def completed(self) -> CompleteGame:
        if not self.is_complete():
            raise ShapeError("game is not complete")
        return CompleteGame(self.n, tuple(self.values[m] for m in range(1 << self.n)))

    def __add__(self, other: "IncompleteGame") -> "IncompleteGame":
        _same_n(self, other)
        if self.known != other.known:
            raise ShapeError("games have different known coalitions")
        return IncompleteGame(self.n, {m: v + other.values[m] for m, v in self.values.items()})

    def scale(self, k: RationalLike) -> "IncompleteGame":
        k = to_rational(k)
        return IncompleteGame(self.n, {m: k * v for m, v in self.values.items()})


def minimal_known(n: int) -> frozenset:
    return frozenset([0, grand(n)] + [1 << i for i in range(n)])


def require_minimal(g: IncompleteGame) -> None:
    if not g.is_minimal():
        raise ShapeError("expected a minimal incomplete game (only singletons and N known)")


def require_upper_vector(g: IncompleteGame) -> None:
    if not g.has_upper_vector():
        raise ShapeError("expected N and every N\\i to be known")


# -- derived quantities -------------------------------------------------------


def upper_vector(g: CompleteGame) -> PayoffVector:
    """b_i = v(N) - v(N \\ i)."""
    full = g.grand
    return tuple(g.values[full] - g.values[full ^ (1 << i)] for i in range(g.n))


def coalition_sum(x: Sequence[Fraction], mask: int) -> Fraction:
    return sum((x[i] for i in members(mask)), Fraction(0))


def gap(g: CompleteGame, S: int) -> Fraction:
    """g(S) = b(S) - v(S)."""
    return coalition_sum(upper_vector(g), S) - g.values[S]


def excess(g: CompleteGame, S: int, x: Sequence[Fraction]) -> Fraction:
    """e(S, x) = v(S) - x(S)."""
    if len(x) != g.n:
        raise GameError("payoff vector length differs from n")
    return g.values[S] - coalition_sum(x, S)


def excess_profile(g: CompleteGame, x: Sequence[Fraction]) -> tuple:
    """All ``2**n`` excesses as ``(mask, excess)``, non-increasing, ties by mask."""
    if len(x) != g.n:
        raise GameError("payoff vector length differs from n")
    sums = [Fraction(0)] * (1 << g.n)
    for m in range(1, 1 << g.n):
        low = m & -m
        sums[m] = sums[m ^ low] + x[low.bit_length() - 1]
    pairs = [(m, g.values[m] - sums[m]) for m in range(1 << g.n)]
    pairs.sort(key=lambda p: (-p[1], p[0]))
    return tuple(pairs)


def zero_normalise(g: CompleteGame) -> CompleteGame:
    single = [g.singleton(i) for i in range(g.n)]
    return CompleteGame.from_function(g.n, lambda m: g.values[m] - coalition_sum(single, m))


def total_excess(g: IncompleteGame) -> Fraction:
    """Delta = v(N) - sum of singleton values."""
    needed = [g.grand] + [1 << i for i in range(g.n)]
    missing = [m for m in needed if m not in g.values]
    if missing:
        raise ShapeError("total excess needs N and every singleton; missing " + ", ".join(map(label, missing)))
    return g.worth - sum((g.singleton(i) for i in range(g.n)), Fraction(0))


def zero_normalise_minimal(g: IncompleteGame) -> IncompleteGame:
    require_minimal(g)
    return IncompleteGame.minimal([0] * g.n, total_excess(g))
