"""1-convexity of complete games and the 1-convex extension sets of incomplete games.

Two shapes of known-coalition set are supported:

* minimal: only the singletons and N are known;
* defined upper vector ("duv"): N and every N minus one player are known,
  so the upper vector b is fixed by the known data.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Mapping, Optional

from .core import (
    CompleteGame,
    GameError,
    IncompleteGame,
    NotExtendableError,
    PayoffVector,
    ShapeError,
    combine,
    coalition_sum,
    gap,
    grand,
    label,
    members,
    require_minimal,
    require_upper_vector,
    scaled_integers,
    size,
    total_excess,
    upper_vector,
)

__all__ = [
    "DecompositionCertificate",
    "ExtensionDescription",
    "NotAMember",
    "centroid_games",
    "centroid_rays",
    "concession_vector",
    "condition_slacks",
    "decompose",
    "decompose_duv",
    "decompose_minimal",
    "describe",
    "description_duv",
    "description_minimal",
    "extreme_game_minimal",
    "extreme_ray",
    "is_extendable",
    "is_extendable_duv",
    "is_extendable_minimal",
    "is_one_convex",
    "is_one_convex_by_gap",
    "is_quasi_balanced",
    "is_upper_game_one_convex",
    "ray_index_set_minimal",
    "total_excess",
    "upper_game",
    "upper_game_duv",
    "upper_game_minimal",
    "upper_game_one_convex_criterion",
]


# -- complete games -----------------------------------------------------------


def _complement_sums(b: list, n: int) -> list:
    """``out[m] = b(N \\ m)`` for every mask."""
    full = grand(n)
    sums = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        sums[m] = sums[m ^ low] + b[low.bit_length() - 1]
    return [sums[full ^ m] for m in range(1 << n)]


def is_one_convex(g: CompleteGame) -> bool:
    """v(S) <= v(N) - b(N \\ S) for every nonempty S, and b(N) >= v(N)."""
    v, _ = scaled_integers(g.values)
    n, full = g.n, g.grand
    b = [v[full] - v[full ^ (1 << i)] for i in range(n)]
    if sum(b) < v[full]:
        return False
    rest = _complement_sums(b, n)
    return all(v[S] <= v[full] - rest[S] for S in range(1, full + 1))


def is_one_convex_by_gap(g: CompleteGame) -> bool:
    """Gap form: 0 <= g(N) <= g(S) for every nonempty S."""
    gN = gap(g, g.grand)
    return gN >= 0 and all(gap(g, S) >= gN for S in range(1, g.grand + 1))


def condition_slacks(g: CompleteGame) -> tuple[dict, Fraction]:
    """Slack of each 1-convexity inequality.

    Returns ``({S: v(N) - b(N\\S) - v(S)}, b(N) - v(N))`` over nonempty S;
    a game is 1-convex iff every slack is nonnegative.
    """
    b = upper_vector(g)
    full = g.grand
    per = {S: g.worth - coalition_sum(b, full ^ S) - g.values[S] for S in range(1, full + 1)}
    return per, sum(b, Fraction(0)) - g.worth


def concession_vector(g: CompleteGame) -> PayoffVector:
    """lambda_i = min gap over coalitions containing i."""
    gaps = [gap(g, S) for S in range(1 << g.n)]
    out = []
    for i in range(g.n):
        bit = 1 << i
        out.append(min(gaps[S] for S in range(1 << g.n) if S & bit))
    return tuple(out)


def is_quasi_balanced(g: CompleteGame) -> bool:
    b = upper_vector(g)
    lam = concession_vector(g)
    a = [bi - li for bi, li in zip(b, lam)]
    return all(ai <= bi for ai, bi in zip(a, b)) and sum(a, Fraction(0)) <= g.worth <= sum(b, Fraction(0))


# -- descriptions -------------------------------------------------------------


@dataclass(frozen=True)
class ExtensionDescription:
    """Extension set as convex hull of ``extreme_games`` plus the cone of ``extreme_rays``."""

    extreme_games: tuple
    extreme_rays: tuple
    ray_index_set: frozenset

    @property
    def n(self) -> int:
        return self.extreme_games[0].n

    @cached_property
    def rays_by_coalition(self) -> dict:
        """``{T: e_T}`` for the rays of the description."""
        return {_ray_coalition(r): r for r in self.extreme_rays}

    def check(self) -> None:
        """Raise if an extreme game is not 1-convex or a ray leaves the class.

        Cone membership is sampled at step lengths 0, 1 and 10.
        """
        for g in self.extreme_games:
            if not is_one_convex(g):
                raise GameError("extreme game is not 1-convex")
        base = self.extreme_games[0]
        for r in self.extreme_rays:
            for lam in (0, 1, 10):
                if not is_one_convex(base + r.scale(lam)):
                    raise GameError("ray direction leaves the 1-convex class")
        neg = frozenset(_ray_coalition(r) for r in self.extreme_rays)
        if neg != self.ray_index_set:
            raise GameError("ray index set does not match the rays")


@dataclass(frozen=True)
class DecompositionCertificate:
    """Weights ``alphas`` (by extreme-game index) and ``betas`` (by ray coalition)."""

    alphas: Mapping[int, Fraction]
    betas: Mapping[int, Fraction]

    def reconstruct(self, d: ExtensionDescription) -> CompleteGame:
        rays = d.rays_by_coalition
        games = [d.extreme_games[i] for i in self.alphas] + [rays[T] for T in self.betas]
        coeffs = list(self.alphas.values()) + list(self.betas.values())
        return combine(games, coeffs)


def _ray_coalition(r: CompleteGame) -> int:
    return next(m for m, x in enumerate(r.values) if x)


class NotAMember(GameError):
    """The game is outside the described set.

    ``requirement`` is one of ``"fixed-coordinate"``, ``"alpha-sign"``,
    ``"alpha-sum"``, ``"beta-sign"``; ``where`` is the offending player or
    coalition mask and ``value`` the offending quantity.
    """

    def __init__(self, requirement: str, where: Optional[int], value: Fraction, message: str) -> None:
        super().__init__(message)
        self.requirement = requirement
        self.where = where
        self.value = value


def extreme_ray(T: int, n: int) -> CompleteGame:
    """-1 on T, 0 elsewhere."""
    vals = [Fraction(0)] * (1 << n)
    vals[T] = Fraction(-1)
    return CompleteGame(n, tuple(vals))


def centroid_games(d: ExtensionDescription) -> CompleteGame:
    k = len(d.extreme_games)
    return combine(list(d.extreme_games), [Fraction(1, k)] * k)


def centroid_rays(d: ExtensionDescription) -> CompleteGame:
    if not d.extreme_rays:
        return CompleteGame.zero(d.n)
    k = len(d.extreme_rays)
    return combine(list(d.extreme_rays), [Fraction(1, k)] * k)


# -- minimal incomplete games ---------------------------------------------------


def is_extendable_minimal(g: IncompleteGame) -> bool:
    require_minimal(g)
    return total_excess(g) >= 0


def _require_extendable_minimal(g: IncompleteGame) -> Fraction:
    require_minimal(g)
    delta = total_excess(g)
    if delta < 0:
        raise NotExtendableError(f"Delta < 0 (Delta = {delta})")
    return delta


def _outside_sum(g: IncompleteGame, S: int) -> Fraction:
    return sum((g.singleton(j) for j in members(g.grand ^ S)), Fraction(0))


def upper_game_minimal(g: IncompleteGame) -> CompleteGame:
    """Known values on K; v(N) - sum of outside singletons elsewhere."""
    _require_extendable_minimal(g)
    return CompleteGame.from_function(
        g.n, lambda S: g.values[S] if S in g.values else g.worth - _outside_sum(g, S)
    )


def is_upper_game_one_convex(g: IncompleteGame) -> bool:
    """Whether the upper game is 1-convex, which happens exactly when Delta = 0.

    On the upper game every inequality v(S) <= v(N) - b(N\\S) holds with
    equality, so only b(N) >= v(N) can fail, and that reads Delta <= 0.
    For n <= 2 the game is already complete and extendability suffices.
    Agrees with ``is_one_convex(upper_game_minimal(g))``.
    """
    delta = _require_extendable_minimal(g)
    return g.n <= 2 or delta == 0


def upper_game_one_convex_criterion(g: IncompleteGame) -> bool:
    """Literal evaluation of the stated criterion for a 1-convex upper game:

    ``Delta == 0 and v(N) <= min over proper nonempty S of 2/(n-s) * sum_{i not in S} v(i)``.

    Kept for comparison only; it can disagree with :func:`is_upper_game_one_convex`
    (e.g. n = 3, v(i) = 1, v(N) = 3).
    """
    delta = _require_extendable_minimal(g)
    if delta != 0:
        return False
    bounds = [
        Fraction(2, g.n - size(S)) * _outside_sum(g, S)
        for S in range(1, g.grand)
    ]
    return not bounds or g.worth <= min(bounds)


def extreme_game_minimal(g: IncompleteGame, i: int) -> CompleteGame:
    """The extreme game v^i; ``i`` is a 0-based player.

    Off K it equals the upper game on coalitions containing i and the upper
    game minus Delta on the others.
    """
    delta = _require_extendable_minimal(g)
    if not 0 <= i < g.n:
        raise GameError(f"player index {i} outside 0..{g.n - 1}")
    bit = 1 << i

    def value(S: int) -> Fraction:
        if S in g.values:
            return g.values[S]
        base = g.worth - _outside_sum(g, S)
        return base if S & bit else base - delta

    return CompleteGame.from_function(g.n, value)


def ray_index_set_minimal(n: int) -> frozenset:
    """Every coalition except the empty set, N, the singletons and the N\\i."""
    full = grand(n)
    excluded = {0, full}
    for i in range(n):
        excluded.add(1 << i)
        excluded.add(full ^ (1 << i))
    return frozenset(m for m in range(1 << n) if m not in excluded)


def description_minimal(g: IncompleteGame) -> ExtensionDescription:
    _require_extendable_minimal(g)
    E = ray_index_set_minimal(g.n)
    return ExtensionDescription(
        tuple(extreme_game_minimal(g, i) for i in range(g.n)),
        tuple(extreme_ray(T, g.n) for T in sorted(E)),
        E,
    )


def decompose_minimal(g: IncompleteGame, w: CompleteGame) -> DecompositionCertificate:
    """Weights writing ``w`` as a point of the described minimal extension set.

    Raises :class:`NotAMember` naming the first failed requirement, checked in
    the order alpha sign, alpha sum, beta sign. The described set is smaller
    than the set of all 1-convex extensions, so a 1-convex ``w`` can fail.
    """
    delta = _require_extendable_minimal(g)
    if not g.agrees(w):
        raise GameError("w does not agree with the game on the known coalitions")
    n, full = g.n, g.grand
    if n <= 2:
        return DecompositionCertificate({i: Fraction(1, n) for i in range(n)}, {})
    if delta == 0:
        # every v^i is the upper game; the N\i coordinates are pinned
        ub = upper_game_minimal(g)
        for j in range(n):
            S = full ^ (1 << j)
            if w.values[S] != ub.values[S]:
                raise NotAMember(
                    "fixed-coordinate", S, w.values[S],
                    f"Delta = 0 fixes w({label(S)}) = {ub.values[S]}, got {w.values[S]}",
                )
        alphas = {i: Fraction(1, n) for i in range(n)}
    else:
        alphas = {
            j: (g.worth - g.singleton(j) - w.values[full ^ (1 << j)]) / delta for j in range(n)
        }
        for j, a in alphas.items():
            if a < 0:
                raise NotAMember("alpha-sign", j, a, f"alpha_{j + 1} = {a} < 0")
        total = sum(alphas.values(), Fraction(0))
        if total != 1:
            raise NotAMember("alpha-sum", None, total, f"sum of alphas = {total} != 1")
    d = description_minimal(g)
    hull = combine(list(d.extreme_games), [alphas[i] for i in range(n)])
    betas = {}
    for T in sorted(d.ray_index_set):
        beta = hull.values[T] - w.values[T]
        if beta < 0:
            raise NotAMember("beta-sign", T, beta, f"beta_{label(T)} = {beta} < 0")
        betas[T] = beta
    cert = DecompositionCertificate(alphas, betas)
    if cert.reconstruct(d) != w:  # pragma: no cover - exactness guard
        raise RuntimeError("decomposition does not reconstruct w")
    return cert


# -- games with defined upper vector -----------------------------------------------


def _known_upper_vector(g: IncompleteGame) -> list:
    require_upper_vector(g)
    full = g.grand
    return [g.worth - g.values[full ^ (1 << i)] for i in range(g.n)]


def is_extendable_duv(g: IncompleteGame) -> bool:
    b = _known_upper_vector(g)
    full = g.grand
    if sum(b, Fraction(0)) < g.worth:
        return False
    return all(v <= g.worth - coalition_sum(b, full ^ S) for S, v in g.values.items() if S)


def upper_game_duv(g: IncompleteGame) -> CompleteGame:
    """Known values on K; v(N) - b(N\\S) elsewhere."""
    if not is_extendable_duv(g):
        raise NotExtendableError("no 1-convex extension: a known coalition or b(N) >= v(N) fails")
    b = _known_upper_vector(g)
    full = g.grand
    return CompleteGame.from_function(
        g.n, lambda S: g.values[S] if S in g.values else g.worth - coalition_sum(b, full ^ S)
    )


def description_duv(g: IncompleteGame) -> ExtensionDescription:
    ub = upper_game_duv(g)
    unknown = g.unknown
    return ExtensionDescription((ub,), tuple(extreme_ray(T, g.n) for T in unknown), frozenset(unknown))


def decompose_duv(g: IncompleteGame, w: CompleteGame) -> DecompositionCertificate:
    """``w = upper + sum(beta_T * e_T)``; raises :class:`NotAMember` if some beta_T < 0."""
    ub = upper_game_duv(g)
    if not g.agrees(w):
        raise GameError("w does not agree with the game on the known coalitions")
    betas = {}
    for T in g.unknown:
        beta = ub.values[T] - w.values[T]
        if beta < 0:
            raise NotAMember("beta-sign", T, beta, f"beta_{label(T)} = {beta} < 0")
        betas[T] = beta
    return DecompositionCertificate({0: Fraction(1)}, betas)


# -- shape dispatch ---------------------------------------------------------------


def is_extendable(g: IncompleteGame) -> bool:
    if g.is_minimal():
        return is_extendable_minimal(g)
    if g.has_upper_vector():
        return is_extendable_duv(g)
    raise ShapeError("only minimal and defined-upper-vector games are supported")


def upper_game(g: IncompleteGame) -> CompleteGame:
    if g.is_minimal():
        return upper_game_minimal(g)
    if g.has_upper_vector():
        return upper_game_duv(g)
    raise ShapeError("only minimal and defined-upper-vector games are supported")


def describe(g: IncompleteGame) -> ExtensionDescription:
    if g.is_minimal():
        return description_minimal(g)
    if g.has_upper_vector():
        return description_duv(g)
    raise ShapeError("only minimal and defined-upper-vector games are supported")


def decompose(g: IncompleteGame, w: CompleteGame) -> DecompositionCertificate:
    if g.is_minimal():
        return decompose_minimal(g, w)
    if g.has_upper_vector():
        return decompose_duv(g, w)
    raise ShapeError("only minimal and defined-upper-vector games are supported")
