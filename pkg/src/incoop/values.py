"""Solution concepts for complete games and their averages over extension sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Optional

from . import lp
from .core import (
    CompleteGame,
    GameError,
    IncompleteGame,
    NotExtendableError,
    PayoffVector,
    RationalLike,
    ShapeError,
    coalition_sum,
    combine,
    require_minimal,
    size,
    to_rational,
    total_excess,
    upper_vector,
)
from .oneconvex import (
    ExtensionDescription,
    centroid_games,
    centroid_rays,
    concession_vector,
    describe,
    description_duv,
    is_extendable_minimal,
    is_one_convex,
    is_quasi_balanced,
)


# -- complete games -----------------------------------------------------------


def tau_one_convex(g: CompleteGame) -> PayoffVector:
    """b_i - g(N)/n; only valid on 1-convex games."""
    if not is_one_convex(g):
        raise GameError("game is not 1-convex")
    b = upper_vector(g)
    share = (sum(b, Fraction(0)) - g.worth) / g.n
    return tuple(bi - share for bi in b)


def tau_quasi_balanced(g: CompleteGame) -> PayoffVector:
    """The efficient point on the segment from the minimal-right vector a to b."""
    if not is_quasi_balanced(g):
        raise GameError("game is not quasi-balanced")
    b = upper_vector(g)
    a = [bi - li for bi, li in zip(b, concession_vector(g))]
    aN, bN = sum(a, Fraction(0)), sum(b, Fraction(0))
    if aN == bN:
        return tuple(a)
    t = (g.worth - aN) / (bN - aN)
    return tuple(ai + t * (bi - ai) for ai, bi in zip(a, b))


def shapley(g: CompleteGame) -> PayoffVector:
    n = g.n
    weight = [Fraction(factorial(s - 1) * factorial(n - s), factorial(n)) for s in range(n + 1) if s]
    out = []
    for i in range(n):
        bit = 1 << i
        total = Fraction(0)
        for S in range(1 << n):
            if S & bit:
                d = g.values[S] - g.values[S ^ bit]
                if d:
                    total += weight[size(S) - 1] * d
        out.append(total)
    return tuple(out)


def shapley_alternate(g: CompleteGame) -> PayoffVector:
    """(1/n) * sum over S not containing i of (v(S+i) - v(S)) / C(n-1, s)."""
    n = g.n
    out = []
    for i in range(n):
        bit = 1 << i
        total = Fraction(0)
        for S in range(1 << n):
            if not S & bit:
                d = g.values[S | bit] - g.values[S]
                if d:
                    total += Fraction(d) / comb(n - 1, size(S))
        out.append(total / n)
    return tuple(out)


def _rank(vectors: list) -> int:
    rows = [list(map(Fraction, v)) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c] / p[c]
                rows[r] = [x - f * y for x, y in zip(rows[r], p)]
        rank += 1
    return rank


def _indicator(S: int, n: int) -> list:
    return [1 if S >> i & 1 else 0 for i in range(n)]


def nucleolus(g: CompleteGame) -> PayoffVector:
    """Lexicographic minimiser of the sorted excess vector over imputations.

    Successive LPs over (x, t): each level minimises the largest excess t
    among coalitions whose excess is not yet settled, then settles every
    coalition whose excess equals t on the whole optimal face. Coalitions in
    the span of settled ones are dropped; the loop ends when x is pinned.
    """
    n, full = g.n, g.grand
    single_sum = sum((g.singleton(i) for i in range(n)), Fraction(0))
    if g.worth < single_sum:
        raise GameError("imputation set is empty: v(N) < sum of singleton values")
    nv = n + 1

    def base() -> lp.LinearProgram:
        prog = lp.LinearProgram(nv)
        prog.add([1] * n + [0], lp.EQ, g.worth)
        for i in range(n):
            row = [0] * nv
            row[i] = 1
            prog.add(row, lp.GE, g.singleton(i))
        for S, e in settled.items():
            prog.add(_indicator(S, n) + [0], lp.EQ, g.values[S] - e)
        return prog

    settled: dict = {}
    span = [[1] * n]
    free = [S for S in range(1, full)]
    x = None
    while free:
        # level: min t with v(S) - x(S) <= t, i.e. x(S) + t >= v(S)
        prog = base()
        for S in free:
            prog.add(_indicator(S, n) + [1], lp.GE, g.values[S])
        prog.objective = tuple([Fraction(0)] * n + [Fraction(1)])
        out = lp.solve(prog)
        if not out.optimal:  # pragma: no cover - the imputation set is a nonempty polytope
            raise RuntimeError(f"nucleolus level LP is {out.status}")
        t = out.objective_value
        x = out.solution[:n]
        newly = []
        for S in free:
            if g.values[S] - coalition_sum(x, S) != t:
                continue
            probe = base()
            for T in free:
                probe.add(_indicator(T, n) + [0], lp.GE, g.values[T] - t)
            probe.objective = tuple(_indicator(S, n) + [0])
            probe.sense = "max"
            res = lp.solve(probe)
            if res.objective_value == g.values[S] - t:
                newly.append(S)
        if not newly:  # pragma: no cover - some coalition always settles
            raise RuntimeError("no coalition settled at this level")
        for S in newly:
            settled[S] = t
            span.append(_indicator(S, n))
        r = _rank(span)
        free = [S for S in free if S not in settled and _rank(span + [_indicator(S, n)]) > r]
    if x is None:  # n == 1
        return (g.worth,)
    return tuple(x)


# -- incomplete games ---------------------------------------------------------


def _centres(g: IncompleteGame) -> tuple[ExtensionDescription, CompleteGame, CompleteGame]:
    d = describe(g)
    return d, centroid_games(d), centroid_rays(d)


def _alpha(alpha: RationalLike) -> Fraction:
    a = to_rational(alpha)
    if a < 0:
        raise GameError("alpha must be nonnegative")
    return a


def average_tau(g: IncompleteGame) -> PayoffVector:
    """tau of the centroid of the extreme games."""
    _, vt, _ = _centres(g)
    return tau_one_convex(vt)


def solidarity_tau(g: IncompleteGame) -> PayoffVector:
    """Mean of the tau-values of the extreme games."""
    d = describe(g)
    taus = [tau_one_convex(e) for e in d.extreme_games]
    k = len(taus)
    return tuple(sum(col, Fraction(0)) / k for col in zip(*taus))


def conic_tau(g: IncompleteGame, alpha: RationalLike) -> PayoffVector:
    """tau of (centroid of extreme games) + alpha * (centroid of extreme rays)."""
    _, vt, et = _centres(g)
    return tau_one_convex(combine([vt, et], [1, _alpha(alpha)]))


def average_shapley(g: IncompleteGame) -> PayoffVector:
    _, vt, _ = _centres(g)
    return shapley(vt)


def conic_shapley(g: IncompleteGame, alpha: RationalLike) -> PayoffVector:
    _, vt, et = _centres(g)
    return shapley(combine([vt, et], [1, _alpha(alpha)]))


def average_value(g: IncompleteGame) -> PayoffVector:
    """v(i) + Delta/n for an extendable minimal game."""
    if not is_extendable_minimal(g):
        raise NotExtendableError(f"Delta < 0 (Delta = {total_excess(g)})")
    share = total_excess(g) / g.n
    return tuple(g.singleton(i) + share for i in range(g.n))


def equal_split(g: IncompleteGame) -> PayoffVector:
    """v(N)/n to everybody."""
    require_minimal(g)
    if not is_extendable_minimal(g):
        raise NotExtendableError(f"Delta < 0 (Delta = {total_excess(g)})")
    return (g.worth / g.n,) * g.n


# -- centre of the rays for games with defined upper vector -------------------------


def _duv_rays(g: IncompleteGame) -> tuple[frozenset, int]:
    if not g.has_upper_vector():
        raise ShapeError("expected a game with defined upper vector")
    description_duv(g)  # extendability check
    unknown = frozenset(g.unknown)
    if not unknown:
        raise GameError("no unknown coalitions, so there are no rays")
    return unknown, len(unknown)


def ray_centre_marginal(g: IncompleteGame, S: int, i: int) -> Fraction:
    """Marginal contribution of player ``i`` (0-based) to ``S`` in the ray centroid, by cases."""
    unknown, count = _duv_rays(g)
    bit = 1 << i
    if S & bit:
        raise GameError("player already in the coalition")
    before, after = S in unknown, (S | bit) in unknown
    if before == after:
        return Fraction(0)
    return Fraction(1, count) if before else Fraction(-1, count)


def ray_centre_shapley_closed_form(g: IncompleteGame, i: int) -> Fraction:
    """The stated closed form for the Shapley value of player ``i`` in the ray centroid.

    Evaluated literally: the sum over S known with S+i unknown is taken with
    a plus sign, the sum over S unknown with S+i known with a minus sign.
    Direct computation (:func:`ray_centre_shapley`) gives the negation.
    """
    unknown, count = _duv_rays(g)
    n = g.n
    bit = 1 << i
    plus = minus = 0
    for S in range(1 << n):
        if S & bit:
            continue
        w = factorial(size(S)) * factorial(n - size(S) - 1)
        known_s, known_si = S not in unknown, (S | bit) not in unknown
        if known_s and not known_si:
            plus += w
        elif not known_s and known_si:
            minus += w
    return Fraction(plus - minus, count * factorial(n))


def ray_centre_shapley(g: IncompleteGame) -> PayoffVector:
    """Shapley value of the ray centroid, computed directly."""
    _duv_rays(g)
    return shapley(centroid_rays(description_duv(g)))


# -- reports and the concept registry -------------------------------------------


@dataclass(frozen=True)
class ValueReport:
    payoff: PayoffVector
    method: str
    witnesses: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Concept:
    name: str
    fn: Callable
    domain: str  # "complete" or "incomplete"
    takes_alpha: bool = False


CONCEPTS = {
    c.name: c
    for c in [
        Concept("tau", tau_one_convex, "complete"),
        Concept("tau-quasi-balanced", tau_quasi_balanced, "complete"),
        Concept("shapley", shapley, "complete"),
        Concept("shapley-alternate", shapley_alternate, "complete"),
        Concept("nucleolus", nucleolus, "complete"),
        Concept("average", average_value, "incomplete"),
        Concept("average-tau", average_tau, "incomplete"),
        Concept("solidarity", solidarity_tau, "incomplete"),
        Concept("conic", conic_tau, "incomplete", takes_alpha=True),
        Concept("average-shapley", average_shapley, "incomplete"),
        Concept("conic-shapley", conic_shapley, "incomplete", takes_alpha=True),
        Concept("equal-split", equal_split, "incomplete"),
    ]
}


def compute_value(concept: str, game, alpha: Optional[RationalLike] = None) -> ValueReport:
    try:
        c = CONCEPTS[concept]
    except KeyError:
        raise GameError(f"unknown concept {concept!r}") from None
    if c.domain == "complete" and not isinstance(game, CompleteGame):
        if isinstance(game, IncompleteGame) and game.is_complete():
            game = game.completed()
        else:
            raise ShapeError(f"{concept} needs a complete game")
    if c.domain == "incomplete" and not isinstance(game, IncompleteGame):
        raise ShapeError(f"{concept} needs an incomplete game")
    witnesses = {}
    if c.takes_alpha:
        a = _alpha(alpha if alpha is not None else 1)
        payoff = c.fn(game, a)
        witnesses["alpha"] = a
    else:
        if alpha is not None:
            raise GameError(f"{concept} takes no alpha")
        payoff = c.fn(game)
    if c.domain == "incomplete" and concept != "average":
        _, vt, et = _centres(game)
        witnesses["centroid_games"] = vt
        witnesses["centroid_rays"] = et
    return ValueReport(tuple(payoff), concept, witnesses)
