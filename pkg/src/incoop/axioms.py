"""Axioms as executable predicates, checked exactly on suites of games.

Each axiom is data: an identifier, an arity (how many games one suite element
holds), a domain and an evaluator. The evaluator gets a value function and one
suite element. It returns ``None`` when the defining equation holds there, and
otherwise a :class:`Counterexample` that can be fed back through
:func:`check_axiom`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Callable, Iterable, Optional, Sequence, Union

from .core import (
    CompleteGame,
    GameError,
    IncompleteGame,
    coalition_sum,
    require_minimal,
    total_excess,
    upper_vector,
    zero_normalise,
    zero_normalise_minimal,
)
from .oneconvex import (
    centroid_games,
    concession_vector,
    describe,
    is_extendable_minimal,
)
from . import generators as gen
from .values import CONCEPTS

ValueFn = Callable[[object], tuple]
Game = Union[CompleteGame, IncompleteGame]


@dataclass(frozen=True)
class Counterexample:
    """Where an axiom failed: the suite element, the players involved and both sides."""

    games: tuple
    players: tuple
    lhs: object
    rhs: object
    detail: str = ""


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    holds: bool
    checked: int
    counterexample: Optional[Counterexample] = None


@dataclass(frozen=True)
class Axiom:
    name: str
    arity: int
    domain: str  # "complete", "incomplete" or "any"
    evaluate: Callable[[ValueFn, tuple], Optional[Counterexample]]
    summary: str


# -- helpers ------------------------------------------------------------------


def _fail(games, players, lhs, rhs, detail="") -> Counterexample:
    return Counterexample(tuple(games), tuple(players), lhs, rhs, detail)


def _add(x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def _proportional(x: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    """Whether x = alpha * b for some rational alpha."""
    k = next((i for i, bi in enumerate(b) if bi), None)
    if k is None:
        return all(xi == 0 for xi in x)
    alpha = x[k] / b[k]
    return all(xi == alpha * bi for xi, bi in zip(x, b))


def _shift_incomplete(g: IncompleteGame, a: Sequence[Fraction]) -> IncompleteGame:
    """(g - a)(S) = g(S) - a(S) on the known coalitions."""
    return IncompleteGame(g.n, {S: v - coalition_sum(a, S) for S, v in g.values.items()})


def _minimal_sum(v: IncompleteGame, w: IncompleteGame) -> IncompleteGame:
    require_minimal(v)
    require_minimal(w)
    if v.n != w.n:
        raise GameError("incompatible pair: player counts differ")
    s = v + w
    if not is_extendable_minimal(s):
        raise GameError("incompatible pair: the sum is not extendable")
    return s


def _complete_sum(v: CompleteGame, w: CompleteGame) -> CompleteGame:
    if v.n != w.n:
        raise GameError("incompatible pair: player counts differ")
    return v + w


# -- axioms shared by both domains --------------------------------------------------


def _efficiency(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    (v,) = item
    x = f(v)
    total = sum(x, Fraction(0))
    if total != v.worth:
        return _fail(item, (), total, v.worth, "sum of payoffs differs from v(N)")
    return None


def _individual_rationality(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    (v,) = item
    x = f(v)
    for i in range(v.n):
        if x[i] < v.singleton(i):
            return _fail(item, (i,), x[i], v.singleton(i), "payoff below the singleton value")
    return None


# -- minimal incomplete games -------------------------------------------------------


def _elementary_symmetry(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    (v,) = item
    x = f(v)
    for i, j in combinations(range(v.n), 2):
        if v.singleton(i) == v.singleton(j) and x[i] != x[j]:
            return _fail(item, (i, j), x[i], x[j], "equal singletons, unequal payoffs")
    return None


def _zero_normalisation_invariance(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    (v,) = item
    x, x0 = f(v), f(zero_normalise_minimal(v))
    for i in range(v.n):
        if x[i] != v.singleton(i) + x0[i]:
            return _fail(item, (i,), x[i], v.singleton(i) + x0[i], "f_i(v) != v(i) + f_i(v_0)")
    return None


def _zero_excess(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    (v,) = item
    if total_excess(v) != 0:
        return None
    x = f(v)
    for i in range(v.n):
        if x[i] != v.singleton(i):
            return _fail(item, (i,), x[i], v.singleton(i), "Delta = 0 but f_i(v) != v(i)")
    return None


def _elementary_triviality(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    (v,) = item
    zero = IncompleteGame.minimal([0] * v.n, 0)
    x = f(zero)
    if any(x):
        return _fail((zero,), (), x, (Fraction(0),) * v.n, "nonzero payoff on the zero game")
    return None


def _null_player_analogue(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    (v,) = item
    x = f(v)
    for i in range(v.n):
        if v.singleton(i) == 0 and x[i] != 0:
            return _fail(item, (i,), x[i], Fraction(0), "v(i) = 0 but f_i(v) != 0")
    return None


def _elementary_additivity(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    v, w = item
    s = _minimal_sum(v, w)
    lhs, rhs = f(s), _add(f(v), f(w))
    if lhs != rhs:
        return _fail(item, (), lhs, rhs, "f(v + w) != f(v) + f(w)")
    return None


def _elementary_fairness(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    v, w = item
    s = _minimal_sum(v, w)
    xs, xv = f(s), f(v)
    for i, j in combinations(range(v.n), 2):
        if w.singleton(i) == w.singleton(j):
            di, dj = xs[i] - xv[i], xs[j] - xv[j]
            if di != dj:
                return _fail(item, (i, j), di, dj, "w(i) = w(j) but the payoff changes differ")
    return None


def _centroid(v: IncompleteGame) -> CompleteGame:
    return centroid_games(describe(v))


def _restricted_proportionality_centroid(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    (v,) = item
    v0 = zero_normalise_minimal(v)
    x0, b = f(v0), upper_vector(_centroid(v0))
    if not _proportional(x0, b):
        return _fail(item, (), x0, b, "f(v_0) is not a multiple of the upper vector of the centroid of v_0")
    return None


def _minimal_right_centroid(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    (v,) = item
    c = _centroid(v)
    a = tuple(bi - li for bi, li in zip(upper_vector(c), concession_vector(c)))
    lhs, rhs = f(v), _add(a, f(_shift_incomplete(v, a)))
    if lhs != rhs:
        return _fail(item, (), lhs, rhs, "f(v) != a + f(v - a) for the minimal right vector a of the centroid")
    return None


# -- complete games -----------------------------------------------------------------


def _symmetry(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    """f(pi_* v) = pi_*(f(v)); all permutations for n <= 4, transpositions above."""
    (v,) = item
    n = v.n
    x = f(v)
    if n <= 4:
        perms: Iterable = permutations(range(n))
    else:
        perms = []
        for i, j in combinations(range(n), 2):
            p = list(range(n))
            p[i], p[j] = j, i
            perms.append(tuple(p))
    for perm in perms:
        y = f(v.permute(perm))
        for i in range(n):
            if y[perm[i]] != x[i]:
                return _fail(item, tuple(perm), y, x, f"f(pi v) at pi({i + 1}) differs from f_{i + 1}(v)")
    return None


def _interchangeable(v: CompleteGame, i: int, j: int) -> bool:
    bi, bj = 1 << i, 1 << j
    rest = v.grand ^ bi ^ bj
    S = rest
    while True:
        if v.values[S | bi] != v.values[S | bj]:
            return False
        if S == 0:
            return True
        S = (S - 1) & rest


def _pairwise_symmetry(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    (v,) = item
    x = None
    for i, j in combinations(range(v.n), 2):
        if _interchangeable(v, i, j):
            x = x or f(v)
            if x[i] != x[j]:
                return _fail(item, (i, j), x[i], x[j], "interchangeable players, unequal payoffs")
    return None


def _is_null(v: CompleteGame, i: int) -> bool:
    bit = 1 << i
    return all(v.values[S | bit] == v.values[S] for S in range(1 << v.n) if not S & bit)


def _null_player(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    """v(S + i) = v(S) for every S implies f_i(v) = 0."""
    (v,) = item
    x = None
    for i in range(v.n):
        if _is_null(v, i):
            x = x or f(v)
            if x[i] != 0:
                return _fail(item, (i,), x[i], Fraction(0), "null player with nonzero payoff")
    return None


S_EQUIVALENCE_SCALES = (Fraction(1), Fraction(2), Fraction(1, 3))
S_EQUIVALENCE_SHIFTS = (Fraction(0), Fraction(5))


def _s_equivalence(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    """f(k v + c) = k f(v) + c, with c added to every player."""
    (v,) = item
    x = f(v)
    for k in S_EQUIVALENCE_SCALES:
        for c in S_EQUIVALENCE_SHIFTS:
            w = v.scale(k).shift([c] * v.n)
            lhs = f(w)
            rhs = tuple(k * xi + c for xi in x)
            if lhs != rhs:
                return _fail((v,), (), lhs, rhs, f"fails at k = {k}, c = {c}")
    return None


def _additivity(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    v, w = item
    lhs, rhs = f(_complete_sum(v, w)), _add(f(v), f(w))
    if lhs != rhs:
        return _fail(item, (), lhs, rhs, "f(v + w) != f(v) + f(w)")
    return None


def _minimal_right(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    (v,) = item
    a = tuple(bi - li for bi, li in zip(upper_vector(v), concession_vector(v)))
    lhs, rhs = f(v), _add(a, f(v.shift([-ai for ai in a])))
    if lhs != rhs:
        return _fail(item, (), lhs, rhs, "f(v) != a + f(v - a)")
    return None


def _restricted_proportionality(f: ValueFn, item: tuple) -> Optional[Counterexample]:
    (v,) = item
    v0 = zero_normalise(v)
    x0, b = f(v0), upper_vector(v0)
    if not _proportional(x0, b):
        return _fail(item, (), x0, b, "f(v_0) is not a multiple of b of v_0")
    return None


AXIOMS = {
    a.name: a
    for a in [
        Axiom("efficiency", 1, "any", _efficiency, "payoffs sum to v(N)"),
        Axiom("individual-rationality", 1, "any", _individual_rationality, "f_i(v) >= v(i)"),
        Axiom("elementary-symmetry", 1, "incomplete", _elementary_symmetry, "v(i) = v(j) implies f_i = f_j"),
        Axiom(
            "zero-normalisation-invariance", 1, "incomplete", _zero_normalisation_invariance,
            "f_i(v) = v(i) + f_i(v_0)",
        ),
        Axiom("zero-excess", 1, "incomplete", _zero_excess, "Delta = 0 implies f_i(v) = v(i)"),
        Axiom("elementary-triviality", 1, "incomplete", _elementary_triviality, "f of the zero game is 0"),
        Axiom("null-player-analogue", 1, "incomplete", _null_player_analogue, "v(i) = 0 implies f_i(v) = 0"),
        Axiom("elementary-additivity", 2, "incomplete", _elementary_additivity, "f(v + w) = f(v) + f(w)"),
        Axiom(
            "elementary-fairness", 2, "incomplete", _elementary_fairness,
            "w(i) = w(j) implies f_i(v+w) - f_i(v) = f_j(v+w) - f_j(v)",
        ),
        Axiom(
            "restricted-proportionality-centroid", 1, "incomplete", _restricted_proportionality_centroid,
            "f(v_0) is a multiple of the upper vector of the centroid of v_0",
        ),
        Axiom(
            "minimal-right-centroid", 1, "incomplete", _minimal_right_centroid,
            "f(v) = a + f(v - a), a the minimal right vector of the centroid",
        ),
        Axiom("symmetry", 1, "complete", _symmetry, "f(pi v) = pi f(v)"),
        Axiom("pairwise-symmetry", 1, "complete", _pairwise_symmetry, "interchangeable players get equal payoffs"),
        Axiom("dummy-player", 1, "complete", _null_player, "v(S + i) = v(S) for all S implies f_i(v) = 0"),
        Axiom("null-player", 1, "complete", _null_player, "v(S + i) = v(S) for all S implies f_i(v) = 0"),
        Axiom("s-equivalence", 1, "complete", _s_equivalence, "f(k v + c) = k f(v) + c"),
        Axiom("additivity", 2, "complete", _additivity, "f(v + w) = f(v) + f(w)"),
        Axiom("minimal-right", 1, "complete", _minimal_right, "f(v) = a^v + f(v - a^v)"),
        Axiom("restricted-proportionality", 1, "complete", _restricted_proportionality, "f(v_0) = alpha b^{v_0}"),
    ]
}

AVERAGE_VALUE_AXIOMS = (
    "efficiency",
    "elementary-symmetry",
    "zero-normalisation-invariance",
    "elementary-additivity",
    "zero-excess",
    "individual-rationality",
    "elementary-triviality",
    "elementary-fairness",
)
TAU_AXIOMS = ("individual-rationality", "efficiency", "symmetry", "dummy-player", "s-equivalence")
SHAPLEY_AXIOMS = ("efficiency", "pairwise-symmetry", "null-player", "additivity")


# -- running -------------------------------------------------------------------------


def _resolve(value_fn) -> tuple[ValueFn, Optional[str]]:
    if callable(value_fn):
        return value_fn, None
    try:
        c = CONCEPTS[value_fn]
    except KeyError:
        raise GameError(f"unknown value concept {value_fn!r}") from None
    if c.takes_alpha:
        return (lambda g: c.fn(g, 1)), c.domain
    return c.fn, c.domain


def _axiom(name: str) -> Axiom:
    try:
        return AXIOMS[name]
    except KeyError:
        raise GameError(f"unknown axiom {name!r}") from None


def _check_domain(ax: Axiom, domain: Optional[str], item: tuple) -> None:
    if ax.domain != "any" and domain is not None and domain != ax.domain:
        raise GameError(f"axiom {ax.name} is about {ax.domain} games, the value is defined on {domain} games")
    want = {"complete": CompleteGame, "incomplete": IncompleteGame}.get(ax.domain)
    for g in item:
        if want is not None and not isinstance(g, want):
            raise GameError(f"axiom {ax.name} needs {ax.domain} games")
        if domain is not None and not isinstance(g, {"complete": CompleteGame, "incomplete": IncompleteGame}[domain]):
            raise GameError(f"value is defined on {domain} games")


def check_axiom(axiom: str, value_fn, suite: Iterable) -> AxiomVerdict:
    """Evaluate ``axiom`` for ``value_fn`` on every suite element.

    ``value_fn`` is a concept name from :data:`values.CONCEPTS` or a callable.
    Elements of a suite for a two-game axiom are pairs; a single game is
    accepted for one-game axioms.
    """
    ax = _axiom(axiom)
    f, domain = _resolve(value_fn)
    checked = 0
    for item in suite:
        item = tuple(item) if isinstance(item, (tuple, list)) else (item,)
        if len(item) != ax.arity:
            raise GameError(f"axiom {ax.name} takes {ax.arity} game(s) per suite element")
        _check_domain(ax, domain, item)
        cx = ax.evaluate(f, item)
        checked += 1
        if cx is not None:
            return AxiomVerdict(ax.name, False, checked, cx)
    return AxiomVerdict(ax.name, True, checked)


def check_axiom_pairwise(axiom: str, value_fn, pairs: Iterable) -> AxiomVerdict:
    ax = _axiom(axiom)
    if ax.arity != 2:
        raise GameError(f"axiom {ax.name} is not a two-game axiom")
    return check_axiom(axiom, value_fn, pairs)


# -- suites --------------------------------------------------------------------------------


def _minimal_variant(rng, n: int, k: int) -> IncompleteGame:
    """Cycle through plain, equal-singleton, zero-singleton and Delta = 0 games."""
    g = gen.minimal_game(rng, n, "zero" if k % 4 == 3 else "positive")
    if k % 4 in (1, 2):
        vals = dict(g.values)
        delta = total_excess(g)
        i, j = rng.sample(range(n), 2)
        vals[1 << j] = vals[1 << i] if k % 4 == 1 else Fraction(0)
        vals[g.grand] = sum((vals[1 << p] for p in range(n)), Fraction(0)) + delta
        g = IncompleteGame(n, vals)
    return g


def _complete_variant(rng, n: int, k: int) -> CompleteGame:
    if k % 3 == 2 and n >= 2:
        return gen.one_convex_game_with_null_player(rng, n, rng.randrange(n))
    return gen.one_convex_game(rng, n, tight=k % 3 == 1)


def random_suite(domain: str, arity: int, rng, samples: int, ns: Sequence[int] = (3, 4, 5)) -> list:
    """``samples`` suite elements per player count for axioms on ``domain`` games.

    Incomplete suites are extendable minimal games, including games with two
    equal singletons, a zero singleton, and Delta = 0. Complete suites are
    1-convex games, a third of them with a null player and a third with
    g(N) = 0.
    """
    make = _minimal_variant if domain == "incomplete" else _complete_variant
    out = []
    for k in range(samples):
        for n in ns:
            if arity == 1:
                out.append((make(rng, n, k),))
            else:
                out.append((make(rng, n, k), make(rng, n, k + 1)))
    return out


def axioms_for(domain: str) -> list:
    return [a.name for a in AXIOMS.values() if a.domain in (domain, "any")]


# -- separating examples ------------------------------------------------------------------


@dataclass(frozen=True)
class Separation:
    """A game on which two values differ, with the axioms each passes there."""

    game: IncompleteGame
    values: dict  # concept name -> payoff
    differ: bool
    verdicts: dict  # (concept, axiom) -> bool


def distinguishing_suite() -> list:
    """Games showing that efficiency, elementary symmetry and elementary
    additivity do not pin down the average value without zero-excess.

    Three value functions are compared: the average value, the solidarity
    tau-value and the equal split v(N)/n. On each game the verdicts for the
    three shared axioms and for zero-excess are recorded, along with whether
    the payoffs differ.
    """
    games = [
        IncompleteGame.minimal([0, 1, 2, 1, 4], 10),
        IncompleteGame.minimal([1, 1, 1, 1], 7),
        IncompleteGame.minimal([1, 2, 4], 7),
        IncompleteGame.minimal([0, 3, 1], 4),
    ]
    concepts = ("average", "solidarity", "equal-split")
    out = []
    for g in games:
        vals = {c: tuple(CONCEPTS[c].fn(g)) for c in concepts}
        verdicts = {}
        for c in concepts:
            for name in ("efficiency", "elementary-symmetry", "zero-excess", "individual-rationality"):
                verdicts[(c, name)] = check_axiom(name, c, [g]).holds
            verdicts[(c, "elementary-additivity")] = check_axiom_pairwise(
                "elementary-additivity", c, [(g, h) for h in games if h.n == g.n]
            ).holds
        differ = len(set(vals.values())) > 1
        out.append(Separation(g, vals, differ, verdicts))
    return out
