"""Brute-force ground truth, independent of the closed forms in the other modules.

* the 1-convexity inequality system over the unknown coalitions, written out
  from the definition, with LP feasibility and coordinate bounds;
* vertex and extreme-ray enumeration of that system by exhaustive tight sets;
* the Shapley value as an average over all player orders;
* a claims report comparing catalogued statements with direct computation.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial
from typing import Callable, Iterable, Optional, Sequence, Union

from . import generators as gen
from . import lp
from .axioms import AVERAGE_VALUE_AXIOMS, SHAPLEY_AXIOMS, TAU_AXIOMS, check_axiom
from .core import (
    CompleteGame,
    GameError,
    IncompleteGame,
    NotExtendableError,
    PayoffVector,
    fmt,
    grand,
    label,
    size,
    total_excess,
    upper_vector,
)
from .gamefile import from_document, to_document
from .oneconvex import (
    NotAMember,
    centroid_rays,
    condition_slacks,
    decompose_duv,
    decompose_minimal,
    description_duv,
    description_minimal,
    extreme_game_minimal,
    extreme_ray,
    is_extendable_duv,
    is_extendable_minimal,
    is_one_convex,
    ray_index_set_minimal,
    upper_game_duv,
    upper_game_minimal,
    upper_game_one_convex_criterion,
)
from .values import (
    average_shapley,
    average_tau,
    average_value,
    conic_shapley,
    conic_tau,
    nucleolus,
    ray_centre_marginal,
    ray_centre_shapley,
    ray_centre_shapley_closed_form,
    shapley,
    shapley_alternate,
    solidarity_tau,
    tau_one_convex,
    tau_quasi_balanced,
)

Game = Union[CompleteGame, IncompleteGame]


# -- the 1-convexity system ------------------------------------------------------------


def one_convexity_rows(n: int) -> list:
    """Every 1-convexity inequality as ``{mask: coefficient}`` meaning ``sum <= 0``.

    Written straight from the definition with b_i = v(N) - v(N - i):
    ``v(S) - v(N) + sum_{i not in S} (v(N) - v(N - i)) <= 0`` for nonempty S,
    and ``v(N) - sum_i (v(N) - v(N - i)) <= 0``.
    """
    full = grand(n)
    rows = []
    for S in range(1, full + 1):
        row: dict = {}

        def put(m: int, c: int) -> None:
            row[m] = row.get(m, 0) + c

        put(S, 1)
        put(full, -1)
        for i in range(n):
            if not S >> i & 1:
                put(full, 1)
                put(full ^ (1 << i), -1)
        rows.append(row)
    row = {full: 1}
    for i in range(n):
        row[full] = row[full] - 1
        row[full ^ (1 << i)] = row.get(full ^ (1 << i), 0) + 1
    rows.append(row)
    return [{m: c for m, c in r.items() if c} for r in rows]


@dataclass(frozen=True)
class InequalitySystem:
    """``A x <= rhs`` over the unknown coalitions of an incomplete game."""

    unknown: tuple
    A: tuple
    rhs: tuple
    consistent: bool  # every row without unknowns holds


def inequality_system(g: IncompleteGame) -> InequalitySystem:
    unknown = tuple(m for m in range(1, 1 << g.n) if m not in g.values)
    col = {m: k for k, m in enumerate(unknown)}
    A, rhs = [], []
    consistent = True
    for row in one_convexity_rows(g.n):
        a = [Fraction(0)] * len(unknown)
        const = Fraction(0)
        for m, c in row.items():
            if m in col:
                a[col[m]] += c
            else:
                const += c * g.values[m]
        if any(a):
            A.append(tuple(a))
            rhs.append(-const)
        elif const > 0:
            consistent = False
    return InequalitySystem(unknown, tuple(A), tuple(rhs), consistent)


def _feasible_point(system: InequalitySystem, x: Sequence[Fraction]) -> bool:
    return all(sum((a * xi for a, xi in zip(row, x) if a), Fraction(0)) <= r for row, r in zip(system.A, system.rhs))


def _program(system: InequalitySystem) -> lp.LinearProgram:
    prog = lp.LinearProgram(len(system.unknown))
    for row, r in zip(system.A, system.rhs):
        prog.add(row, lp.LE, r)
    return prog


def lp_extendable(g: IncompleteGame) -> bool:
    """Whether some completion of ``g`` is 1-convex, decided by LP feasibility."""
    system = inequality_system(g)
    if not system.consistent:
        return False
    if not system.unknown:
        return True
    if all(r >= 0 for r in system.rhs):
        return True  # x = 0 is feasible
    return lp.solve(_program(system)).status != lp.INFEASIBLE


class Unbounded(Enum):
    ABOVE = "+inf"
    BELOW = "-inf"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Bounds:
    upper: Union[Fraction, Unbounded]
    lower: Union[Fraction, Unbounded]


def coordinate_bounds_lp(g: IncompleteGame) -> dict:
    """Exact sup and inf of each unknown coordinate over all 1-convex extensions."""
    if not lp_extendable(g):
        raise NotExtendableError("the game has no 1-convex extension")
    system = inequality_system(g)
    out = {}
    for k, T in enumerate(system.unknown):
        found = []
        for sense, marker in (("max", Unbounded.ABOVE), ("min", Unbounded.BELOW)):
            prog = _program(system)
            obj = [Fraction(0)] * len(system.unknown)
            obj[k] = Fraction(1)
            prog.objective = tuple(obj)
            prog.sense = sense
            res = lp.solve(prog)
            found.append(marker if res.status == lp.UNBOUNDED else res.objective_value)
        out[T] = Bounds(found[0], found[1])
    return out


# -- exact linear algebra -----------------------------------------------------------------


def _solve_square(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Optional[list]:
    """Unique solution of A x = b, or None when A is singular."""
    m = len(A)
    rows = [list(r) + [bi] for r, bi in zip(A, b)]
    for c in range(m):
        piv = next((r for r in range(c, m) if rows[r][c]), None)
        if piv is None:
            return None
        rows[c], rows[piv] = rows[piv], rows[c]
        p = rows[c]
        inv = 1 / p[c]
        p[:] = [x * inv for x in p]
        for r in range(m):
            if r != c and rows[r][c]:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], p)]
    return [rows[r][m] for r in range(m)]


def _null_space(A: Sequence[Sequence[Fraction]], ncols: int) -> list:
    """Basis of {x : A x = 0} by reduced row echelon form."""
    rows = [list(r) for r in A]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for k, pc in enumerate(pivots):
            x[pc] = -rows[k][fc]
        basis.append(x)
    return basis


def _rank(A: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return ncols - len(_null_space(A, ncols))


VERTEX_LIMITS = {"minimal": 4, "upper-vector": 5, "general": 4}


def _shape(g: IncompleteGame) -> str:
    if g.is_minimal():
        return "minimal"
    if g.has_upper_vector():
        return "upper-vector"
    return "general"


def _check_size(g: IncompleteGame) -> None:
    limit = VERTEX_LIMITS[_shape(g)]
    if g.n > limit:
        raise GameError(f"n = {g.n} is too large for enumeration of this shape (limit {limit})")


def _complete(g: IncompleteGame, unknown: Sequence[int], x: Sequence[Fraction]) -> CompleteGame:
    vals = dict(g.values)
    vals.update(zip(unknown, x))
    return CompleteGame(g.n, tuple(vals[m] for m in range(1 << g.n)))


def vertex_enumeration(g: IncompleteGame) -> list:
    """All vertices of the set of 1-convex extensions, sorted by their values.

    Every choice of as many inequalities as there are unknowns is solved as
    a system of equations; solutions that satisfy the whole system are kept.
    A polyhedron containing a line has no vertices and yields ``[]``.
    """
    _check_size(g)
    system = inequality_system(g)
    if not system.consistent:
        return []
    m = len(system.unknown)
    if m == 0:
        return [_complete(g, (), ())]
    if _rank(system.A, m) < m:
        return []
    found = {}
    for idx in combinations(range(len(system.A)), m):
        x = _solve_square([system.A[k] for k in idx], [system.rhs[k] for k in idx])
        if x is None or not _feasible_point(system, x):
            continue
        found.setdefault(tuple(x), None)
    games = [_complete(g, system.unknown, x) for x in found]
    return sorted(games, key=lambda w: w.values)


def extreme_ray_enumeration(g: IncompleteGame) -> list:
    """Extreme rays of the recession cone, scaled so the first nonzero entry is +1 or -1.

    Returned as complete games that vanish on the known coalitions.
    """
    _check_size(g)
    system = inequality_system(g)
    m = len(system.unknown)
    if m == 0 or _rank(system.A, m) < m:
        return []
    found = {}
    for idx in combinations(range(len(system.A)), m - 1):
        basis = _null_space([system.A[k] for k in idx], m)
        if len(basis) != 1:
            continue
        for sign in (1, -1):
            d = [sign * x for x in basis[0]]
            if all(sum((a * di for a, di in zip(row, d) if a), Fraction(0)) <= 0 for row in system.A):
                lead = next(abs(x) for x in d if x)
                found.setdefault(tuple(x / lead for x in d), None)
    zero = IncompleteGame(g.n, {m_: Fraction(0) for m_ in g.values})
    rays = [_complete(zero, system.unknown, d) for d in found]
    return sorted(rays, key=lambda r: r.values)


# -- Shapley by orders ------------------------------------------------------------------------


def shapley_permutation_oracle(g: CompleteGame) -> PayoffVector:
    """Average marginal-contribution vector over all n! player orders."""
    if g.n > 8:
        raise GameError("permutation oracle is limited to n <= 8")
    n = g.n
    totals = [Fraction(0)] * n
    for order in permutations(range(n)):
        S = 0
        for i in order:
            totals[i] += g.values[S | 1 << i] - g.values[S]
            S |= 1 << i
    count = factorial(n)
    return tuple(t / count for t in totals)


# -- claims report ------------------------------------------------------------------------------

CONFIRMED, REFUTED, NOT_CHECKABLE = "confirmed", "refuted-on-instance", "not-checkable"


@dataclass(frozen=True)
class ClaimReport:
    claim: str
    statement: str
    status: str
    evidence: dict

    def to_json(self) -> dict:
        return {"claim": self.claim, "statement": self.statement, "status": self.status, "evidence": self.evidence}


@dataclass(frozen=True)
class Claim:
    name: str
    statement: str
    check: Callable  # (*games) -> (ok, sides)
    suite: Callable  # (rng, samples) -> list of tuples of games
    fixed: tuple = ()  # tuples of games checked before the random suite
    instance_only: bool = False  # the statement is about the fixed games alone


def plain(x):
    """JSON-ready copy: rationals as strings, games as game-file documents."""
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, (CompleteGame, IncompleteGame)):
        return to_document(x)
    if isinstance(x, Unbounded):
        return str(x)
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _fingerprint(games: Sequence[Game]) -> str:
    text = json.dumps([to_document(g) for g in games], sort_keys=True)
    return hashlib.sha256(text.encode()).hexdigest()


def _rng_for(games: Sequence[Game]) -> random.Random:
    """Deterministic generator tied to the instance, so checks replay exactly."""
    return random.Random(_fingerprint(games))


def _vec(x) -> list:
    return [fmt(v) for v in x]


# bundled instances

EXAMPLE_5 = IncompleteGame.minimal([0, 1, 2, 1, 4], 10)
EXAMPLE_3 = IncompleteGame.minimal([0, 0, 0], 1)
FLAT_UPPER = IncompleteGame.minimal([1, 1, 1], 3)
ONE_SINGLETON_UNKNOWN = IncompleteGame(3, {2: -1, 4: -1, 3: 0, 5: 0, 6: 0, 7: 1})
NO_SINGLETONS_4 = IncompleteGame(4, {S: Fraction(size(S) - 1) for S in range(1, 16) if size(S) != 1})


def _minimal_suite(ns: Sequence[int], delta: str = "nonnegative") -> Callable:
    def suite(rng: random.Random, samples: int) -> list:
        return [(gen.minimal_game(rng, n, delta),) for _ in range(samples) for n in ns]

    return suite


def _duv_suite(ns: Sequence[int], mixed: bool = False) -> Callable:
    def suite(rng: random.Random, samples: int) -> list:
        out = []
        for k in range(samples):
            for n in ns:
                ext = not (mixed and k % 2 and n > 1)
                out.append((gen.duv_game(rng, n, extendable=ext),))
        return out

    return suite


def _one_convex_suite(ns: Sequence[int]) -> Callable:
    def suite(rng: random.Random, samples: int) -> list:
        out = []
        for k in range(samples):
            for n in ns:
                if k % 3 == 2 and n >= 2:
                    out.append((gen.one_convex_game_with_null_player(rng, n, rng.randrange(n)),))
                else:
                    out.append((gen.one_convex_game(rng, n, tight=k % 3 == 1),))
        return out

    return suite


def _complete_suite(ns: Sequence[int]) -> Callable:
    def suite(rng: random.Random, samples: int) -> list:
        return [(gen.complete_game(rng, n),) for _ in range(samples) for n in ns]

    return suite


def _pair_suite(ns: Sequence[int]) -> Callable:
    def suite(rng: random.Random, samples: int) -> list:
        out = []
        for _ in range(samples):
            for n in ns:
                v = gen.minimal_game(rng, n)
                w = gen.minimal_game(rng, n)
                if rng.random() < 0.5:  # give w two equal singletons
                    i, j = rng.sample(range(n), 2)
                    vals = dict(w.values)
                    vals[1 << j] = vals[1 << i]
                    vals[w.grand] = sum((vals[1 << k] for k in range(n)), Fraction(0)) + total_excess(w)
                    w = IncompleteGame(n, vals)
                out.append((v, w))
        return out

    return suite


def _complete_pair_suite(ns: Sequence[int]) -> Callable:
    def suite(rng: random.Random, samples: int) -> list:
        return [(gen.complete_game(rng, n), gen.complete_game(rng, n)) for _ in range(samples) for n in ns]

    return suite


# individual checks: each returns (ok, sides)


def _c_extendability_minimal(g):
    a, b = is_extendable_minimal(g), lp_extendable(g)
    return a == b, {"delta_nonnegative": a, "lp_feasible": b}


def _c_upper_game_minimal(g):
    ub = upper_game_minimal(g)
    bounds = coordinate_bounds_lp(g)
    bad = {}
    for T, bd in bounds.items():
        expect_lower_free = 1 < size(T) < g.n - 1
        if bd.upper != ub.values[T] or (bd.lower == Unbounded.BELOW) != expect_lower_free:
            bad[label(T)] = {"lp_max": bd.upper, "lp_min": bd.lower, "formula": ub.values[T]}
    return not bad, {"mismatches": bad}


def _c_upper_criterion(g):
    literal = upper_game_one_convex_criterion(g)
    direct = is_one_convex(upper_game_minimal(g))
    return literal == direct, {"stated_criterion": literal, "upper_game_is_one_convex": direct}


def _c_upper_not_one_convex(g):
    ub = upper_game_minimal(g)
    b = upper_vector(ub)
    bN = sum(b, Fraction(0))
    return (not is_one_convex(ub)) and bN < ub.worth, {"b": _vec(b), "b(N)": bN, "v(N)": ub.worth}


def _c_extreme_tight(g):
    worst = {}
    for i in range(g.n):
        per, total = condition_slacks(extreme_game_minimal(g, i))
        loose = {label(S): s for S, s in per.items() if s}
        if loose or total:
            worst[f"v^{i + 1}"] = {"nonzero_slacks": loose, "b(N) - v(N)": total}
    return not worst, {"loose": worst}


def _c_extreme_are_vertices(g):
    verts = set(w.values for w in vertex_enumeration(g))
    missing = [i + 1 for i in range(g.n) if extreme_game_minimal(g, i).values not in verts]
    return not missing, {"extreme_games_not_vertices": missing, "vertex_count": len(verts)}


def _c_only_extreme(g):
    verts = vertex_enumeration(g)
    ext = {extreme_game_minimal(g, i).values for i in range(g.n)}
    extra = [w for w in verts if w.values not in ext]
    return not extra, {"vertex_count": len(verts), "extreme_game_count": len(ext), "other_vertices": extra}


def _c_rays_minimal(g):
    rays = {r.values for r in extreme_ray_enumeration(g)}
    expected = {extreme_ray(T, g.n).values for T in ray_index_set_minimal(g.n)}
    return rays == expected, {"enumerated": len(rays), "described": len(expected)}


def _c_soundness(g, draws: int = 20):
    d = description_minimal(g) if g.is_minimal() else description_duv(g)
    rng = _rng_for((g,))
    for _ in range(draws):
        cert = gen.certificate(rng, d)
        w = cert.reconstruct(d)
        if not (is_one_convex(w) and g.agrees(w)):
            return False, {"alphas": cert.alphas, "betas": {label(T): b for T, b in cert.betas.items()}, "game": w}
    return True, {"certificates": draws}


def _c_completeness(g):
    for w in vertex_enumeration(g):
        try:
            decompose_minimal(g, w)
        except NotAMember as exc:
            return False, {"vertex": w, "requirement": exc.requirement, "value": exc.value}
    return True, {}


def _c_zero_excess_unique(g):
    ub = upper_game_minimal(g)
    free = {}
    for T, bd in coordinate_bounds_lp(g).items():
        if bd.upper != ub.values[T] or bd.lower != ub.values[T]:
            free[label(T)] = {"max": bd.upper, "min": bd.lower}
    return not free, {"coordinates_not_fixed": free}


def _c_tau_formula(g):
    a, b = tau_quasi_balanced(g), tau_one_convex(g)
    return a == b, {"compromise": _vec(a), "b_minus_gap_share": _vec(b)}


def _c_nucleolus(g):
    a, b = nucleolus(g), tau_one_convex(g)
    return a == b, {"nucleolus": _vec(a), "tau": _vec(b)}


def _c_shapley_forms(g):
    a, b, c = shapley(g), shapley_alternate(g), shapley_permutation_oracle(g)
    return a == b == c, {"definition": _vec(a), "alternate": _vec(b), "orders": _vec(c)}


def _c_average_tau(g):
    a, b = average_tau(g), average_value(g)
    return a == b, {"tau_of_centroid": _vec(a), "closed_form": _vec(b)}


def _c_solidarity(g):
    a = solidarity_tau(g)
    b = (g.worth / g.n,) * g.n
    return a == b, {"mean_of_extreme_taus": _vec(a), "stated_v(N)/n": _vec(b)}


def _c_extreme_upper_vectors(g):
    delta = total_excess(g)
    for i in range(g.n):
        direct = upper_vector(extreme_game_minimal(g, i))
        stated = tuple(g.singleton(j) + (0 if j == i else delta) for j in range(g.n))
        if direct != stated:
            return False, {"player": i + 1, "direct": _vec(direct), "stated": _vec(stated)}
    return True, {}


def _c_conic_tau(g):
    base = average_tau(g)
    for a in (0, 1, 7):
        x = conic_tau(g, a)
        if x != base:
            return False, {"alpha": a, "conic": _vec(x), "average": _vec(base)}
    return True, {}


def _c_average_shapley(g):
    a, b = average_shapley(g), average_value(g)
    return a == b, {"shapley_of_centroid": _vec(a), "closed_form": _vec(b)}


def _c_conic_shapley(g):
    base = average_shapley(g)
    for a in (0, 1, 7):
        x = conic_shapley(g, a)
        if x != base:
            return False, {"alpha": a, "conic": _vec(x), "average": _vec(base)}
    return True, {}


def _c_example_average(g):
    x = average_value(g)
    want = tuple(Fraction(k, 5) for k in (2, 7, 12, 7, 22))
    return x == want, {"computed": _vec(x), "expected": _vec(want)}


def _axioms_hold(names, value, games):
    for name in names:
        arity = 2 if name in ("elementary-additivity", "elementary-fairness", "additivity") else 1
        item = [tuple(games)] if arity == 2 else [(games[0],)]
        verdict = check_axiom(name, value, item)
        if not verdict.holds:
            cx = verdict.counterexample
            return False, {"axiom": name, "players": [p + 1 for p in cx.players], "lhs": cx.lhs, "rhs": cx.rhs}
    return True, {"axioms": list(names)}


def _c_average_axioms(v, w):
    return _axioms_hold(AVERAGE_VALUE_AXIOMS, "average", (v, w))


def _c_null_analogue(g):
    share = total_excess(g) / g.n
    x = average_value(g)
    zeros = [i for i in range(g.n) if g.singleton(i) == 0]
    ok = all(x[i] == share > 0 for i in zeros) and bool(zeros)
    return ok, {"players_with_zero_singleton": [i + 1 for i in zeros], "payoffs": _vec(x), "Delta/n": share}


def _c_solidarity_axioms(v, w):
    return _axioms_hold(("efficiency", "elementary-symmetry", "elementary-additivity"), "solidarity", (v, w))


def _c_average_tau_axioms(g):
    return _axioms_hold(
        ("efficiency", "restricted-proportionality-centroid", "minimal-right-centroid"), "average", (g,)
    )


def _c_tau_properties(g):
    return _axioms_hold(TAU_AXIOMS, "tau", (g,))


def _c_tau_first_axiomatisation(g):
    return _axioms_hold(("efficiency", "minimal-right", "restricted-proportionality"), "tau", (g,))


def _c_upper_attained(g):
    ub = upper_game_minimal(g)
    for T in g.unknown:
        for i in range(g.n):
            if not T >> i & 1:
                x = extreme_game_minimal(g, i).values[T]
                if x != ub.values[T]:
                    return False, {"T": label(T), "i": i + 1, "v^i(T)": x, "upper(T)": ub.values[T]}
    return True, {}


def _c_shapley_axioms(v, w):
    return _axioms_hold(SHAPLEY_AXIOMS, "shapley", (v, w))


def _c_extendability_duv(g):
    a, b = is_extendable_duv(g), lp_extendable(g)
    return a == b, {"closed_form": a, "lp_feasible": b}


def _c_upper_game_duv(g):
    ub = upper_game_duv(g)
    bad = {}
    for T, bd in coordinate_bounds_lp(g).items():
        if bd.upper != ub.values[T] or bd.lower != Unbounded.BELOW:
            bad[label(T)] = {"lp_max": bd.upper, "lp_min": bd.lower, "formula": ub.values[T]}
    return not bad, {"mismatches": bad}


def _c_duv_vertex(g):
    verts = vertex_enumeration(g)
    ub = upper_game_duv(g)
    return [w.values for w in verts] == [ub.values], {"vertex_count": len(verts)}


def _c_duv_description(g, draws: int = 20):
    ub = upper_game_duv(g)
    rng = _rng_for((g,))
    for _ in range(draws):
        vals = list(ub.values)
        for T in g.unknown:
            vals[T] -= gen.rational(rng, -1, 4)
        w = CompleteGame(g.n, tuple(vals))
        try:
            decompose_duv(g, w)
            accepted = True
        except NotAMember:
            accepted = False
        if accepted != is_one_convex(w):
            return False, {"game": w, "accepted": accepted, "one_convex": not accepted}
    return True, {"samples": draws}


def _c_duv_tau(g, draws: int = 10):
    ub = upper_game_duv(g)
    base = tau_one_convex(ub)
    d = description_duv(g)
    rng = _rng_for((g,))
    for _ in range(draws):
        w = gen.certificate(rng, d).reconstruct(d)
        x = tau_one_convex(w)
        if x != base:
            return False, {"extension": w, "tau": _vec(x), "tau_upper": _vec(base)}
    return True, {"samples": draws}


def _c_marginals(g):
    et = centroid_rays(description_duv(g))
    for i in range(g.n):
        for S in range(1 << g.n):
            if S >> i & 1:
                continue
            a = ray_centre_marginal(g, S, i)
            b = et.values[S | 1 << i] - et.values[S]
            if a != b:
                return False, {"S": label(S), "player": i + 1, "lemma": a, "direct": b}
    return True, {}


def _c_ray_shapley_closed(g):
    direct = ray_centre_shapley(g)
    closed = tuple(ray_centre_shapley_closed_form(g, i) for i in range(g.n))
    return closed == direct, {"closed_form": _vec(closed), "direct": _vec(direct)}


def _c_small_n_coincide(g):
    a, b = conic_shapley(g, 1), average_shapley(g)
    return a == b, {"conic_alpha_1": _vec(a), "average": _vec(b)}


def _c_large_n_differ(g):
    a, b = conic_shapley(g, 1), average_shapley(g)
    return a != b, {"conic_alpha_1": _vec(a), "average": _vec(b)}


def _large_n_suite(rng: random.Random, samples: int) -> list:
    out = []
    for _ in range(samples):
        for n in (4, 5):
            w = gen.one_convex_game(rng, n)
            out.append((w.restrict([S for S in range(1 << n) if size(S) != 1]),))
    return out


def _zero_excess_suite(rng: random.Random, samples: int) -> list:
    return [(gen.minimal_game(rng, n, "zero"),) for _ in range(samples) for n in (3, 4)]


def _null_suite(rng: random.Random, samples: int) -> list:
    out = []
    for _ in range(samples):
        for n in (3, 4, 5):
            g = gen.minimal_game(rng, n, "positive")
            vals = dict(g.values)
            i = rng.randrange(n)
            vals[g.grand] -= vals[1 << i]
            vals[1 << i] = Fraction(0)
            out.append((IncompleteGame(n, vals),))
    return out


def _duv_unknown_suite(ns):
    inner = _duv_suite(ns)

    def suite(rng, samples):
        return [item for item in inner(rng, samples * 2) if item[0].unknown][: samples * len(ns)]

    return suite


def _small_duv_suite(rng, samples):
    return [item for item in _duv_suite((2, 3))(rng, samples * 2) if item[0].unknown][: samples * 2]


CLAIMS = (
    Claim(
        "extendability-minimal",
        "A minimal incomplete game has a 1-convex extension exactly when Delta >= 0.",
        _c_extendability_minimal,
        _minimal_suite((3, 4, 5), "any"),
    ),
    Claim(
        "upper-game-minimal",
        "The upper game v(N) - sum of outside singletons is the coordinatewise maximum over 1-convex "
        "extensions; coalitions of size strictly between 1 and n-1 have no lower bound.",
        _c_upper_game_minimal,
        _minimal_suite((3, 4)),
        ((EXAMPLE_3,), (EXAMPLE_5,)),
    ),
    Claim(
        "upper-game-one-convexity-criterion",
        "The upper game of a minimal game is 1-convex iff Delta = 0 and "
        "v(N) <= min over proper S of 2/(n-s) * sum of v(i) over i outside S.",
        _c_upper_criterion,
        _minimal_suite((3, 4), "zero"),
        ((FLAT_UPPER,),),
    ),
    Claim(
        "upper-game-not-one-convex-example",
        "For the 3-player game with zero singletons and v(N) = 1 the upper game is not 1-convex: b(N) = 0 < v(N).",
        _c_upper_not_one_convex,
        lambda rng, samples: [],
        ((EXAMPLE_3,),),
        instance_only=True,
    ),
    Claim(
        "upper-game-attained",
        "For each unknown T the upper bound is attained by the extreme game v^i of any player i outside T.",
        _c_upper_attained,
        _minimal_suite((3, 4, 5)),
        ((EXAMPLE_5,),),
    ),
    Claim(
        "extreme-games-tight",
        "Every extreme game v^i is 1-convex with all defining inequalities tight.",
        _c_extreme_tight,
        _minimal_suite((3, 4, 5)),
        ((EXAMPLE_3,), (EXAMPLE_5,)),
    ),
    Claim(
        "extreme-games-are-vertices",
        "Every v^i is a vertex of the set of 1-convex extensions.",
        _c_extreme_are_vertices,
        _minimal_suite((3, 4)),
        ((EXAMPLE_3,),),
    ),
    Claim(
        "only-extreme-games",
        "The games v^1, ..., v^n are the only vertices of the set of 1-convex extensions.",
        _c_only_extreme,
        _minimal_suite((3, 4)),
        ((EXAMPLE_3,),),
    ),
    Claim(
        "extreme-rays-minimal",
        "The extreme rays of the extension set are the e_T, T outside the singletons, N and the N-i.",
        _c_rays_minimal,
        _minimal_suite((3, 4)),
    ),
    Claim(
        "description-soundness",
        "Convex combinations of the v^i plus nonnegative combinations of the rays are 1-convex extensions.",
        _c_soundness,
        _minimal_suite((3, 4, 5)),
    ),
    Claim(
        "description-completeness",
        "Every 1-convex extension is a convex combination of the v^i plus a nonnegative combination of the rays.",
        _c_completeness,
        _minimal_suite((3, 4)),
        ((EXAMPLE_3,),),
    ),
    Claim(
        "zero-excess-unique-extension",
        "When Delta = 0 the upper game is the only 1-convex extension.",
        _c_zero_excess_unique,
        _zero_excess_suite,
    ),
    Claim(
        "tau-formula-one-convex",
        "On 1-convex games the tau-value is b_i - g(N)/n.",
        _c_tau_formula,
        _one_convex_suite((3, 4, 5)),
    ),
    Claim(
        "nucleolus-equals-tau",
        "On 1-convex games the nucleolus equals the tau-value.",
        _c_nucleolus,
        _one_convex_suite((3, 4, 5)),
    ),
    Claim(
        "shapley-alternate-formula",
        "The alternate Shapley formula with 1/C(n-1, s) weights equals the definition.",
        _c_shapley_forms,
        _complete_suite((2, 3, 4, 5)),
    ),
    Claim(
        "average-tau-closed-form",
        "The average tau-value is v(i) + Delta/n.",
        _c_average_tau,
        _minimal_suite((3, 4, 5)),
        ((EXAMPLE_5,),),
    ),
    Claim(
        "solidarity-tau-closed-form",
        "The solidarity tau-value gives v(N)/n to every player.",
        _c_solidarity,
        _minimal_suite((3, 4, 5)),
        ((EXAMPLE_5,),),
    ),
    Claim(
        "extreme-game-upper-vectors",
        "The upper vector of v^i is v(i) for player i and v(j) + Delta for every other player j.",
        _c_extreme_upper_vectors,
        _minimal_suite((3, 4, 5)),
        ((EXAMPLE_3,),),
    ),
    Claim(
        "conic-tau-equals-average-tau",
        "The conic tau-value equals the average tau-value for every alpha >= 0.",
        _c_conic_tau,
        _minimal_suite((3, 4, 5)),
    ),
    Claim(
        "average-shapley-closed-form",
        "The Shapley value of the centroid of the extreme games is v(i) + Delta/n.",
        _c_average_shapley,
        _minimal_suite((3, 4, 5)),
    ),
    Claim(
        "conic-shapley-equals-average-shapley",
        "On minimal games the conic Shapley value equals the average Shapley value for every alpha >= 0.",
        _c_conic_shapley,
        _minimal_suite((3, 4, 5)),
    ),
    Claim(
        "average-value-example",
        "The 5-player example with singletons 0, 1, 2, 1, 4 and v(N) = 10 has average value (2/5, 7/5, 12/5, 7/5, 22/5).",
        _c_example_average,
        lambda rng, samples: [],
        ((EXAMPLE_5,),),
        instance_only=True,
    ),
    Claim(
        "average-value-axioms",
        "The average value satisfies efficiency, elementary symmetry, zero-normalisation invariance, elementary "
        "additivity, zero-excess, individual rationality, elementary triviality and elementary fairness.",
        _c_average_axioms,
        _pair_suite((3, 4, 5)),
    ),
    Claim(
        "null-player-analogue-fails",
        "When Delta > 0 a player with v(i) = 0 receives Delta/n > 0 under the average value.",
        _c_null_analogue,
        _null_suite,
    ),
    Claim(
        "solidarity-shares-three-axioms",
        "The solidarity tau-value satisfies efficiency, elementary symmetry and elementary additivity.",
        _c_solidarity_axioms,
        _pair_suite((3, 4, 5)),
    ),
    Claim(
        "average-value-tau-axioms",
        "The average value satisfies efficiency and the restricted proportionality and minimal right "
        "properties of the centroid.",
        _c_average_tau_axioms,
        _minimal_suite((3, 4, 5)),
    ),
    Claim(
        "tau-properties",
        "On 1-convex games the tau-value is individually rational, efficient, symmetric, gives dummies zero "
        "and is S-equivalent.",
        _c_tau_properties,
        _one_convex_suite((2, 3, 4)),
    ),
    Claim(
        "tau-first-axiomatisation",
        "The tau-value is efficient, has the minimal right property f(v) = a^v + f(v - a^v) and the "
        "restricted proportionality property f(v_0) = alpha b^{v_0} for the zero-normalised game v_0.",
        _c_tau_first_axiomatisation,
        _one_convex_suite((2, 3, 4)),
    ),
    Claim(
        "shapley-axioms",
        "The Shapley value is efficient, symmetric, additive and gives null players zero.",
        _c_shapley_axioms,
        _complete_pair_suite((2, 3, 4)),
    ),
    Claim(
        "extendability-upper-vector",
        "A game with defined upper vector is extendable iff b(N) >= v(N) and every known coalition "
        "satisfies its 1-convexity inequality.",
        _c_extendability_duv,
        _duv_suite((2, 3, 4, 5), mixed=True),
    ),
    Claim(
        "upper-game-upper-vector",
        "For defined upper vector the upper game v(N) - b(N - S) is the coordinatewise maximum and no "
        "unknown coalition has a lower bound.",
        _c_upper_game_duv,
        _duv_suite((3, 4)),
    ),
    Claim(
        "upper-vector-single-vertex",
        "The upper game is the only vertex of the extension set of a game with defined upper vector.",
        _c_duv_vertex,
        _duv_suite((2, 3, 4)),
    ),
    Claim(
        "upper-vector-description",
        "The extensions of a game with defined upper vector are exactly the upper game plus nonnegative "
        "multiples of the rays e_T, T unknown.",
        _c_duv_description,
        _duv_suite((2, 3, 4)),
    ),
    Claim(
        "upper-vector-tau-invariance",
        "All 1-convex extensions of a game with defined upper vector have the same tau-value.",
        _c_duv_tau,
        _duv_suite((2, 3, 4)),
    ),
    Claim(
        "ray-centre-marginals",
        "In the centroid of the rays, the marginal contribution of i to S is 1/|E|, -1/|E| or 0 according to "
        "which of S and S + i are known.",
        _c_marginals,
        _duv_unknown_suite((3, 4, 5)),
        ((ONE_SINGLETON_UNKNOWN,),),
    ),
    Claim(
        "ray-centre-shapley-closed-form",
        "The Shapley value of the centroid of the rays is the weighted count of (S known, S + i unknown) "
        "minus that of (S unknown, S + i known), over |E| n!.",
        _c_ray_shapley_closed,
        _duv_unknown_suite((3, 4)),
        ((ONE_SINGLETON_UNKNOWN,),),
    ),
    Claim(
        "conic-shapley-coincides-small-n",
        "For n <= 3 and defined upper vector the conic and average Shapley values coincide.",
        _c_small_n_coincide,
        _small_duv_suite,
        ((ONE_SINGLETON_UNKNOWN,),),
    ),
    Claim(
        "conic-shapley-differs-large-n",
        "For n >= 4, if exactly the singletons are unknown, the conic and average Shapley values differ.",
        _c_large_n_differ,
        _large_n_suite,
        ((NO_SINGLETONS_4,),),
    ),
)

CLAIMS_BY_NAME = {c.name: c for c in CLAIMS}


def _run_claim(claim: Claim, instances: Iterable[tuple], seed: Optional[int], user: Optional[Game]) -> ClaimReport:
    count = 0
    for games in instances:
        if user is not None and games == (user,):
            try:
                ok, sides = claim.check(*games)
            except GameError:
                continue  # the supplied game is outside this claim's hypotheses
        else:
            ok, sides = claim.check(*games)
        count += 1
        if not ok:
            evidence = {"instance": plain(list(games)), "sides": plain(sides), "instances_checked": count}
            return ClaimReport(claim.name, claim.statement, REFUTED, evidence)
    if not count:
        return ClaimReport(claim.name, claim.statement, NOT_CHECKABLE, {"reason": "no applicable instance"})
    return ClaimReport(claim.name, claim.statement, CONFIRMED, {"instances_checked": count, "seed": seed})


def verify_claims(
    game: Optional[Game] = None, seed: int = 42, samples: int = 4, names: Optional[Sequence[str]] = None
) -> list:
    """One report per claim, deterministic in ``seed``.

    Each claim is checked on its bundled instances, then on ``samples``
    seeded random instances per player count. When ``game`` is given it is
    checked first by every claim that accepts it.
    """
    chosen = CLAIMS if names is None else tuple(CLAIMS_BY_NAME[n] for n in names)
    reports = []
    for claim in chosen:
        rng = random.Random(f"{seed}:{claim.name}")
        instances: list = []
        if game is not None and _accepts(claim, game):
            instances.append((game,))
        instances.extend(claim.fixed)
        instances.extend(claim.suite(rng, samples))
        reports.append(_run_claim(claim, instances, seed, game))
    return reports


def _accepts(claim: Claim, game: Game) -> bool:
    """Whether a single user-supplied game fits the claim's instance shape."""
    if claim.instance_only:
        return False
    sample = claim.fixed[0] if claim.fixed else next(iter(claim.suite(random.Random(0), 1)), None)
    if sample is None or len(sample) != 1:
        return False
    ref = sample[0]
    if isinstance(ref, CompleteGame) != isinstance(game, CompleteGame):
        return False
    if isinstance(ref, IncompleteGame):
        if ref.is_minimal() != game.is_minimal() or ref.has_upper_vector() != game.has_upper_vector():
            return False
    return True


def replay_claim(report: ClaimReport) -> tuple:
    """Re-run a refuted claim on its stored instance; returns ``(ok, sides)`` as stored."""
    if report.status != REFUTED:
        raise GameError("only refuted claims carry an instance")
    claim = CLAIMS_BY_NAME[report.claim]
    games = [from_document(doc) for doc in report.evidence["instance"]]
    ok, sides = claim.check(*games)
    return ok, plain(sides)


def report_json(reports: Sequence[ClaimReport]) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2, sort_keys=False) + "\n"


def report_text(reports: Sequence[ClaimReport]) -> str:
    lines = []
    width = max(len(r.claim) for r in reports) if reports else 0
    for r in reports:
        lines.append(f"{r.status:<20} {r.claim:<{width}}  {r.statement}")
        if r.status == REFUTED:
            lines.append("    instance: " + json.dumps(r.evidence["instance"]))
            lines.append("    sides:    " + json.dumps(r.evidence["sides"]))
    return "\n".join(lines) + "\n"
