"""Exact rational linear programming.

Two-phase tableau simplex over :class:`fractions.Fraction` with Bland's
rule, so it terminates on degenerate problems without perturbation.
Variables are free unless listed in ``LinearProgram.nonneg``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .core import RationalLike, to_rational

LE, EQ, GE = "<=", "==", ">="
OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    relation: str
    rhs: Fraction

    def __post_init__(self) -> None:
        if self.relation not in (LE, EQ, GE):
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", tuple(to_rational(a) for a in self.coeffs))
        object.__setattr__(self, "rhs", to_rational(self.rhs))

    def lhs(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * xi for a, xi in zip(self.coeffs, x) if a), Fraction(0))

    def satisfied(self, x: Sequence[Fraction]) -> bool:
        v = self.lhs(x)
        if self.relation == LE:
            return v <= self.rhs
        if self.relation == GE:
            return v >= self.rhs
        return v == self.rhs


@dataclass
class LinearProgram:
    """``sense`` of ``objective . x`` subject to ``constraints``."""

    num_vars: int
    constraints: list = field(default_factory=list)
    objective: tuple = ()
    sense: str = "min"
    nonneg: frozenset = frozenset()

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise ValueError("a linear program needs at least one variable")
        if self.sense not in ("min", "max"):
            raise ValueError(f"sense must be 'min' or 'max', got {self.sense!r}")
        obj = tuple(to_rational(a) for a in self.objective) or (Fraction(0),) * self.num_vars
        if len(obj) != self.num_vars:
            raise ValueError(f"objective has {len(obj)} entries, expected {self.num_vars}")
        self.objective = obj
        cons = []
        for c in self.constraints:
            if not isinstance(c, Constraint):
                c = Constraint(*c)
            if len(c.coeffs) != self.num_vars:
                raise ValueError(f"constraint row has {len(c.coeffs)} entries, expected {self.num_vars}")
            cons.append(c)
        self.constraints = cons
        self.nonneg = frozenset(self.nonneg)
        if any(not 0 <= j < self.num_vars for j in self.nonneg):
            raise ValueError("nonneg index out of range")

    def add(self, coeffs: Sequence[RationalLike], relation: str, rhs: RationalLike) -> None:
        c = Constraint(tuple(coeffs), relation, rhs)
        if len(c.coeffs) != self.num_vars:
            raise ValueError(f"constraint row has {len(c.coeffs)} entries, expected {self.num_vars}")
        self.constraints.append(c)

    def feasible(self, x: Sequence[Fraction]) -> bool:
        return len(x) == self.num_vars and all(x[j] >= 0 for j in self.nonneg) and all(
            c.satisfied(x) for c in self.constraints
        )

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * xi for a, xi in zip(self.objective, x) if a), Fraction(0))


@dataclass(frozen=True)
class LpOutcome:
    status: str
    solution: Optional[tuple] = None
    objective_value: Optional[Fraction] = None
    stage_values: tuple = ()

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Rows ``A x = b`` with ``b >= 0`` and an explicit basis."""

    def __init__(self, rows: list, rhs: list, basis: list, ncols: int) -> None:
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols

    def pivot(self, r: int, c: int, z: list) -> None:
        row = self.rows[r]
        p = row[c]
        if p != 1:
            inv = 1 / p
            for j in range(self.ncols):
                if row[j]:
                    row[j] *= inv
            self.rhs[r] *= inv
        nz = [j for j in range(self.ncols) if row[j]]
        br = self.rhs[r]
        for k, other in enumerate(self.rows):
            if k == r:
                continue
            f = other[c]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
                self.rhs[k] -= f * br
        f = z[c]
        if f:
            for j in nz:
                z[j] -= f * row[j]
            z[-1] -= f * br
        self.basis[r] = c

    def reduced_costs(self, cost: Sequence[Fraction]) -> list:
        """Cost row with basic columns eliminated; last entry is -(objective)."""
        z = list(cost) + [Fraction(0)]
        for r, b in enumerate(self.basis):
            f = z[b]
            if f:
                row = self.rows[r]
                for j in range(self.ncols):
                    if row[j]:
                        z[j] -= f * row[j]
                z[-1] -= f * self.rhs[r]
        return z

    def minimise(self, cost: Sequence[Fraction], allowed: int) -> str:
        """Bland's rule; only columns ``< allowed`` may enter."""
        z = self.reduced_costs(cost)
        while True:
            enter = next((j for j in range(allowed) if z[j] < 0), None)
            if enter is None:
                return OPTIMAL
            best = None
            for r, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    key = (self.rhs[r] / a, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], enter, z)

    def values(self) -> list:
        x = [Fraction(0)] * self.ncols
        for r, b in enumerate(self.basis):
            x[b] = self.rhs[r]
        return x


def solve(lp: LinearProgram) -> LpOutcome:
    m = lp.num_vars
    # column layout: for each variable a "plus" column and, when free, a "minus" column
    col_of = []
    ncols = 0
    for j in range(m):
        if j in lp.nonneg:
            col_of.append((ncols, None))
            ncols += 1
        else:
            col_of.append((ncols, ncols + 1))
            ncols += 2
    n_struct = ncols

    raw = []
    for c in lp.constraints:
        row = [Fraction(0)] * n_struct
        for j, a in enumerate(c.coeffs):
            if a:
                p, q = col_of[j]
                row[p] = a
                if q is not None:
                    row[q] = -a
        rel, rhs = c.relation, c.rhs
        if rhs < 0:
            row = [-a for a in row]
            rhs = -rhs
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        raw.append((row, rel, rhs))

    n_slack = sum(1 for _, rel, _ in raw if rel != EQ)
    n_art = sum(1 for _, rel, _ in raw if rel != LE)
    total = n_struct + n_slack + n_art
    rows, rhs, basis = [], [], []
    s = n_struct
    a = n_struct + n_slack
    for row, rel, b in raw:
        full = row + [Fraction(0)] * (n_slack + n_art)
        if rel == LE:
            full[s] = Fraction(1)
            basis.append(s)
            s += 1
        else:
            if rel == GE:
                full[s] = Fraction(-1)
                s += 1
            full[a] = Fraction(1)
            basis.append(a)
            a += 1
        rows.append(full)
        rhs.append(b)
    t = _Tableau(rows, rhs, basis, total)
    first_art = n_struct + n_slack

    if n_art:
        phase1 = [Fraction(0)] * first_art + [Fraction(1)] * n_art
        t.minimise(phase1, total)
        if any(t.rhs[r] != 0 for r, b in enumerate(t.basis) if b >= first_art):
            return LpOutcome(INFEASIBLE)
        # drive zero-valued artificials out of the basis; drop redundant rows
        r = 0
        while r < len(t.rows):
            if t.basis[r] >= first_art:
                col = next((j for j in range(first_art) if t.rows[r][j]), None)
                if col is None:
                    del t.rows[r], t.rhs[r], t.basis[r]
                    continue
                t.pivot(r, col, [Fraction(0)] * (total + 1))
            r += 1

    sign = -1 if lp.sense == "max" else 1
    cost = [Fraction(0)] * total
    for j, c in enumerate(lp.objective):
        p, q = col_of[j]
        cost[p] = sign * c
        if q is not None:
            cost[q] = -sign * c
    if t.minimise(cost, first_art) == UNBOUNDED:
        return LpOutcome(UNBOUNDED)

    cols = t.values()
    x = tuple(cols[p] - (cols[q] if q is not None else 0) for p, q in col_of)
    if not lp.feasible(x):  # pragma: no cover - exactness guard
        raise RuntimeError("simplex returned an infeasible point")
    return LpOutcome(OPTIMAL, x, lp.value(x))


def lexicographic_min(stages: Sequence[LinearProgram]) -> LpOutcome:
    """Optimise each stage in turn, freezing earlier optima as equalities.

    All stages share one variable space; a stage sees its own constraints,
    the constraints of every earlier stage, and ``objective_k . x == opt_k``
    for each earlier stage ``k``.
    """
    if not stages:
        raise ValueError("no stages")
    m = stages[0].num_vars
    if any(s.num_vars != m for s in stages):
        raise ValueError("stages must share the same variables")
    carried: list = []
    nonneg: frozenset = frozenset()
    found = []
    out = None
    for stage in stages:
        nonneg = nonneg | stage.nonneg
        carried = carried + list(stage.constraints)
        lp = LinearProgram(m, list(carried), stage.objective, stage.sense, nonneg)
        out = solve(lp)
        if not out.optimal:
            return LpOutcome(out.status, stage_values=tuple(found))
        found.append(out.objective_value)
        carried.append(Constraint(stage.objective, EQ, out.objective_value))
    return LpOutcome(OPTIMAL, out.solution, out.objective_value, tuple(found))
