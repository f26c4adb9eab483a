"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are repeated in
the terminal summary) or directly with ``python3 tests/test_acceptance.py``.
Every comparison is exact; nothing is rounded and no tolerance is used.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction

from incoop import generators as gen
from incoop import oracle
from incoop.axioms import AVERAGE_VALUE_AXIOMS, check_axiom, random_suite
from incoop.core import CompleteGame, IncompleteGame, grand, label, size, total_excess
from incoop.oneconvex import (
    NotAMember,
    centroid_rays,
    condition_slacks,
    decompose_duv,
    decompose_minimal,
    describe,
    description_duv,
    description_minimal,
    extreme_game_minimal,
    extreme_ray,
    is_extendable_minimal,
    is_one_convex,
    upper_game,
    upper_game_duv,
    upper_game_minimal,
)
from incoop.values import (
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
)

SEED = 42
RESULTS: list = []


def record(number: int, title: str, ok: bool, detail: str, started: float) -> None:
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}  [{time.perf_counter() - started:.2f}s]  {detail}"
    RESULTS.append(line)
    print(line)


def zeta(g: IncompleteGame) -> tuple:
    delta = total_excess(g)
    return tuple(g.singleton(i) + delta / g.n for i in range(g.n))


# -- 1 -----------------------------------------------------------------------------


def test_criterion_01_five_player_average_value():
    t0 = time.perf_counter()
    g = IncompleteGame.minimal([0, 1, 2, 1, 4], 10)
    got = average_value(g)
    expected = tuple(Fraction(x, 5) for x in (2, 7, 12, 7, 22))
    elapsed = time.perf_counter() - t0
    ok = got == expected and elapsed < 1
    record(1, "five-player average value", ok, f"got ({', '.join(map(str, got))}) in {elapsed:.3f}s", t0)
    assert ok


# -- 2 -----------------------------------------------------------------------------


def test_criterion_02_extendability_matches_lp():
    t0 = time.perf_counter()
    rng = random.Random(f"{SEED}:extendability")
    modes = ("negative", "zero", "any", "any")
    checked = negatives = 0
    mismatch = None
    for n in (3, 4, 5):
        for k in range(200):
            g = gen.minimal_game(rng, n, modes[k % 4])
            negatives += total_excess(g) < 0
            if is_extendable_minimal(g) != oracle.lp_extendable(g):
                mismatch = mismatch or g
            checked += 1
    elapsed = time.perf_counter() - t0
    ok = mismatch is None and negatives > 0 and elapsed < 30
    detail = f"{checked} games, {negatives} with Delta < 0" + (f"; mismatch on {mismatch!r}" if mismatch else "")
    record(2, "extendability vs LP feasibility", ok, detail, t0)
    assert ok


# -- 3 -----------------------------------------------------------------------------


def test_criterion_03_upper_game_matches_lp_bounds():
    t0 = time.perf_counter()
    rng = random.Random(f"{SEED}:upper")
    problems = []
    counts = {"minimal": 0, "upper-vector": 0}
    ns = (2, 3, 4)
    for k in range(50):
        n = ns[k % 3]
        g = gen.minimal_game(rng, n, "nonnegative")
        ub = upper_game_minimal(g)
        for S, b in oracle.coordinate_bounds_lp(g).items():
            if b.upper != ub.values[S]:
                problems.append(f"minimal max {label(S)}: {b.upper} != {ub.values[S]}")
            should_be_unbounded = 1 < size(S) < n - 1
            if (b.lower is oracle.Unbounded.BELOW) != should_be_unbounded:
                problems.append(f"minimal min {label(S)} (n={n}): {b.lower}")
        counts["minimal"] += 1

        g = gen.duv_game(rng, n)
        ub = upper_game_duv(g)
        for S, b in oracle.coordinate_bounds_lp(g).items():
            if b.upper != ub.values[S]:
                problems.append(f"upper-vector max {label(S)}: {b.upper} != {ub.values[S]}")
        counts["upper-vector"] += 1
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed < 60
    detail = f"{counts['minimal']} minimal and {counts['upper-vector']} upper-vector games"
    if problems:
        detail += f"; {len(problems)} problems, first: {problems[0]}"
    record(3, "upper game vs coordinate LP bounds", ok, detail, t0)
    assert ok


# -- 4 -----------------------------------------------------------------------------


def test_criterion_04_extreme_games_tight():
    """Every slack of every v^i must be zero: all nonempty S, and b(N) - v(N)."""
    t0 = time.perf_counter()
    rng = random.Random(f"{SEED}:tight")
    games = [IncompleteGame.minimal([0, 1, 2, 1, 4], 10), IncompleteGame.minimal([0, 0, 0], 1)]
    for n in (2, 3, 4, 5):
        games += [gen.minimal_game(rng, n, "nonnegative") for _ in range(20)]
        games.append(gen.minimal_game(rng, n, "zero"))
    pairs = failures = 0
    first = None
    for g in games:
        for i in range(g.n):
            per, total = condition_slacks(extreme_game_minimal(g, i))
            loose = {S: s for S, s in per.items() if s != 0}
            pairs += 1
            if loose or total != 0:
                failures += 1
                if first is None:
                    S, s = next(iter(loose.items())) if loose else (grand(g.n), total)
                    first = f"Delta = {total_excess(g)}, v^{i + 1} has slack {s} at {label(S)}"
    ok = failures == 0
    detail = f"{pairs} extreme games checked, {failures} not tight" + (f"; first: {first}" if first else "")
    record(4, "extreme-game tightness", ok, detail, t0)
    assert ok, detail


# -- 5 -----------------------------------------------------------------------------


def test_criterion_05_description_soundness():
    t0 = time.perf_counter()
    rng = random.Random(f"{SEED}:soundness")
    reconstructed = 0
    bad = None
    for n in (3, 4, 5):
        for _ in range(50):
            g = gen.minimal_game(rng, n, "nonnegative")
            d = description_minimal(g)
            for _ in range(1000):
                w = gen.certificate(rng, d).reconstruct(d)
                reconstructed += 1
                if not (is_one_convex(w) and g.agrees(w)):
                    bad = bad or (g, w)
    elapsed = time.perf_counter() - t0
    ok = bad is None and elapsed < 60
    detail = f"{reconstructed} certificates over 150 games" + (f"; bad reconstruction for {bad[0]!r}" if bad else "")
    record(5, "description soundness", ok, detail, t0)
    assert ok


# -- 6 -----------------------------------------------------------------------------


def test_criterion_06_description_completeness_discrepancy():
    t0 = time.perf_counter()
    g = IncompleteGame.minimal([0, 0, 0], 1)
    vertices = oracle.vertex_enumeration(g)
    half = CompleteGame(3, (0, 0, 0, Fraction(1, 2), 0, Fraction(1, 2), Fraction(1, 2), 1))
    rejection = None
    try:
        decompose_minimal(g, half)
    except NotAMember as exc:
        rejection = exc
    report = oracle.verify_claims(seed=SEED, names=["description-completeness"])[0]
    parts = {
        "4 vertices": len(vertices) == 4,
        "half-pairs vertex present": half in vertices,
        "all vertices 1-convex": all(is_one_convex(w) and g.agrees(w) for w in vertices),
        "rejected with sum 3/2": rejection is not None
        and rejection.requirement == "alpha-sum"
        and rejection.value == Fraction(3, 2),
        "claim refuted": report.status == oracle.REFUTED,
    }
    ok = all(parts.values())
    record(6, "description completeness discrepancy", ok, _parts(parts), t0)
    assert ok


def _parts(parts: dict) -> str:
    return ", ".join(f"{k}: {'yes' if v else 'NO'}" for k, v in parts.items())


# -- 7 -----------------------------------------------------------------------------


def test_criterion_07_value_coincidences():
    t0 = time.perf_counter()
    rng = random.Random(f"{SEED}:coincidence")
    checked = 0
    bad = None
    for n in (3, 4, 5):
        for _ in range(50):
            g = gen.minimal_game(rng, n, "nonnegative")
            target = zeta(g)
            candidates = [average_tau(g), average_shapley(g)]
            for alpha in (0, 1, 7):
                candidates += [conic_tau(g, alpha), conic_shapley(g, alpha)]
            if any(tuple(c) != target for c in candidates):
                bad = bad or g
            checked += 1
    ok = bad is None
    record(7, "value coincidences", ok, f"{checked} games, alpha in {{0, 1, 7}}" + (f"; differs on {bad!r}" if bad else ""), t0)
    assert ok


# -- 8 -----------------------------------------------------------------------------


def test_criterion_08_nucleolus_equals_tau():
    t0 = time.perf_counter()
    rng = random.Random(f"{SEED}:nucleolus")
    checked = 0
    bad = None
    for n in (3, 4, 5):
        for k in range(50):
            w = gen.one_convex_game(rng, n, tight=k % 5 == 0)
            if nucleolus(w) != tau_one_convex(w):
                bad = bad or w
            checked += 1
    elapsed = time.perf_counter() - t0
    ok = bad is None and elapsed < 120
    record(8, "nucleolus equals tau", ok, f"{checked} 1-convex games" + (f"; differs on {bad!r}" if bad else ""), t0)
    assert ok


# -- 9 -----------------------------------------------------------------------------


def test_criterion_09_shapley_triple_agreement():
    t0 = time.perf_counter()
    rng = random.Random(f"{SEED}:shapley")
    bad = None
    for k in range(100):
        n = 1 + k % 6
        w = gen.complete_game(rng, n)
        a, b, c = shapley(w), shapley_alternate(w), oracle.shapley_permutation_oracle(w)
        if not a == b == c:
            bad = bad or w
    ok = bad is None
    record(9, "Shapley triple agreement", ok, "100 games, n = 1..6" + (f"; differs on {bad!r}" if bad else ""), t0)
    assert ok


# -- 10 ----------------------------------------------------------------------------


def test_criterion_10_upper_vector_structure():
    t0 = time.perf_counter()
    rng = random.Random(f"{SEED}:duv")
    steps = (Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 3), Fraction(2))
    vertex_bad = membership_bad = None
    accepted = rejected = 0
    for k in range(50):
        n = (2, 3, 4)[k % 3]
        g = gen.duv_game(rng, n)
        ub = upper_game(g)
        if oracle.vertex_enumeration(g) != [ub]:
            vertex_bad = vertex_bad or g
        d = description_duv(g)
        for _ in range(10):
            betas = {T: rng.choice(steps) for T in g.unknown}
            w = ub
            for T, beta in betas.items():
                w = w + extreme_ray(T, n).scale(beta)
            try:
                cert = decompose_duv(g, w)
                member = cert.reconstruct(d) == w
            except NotAMember:
                member = False
            accepted += member
            rejected += not member
            if member != (is_one_convex(w) and g.agrees(w)):
                membership_bad = membership_bad or (g, w)
    ok = vertex_bad is None and membership_bad is None and accepted > 0 and rejected > 0
    detail = f"50 games; decompose accepted {accepted}, rejected {rejected}"
    if vertex_bad:
        detail += f"; vertex set is not the upper game for {vertex_bad!r}"
    if membership_bad:
        detail += f"; membership disagrees with 1-convexity on {membership_bad[0]!r}"
    record(10, "upper-vector game structure", ok, detail, t0)
    assert ok


# -- 11 ----------------------------------------------------------------------------


def _duv_with_unknowns(rng: random.Random, n: int) -> IncompleteGame:
    while True:
        g = gen.duv_game(rng, n)
        if g.unknown:
            return g


def _symmetric_duv(rng: random.Random, n: int) -> IncompleteGame:
    """Unknown coalitions are all coalitions of some sizes between 1 and n - 2."""
    sizes = [s for s in range(1, n - 1) if rng.random() < 0.6] or [1]
    w = gen.one_convex_game(rng, n)
    return IncompleteGame(n, {S: w.values[S] for S in range(1 << n) if size(S) not in sizes})


def test_criterion_11_ray_centre():
    t0 = time.perf_counter()
    rng = random.Random(f"{SEED}:ray-centre")
    marginal_pairs = 0
    problems = []
    for n in (3, 4, 5):  # with n = 2 every coalition is known
        for _ in range(5):
            g = _duv_with_unknowns(rng, n)
            e = centroid_rays(describe(g))
            for S in range(1 << n):
                for i in range(n):
                    if S >> i & 1:
                        continue
                    marginal_pairs += 1
                    if ray_centre_marginal(g, S, i) != e.values[S | 1 << i] - e.values[S]:
                        problems.append(f"marginal {label(S)}, player {i + 1}")
    negations = 0
    for k in range(50):
        g = _duv_with_unknowns(rng, (3, 4, 5)[k % 3])
        direct = ray_centre_shapley(g)
        closed = tuple(ray_centre_shapley_closed_form(g, i) for i in range(g.n))
        negations += closed == tuple(-x for x in direct)
        if closed != tuple(-x for x in direct):
            problems.append(f"sign relation on {g!r}")
    for n in (3, 4, 5):
        for _ in range(5):
            g = _symmetric_duv(rng, n)
            zero = (Fraction(0),) * n
            if ray_centre_shapley(g) != zero or any(ray_centre_shapley_closed_form(g, i) for i in range(n)):
                problems.append(f"symmetric unknown set not zero on {g!r}")
    ok = not problems
    detail = f"{marginal_pairs} marginal pairs, {negations}/50 negations, 15 symmetric games"
    if problems:
        detail += f"; first problem: {problems[0]}"
    record(11, "ray-centre lemmas", ok, detail, t0)
    assert ok


# -- 12 ----------------------------------------------------------------------------


def test_criterion_12_average_value_axioms():
    t0 = time.perf_counter()
    rng = random.Random(f"{SEED}:axioms")
    suites = {1: random_suite("incomplete", 1, rng, 50), 2: random_suite("incomplete", 2, rng, 50)}
    arity = {"elementary-additivity": 2, "elementary-fairness": 2}
    parts = {}
    for name in AVERAGE_VALUE_AXIOMS:
        parts[f"average {name}"] = check_axiom(name, "average", suites[arity.get(name, 1)]).holds
    null = check_axiom("null-player-analogue", "average", suites[1])
    parts["average null-player-analogue fails with Delta > 0"] = (
        not null.holds and null.counterexample is not None and total_excess(null.counterexample.games[0]) > 0
    )
    for name in ("efficiency", "elementary-symmetry", "elementary-additivity"):
        parts[f"solidarity {name}"] = check_axiom(name, "solidarity", suites[arity.get(name, 1)]).holds
    parts["solidarity fails zero-excess"] = not check_axiom("zero-excess", "solidarity", suites[1]).holds
    example = IncompleteGame.minimal([0, 1, 2, 1, 4], 10)
    parts["solidarity separated from average on the five-player game"] = solidarity_tau(example) != average_value(
        example
    )
    ok = all(parts.values())
    failed = [k for k, v in parts.items() if not v]
    detail = f"{len(parts)} checks on 150 games per suite" + (f"; failed: {'; '.join(failed)}" if failed else "")
    record(12, "axiom suite", ok, detail, t0)
    assert ok, detail


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failures = 0
    for test in tests:
        try:
            test()
        except AssertionError:
            failures += 1
    print(f"{len(tests) - failures}/{len(tests)} criteria pass")
    sys.exit(1 if failures else 0)
