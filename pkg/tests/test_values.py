import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from incoop import generators as gen
from incoop.core import (
    CompleteGame,
    GameError,
    IncompleteGame,
    NotExtendableError,
    ShapeError,
    size,
    total_excess,
    upper_vector,
)
from incoop.oneconvex import centroid_games, description_minimal, extreme_game_minimal, is_one_convex
from incoop.oracle import shapley_permutation_oracle
from incoop.values import (
    CONCEPTS,
    average_shapley,
    average_tau,
    average_value,
    compute_value,
    conic_shapley,
    conic_tau,
    equal_split,
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

F = Fraction
EXAMPLE_5 = IncompleteGame.minimal([0, 1, 2, 1, 4], 10)
EXPECTED_5 = tuple(F(x, 5) for x in (2, 7, 12, 7, 22))
seeds = st.integers(min_value=0, max_value=10**6)


def symmetric(n, by_size):
    return CompleteGame.from_function(n, lambda m: by_size(size(m)))


def duv_one_unknown_singleton():
    """n = 3, only {1} unknown, pairs 1/2, v(N) = 1, other singletons 0."""
    return IncompleteGame(3, {2: 0, 4: 0, 3: F(1, 2), 5: F(1, 2), 6: F(1, 2), 7: 1})


# -- complete games -----------------------------------------------------------------


def test_tau_of_extreme_games_is_their_upper_vector():
    for i in range(5):
        v = extreme_game_minimal(EXAMPLE_5, i)
        assert tau_one_convex(v) == upper_vector(v)


def test_tau_symmetric_and_additive():
    v = symmetric(4, lambda s: {0: 0, 1: 0, 2: 1, 3: 2, 4: 3}[s])
    assert is_one_convex(v)
    assert tau_one_convex(v) == (F(3, 4),) * 4
    additive = CompleteGame.additive([1, F(-1, 2), 3])
    assert tau_one_convex(additive) == (1, F(-1, 2), 3)
    assert tau_quasi_balanced(additive) == (1, F(-1, 2), 3)


def test_tau_rejects_games_outside_the_class():
    bad = symmetric(3, lambda s: {0: 0, 1: 0, 2: 1, 3: 1}[s])
    with pytest.raises(GameError):
        tau_one_convex(bad)
    with pytest.raises(GameError):
        tau_quasi_balanced(bad)


def test_tau_quasi_balanced_two_players():
    v = CompleteGame(2, (0, 0, 0, 2))
    assert tau_quasi_balanced(v) == (1, 1)


def test_tau_of_the_average_centroid():
    vt = centroid_games(description_minimal(EXAMPLE_5))
    assert tau_one_convex(vt) == EXPECTED_5


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=5))
def test_quasi_balanced_tau_agrees_on_one_convex_games(seed, n):
    w = gen.one_convex_game(random.Random(seed), n)
    assert tau_quasi_balanced(w) == tau_one_convex(w)


def test_shapley_examples():
    v = symmetric(3, lambda s: {0: 0, 1: 0, 2: 1, 3: 1}[s])
    assert shapley(v) == (F(1, 3),) * 3
    additive = CompleteGame.additive([2, F(1, 3), -1])
    assert shapley(additive) == (2, F(1, 3), -1)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=5))
def test_shapley_forms_agree(seed, n):
    w = gen.complete_game(random.Random(seed), n)
    assert shapley(w) == shapley_alternate(w) == shapley_permutation_oracle(w)


def test_nucleolus_examples():
    v = symmetric(3, lambda s: {0: 0, 1: 0, 2: F(1, 2), 3: 1}[s])
    assert nucleolus(v) == (F(1, 3),) * 3
    additive = CompleteGame.additive([1, 2, 3, 4])
    assert nucleolus(additive) == (1, 2, 3, 4)


@settings(max_examples=15, deadline=None)
@given(seeds, st.integers(min_value=2, max_value=4))
def test_nucleolus_equals_tau_on_one_convex_games(seed, n):
    w = gen.one_convex_game(random.Random(seed), n)
    assert nucleolus(w) == tau_one_convex(w)


def test_nucleolus_of_a_non_one_convex_game():
    # Glove game: player 1 holds the left glove, players 2 and 3 right gloves.
    v = CompleteGame.from_function(3, lambda m: 1 if m & 1 and m & 6 else 0)
    assert nucleolus(v) == (1, 0, 0)


# -- minimal games ------------------------------------------------------------------


def test_average_values_of_the_five_player_example():
    assert average_value(EXAMPLE_5) == EXPECTED_5
    assert average_tau(EXAMPLE_5) == EXPECTED_5
    assert average_shapley(EXAMPLE_5) == EXPECTED_5
    assert conic_shapley(EXAMPLE_5, 3) == EXPECTED_5
    for alpha in (0, 1, 7):
        assert conic_tau(EXAMPLE_5, alpha) == EXPECTED_5


def test_solidarity_of_the_five_player_example():
    # The stated value is v(N)/n = (2,2,2,2,2); the mean of the tau-values
    # of the extreme games coincides with the average value instead.
    assert solidarity_tau(EXAMPLE_5) == EXPECTED_5
    assert equal_split(EXAMPLE_5) == (2,) * 5


def test_extreme_game_upper_vector():
    v1 = extreme_game_minimal(IncompleteGame.minimal([0, 0, 0], 1), 0)
    assert upper_vector(v1) == (1, 0, 0)


def test_average_value_special_cases():
    flat = IncompleteGame.minimal([1, 2, 3], 6)
    assert average_value(flat) == (1, 2, 3)
    g = IncompleteGame.minimal([0, 1, 1], 5)
    assert average_value(g)[0] == total_excess(g) / 3 > 0
    with pytest.raises(NotExtendableError):
        average_value(IncompleteGame.minimal([1, 1], 1))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=5), st.sampled_from([0, 1, 7, F(2, 3)]))
def test_minimal_value_coincidences(seed, n, alpha):
    g = gen.minimal_game(random.Random(seed), n, "nonnegative")
    zeta = average_value(g)
    assert average_tau(g) == zeta
    assert average_shapley(g) == zeta
    assert conic_tau(g, alpha) == zeta
    assert conic_shapley(g, alpha) == zeta
    assert solidarity_tau(g) == zeta


def test_conic_rejects_negative_alpha():
    with pytest.raises(GameError):
        conic_tau(EXAMPLE_5, -1)


# -- ray centre for games with defined upper vector -----------------------------------


def test_ray_centre_marginal_examples():
    g = duv_one_unknown_singleton()
    assert ray_centre_marginal(g, 0, 0) == -1
    assert ray_centre_marginal(g, 1, 1) == 1
    assert ray_centre_marginal(g, 0b010, 2) == 0
    with pytest.raises(GameError):
        ray_centre_marginal(g, 1, 0)


def test_ray_centre_shapley_sign():
    g = duv_one_unknown_singleton()
    assert ray_centre_shapley(g) == (F(-1, 3), F(1, 6), F(1, 6))
    assert tuple(ray_centre_shapley_closed_form(g, i) for i in range(3)) == (F(1, 3), F(-1, 6), F(-1, 6))


def test_conic_shapley_one_unknown_singleton():
    g = duv_one_unknown_singleton()
    base = average_shapley(g)
    assert conic_shapley(g, 1) == tuple(a + b for a, b in zip(base, (F(-1, 3), F(1, 6), F(1, 6))))
    assert average_tau(g) != conic_shapley(g, 1)


def test_ray_centre_vanishes_for_symmetric_unknown_sets():
    w = symmetric(4, lambda s: {0: 0, 1: 0, 2: 1, 3: 2, 4: 3}[s])
    g = w.restrict(m for m in range(16) if size(m) != 1)
    assert ray_centre_shapley(g) == (0, 0, 0, 0)
    assert all(ray_centre_shapley_closed_form(g, i) == 0 for i in range(4))
    for alpha in (0, 1, 5):
        assert conic_shapley(g, alpha) == average_shapley(g)


def test_ray_centre_needs_unknown_coalitions():
    w = symmetric(2, lambda s: s)
    with pytest.raises(GameError):
        ray_centre_shapley(w.restrict(range(4)))


# -- registry -----------------------------------------------------------------------


def test_compute_value_registry():
    assert compute_value("average", EXAMPLE_5).payoff == EXPECTED_5
    report = compute_value("conic", EXAMPLE_5, F(1, 2))
    assert report.payoff == EXPECTED_5 and report.witnesses["alpha"] == F(1, 2)
    with pytest.raises(ShapeError):
        compute_value("shapley", EXAMPLE_5)
    with pytest.raises(GameError):
        compute_value("tau", symmetric(2, lambda s: s), alpha=1)
    with pytest.raises(GameError):
        compute_value("no-such-value", EXAMPLE_5)
    assert set(CONCEPTS) >= {"tau", "shapley", "nucleolus", "average", "solidarity", "conic"}
