import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from incoop import generators as gen
from incoop.core import CompleteGame, IncompleteGame, total_excess
from incoop.gamefile import (
    DuplicateCoalition,
    KShapeError,
    MalformedGameFile,
    dumps,
    from_document,
    kind_of,
    loads,
    parse_game,
    to_document,
    write_game,
)
from incoop.oneconvex import upper_game_minimal

F = Fraction


def doc(n, entries, kind="general"):
    return {"n": n, "kind": kind, "values": [{"coalition": c, "value": v} for c, v in entries]}


def test_five_player_file(tmp_path):
    path = tmp_path / "five.json"
    entries = [([i + 1], str(v)) for i, v in enumerate([0, 1, 2, 1, 4])] + [([1, 2, 3, 4, 5], "10")]
    path.write_text(json.dumps(doc(5, entries, "minimal")))
    g = parse_game(path)
    assert isinstance(g, IncompleteGame) and g.is_minimal()
    assert total_excess(g) == 2


def test_exact_values():
    g = from_document(doc(1, [([1], "7/5")]))
    assert g.worth == F(7, 5)


def test_missing_singleton_under_minimal():
    with pytest.raises(KShapeError) as info:
        from_document(doc(2, [([1], "0"), ([1, 2], "1")], "minimal"))
    assert info.value.exit_code == 4


def test_extra_coalition_under_minimal():
    entries = [([1], "0"), ([2], "0"), ([3], "0"), ([1, 2], "0"), ([1, 2, 3], "1")]
    with pytest.raises(KShapeError):
        from_document(doc(3, entries, "minimal"))


def test_upper_vector_shape():
    ok = doc(3, [([1, 2], "1/2"), ([1, 3], "1/2"), ([2, 3], "1/2"), ([1, 2, 3], "1")], "upper-vector")
    assert from_document(ok).has_upper_vector()
    bad = doc(3, [([1, 2], "1/2"), ([1, 2, 3], "1")], "upper-vector")
    with pytest.raises(KShapeError):
        from_document(bad)


def test_complete_kind():
    entries = [([1], "0"), ([2], "0"), ([1, 2], "1")]
    assert isinstance(from_document(doc(2, entries, "complete")), CompleteGame)
    with pytest.raises(KShapeError):
        from_document(doc(2, entries[:2], "complete"))


def test_duplicate_coalition():
    with pytest.raises(DuplicateCoalition) as info:
        from_document(doc(2, [([1], "0"), ([1], "1")]))
    assert info.value.exit_code == 5


@pytest.mark.parametrize(
    "bad",
    [
        [],
        {"n": 0, "values": []},
        {"n": 2, "kind": "odd", "values": []},
        {"n": 2, "values": "x"},
        doc(2, [([2, 1], "1")]),
        doc(2, [([3], "1")]),
        doc(2, [([1], 0.5)]),
        doc(2, [([1], "0.5")]),
        doc(2, [([1], True)]),
        doc(2, [([], "1")]),
        {"n": 2, "values": [{"coalition": [1]}]},
        {"n": True, "values": []},
    ],
)
def test_malformed_documents(bad):
    with pytest.raises(MalformedGameFile) as info:
        from_document(bad)
    assert info.value.exit_code == 3


def test_unreadable_and_invalid_json(tmp_path):
    with pytest.raises(MalformedGameFile):
        parse_game(tmp_path / "missing.json")
    with pytest.raises(MalformedGameFile):
        loads("{not json")


def test_kind_of():
    assert kind_of(IncompleteGame.minimal([0, 0], 1)) == "minimal"
    assert kind_of(CompleteGame.zero(2)) == "complete"
    assert kind_of(IncompleteGame(3, {7: 1, 3: 0, 5: 0, 6: 0, 1: 0})) == "upper-vector"
    assert kind_of(IncompleteGame(3, {7: 1, 3: 0})) == "general"


def test_document_order_and_format():
    d = to_document(upper_game_minimal(IncompleteGame.minimal([0, 1, 2], 5)))
    sizes = [len(e["coalition"]) for e in d["values"]]
    assert sizes == sorted(sizes)
    assert all(isinstance(e["value"], str) for e in d["values"])
    assert d["values"][0] == {"coalition": [1], "value": "0"}


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=1, max_value=5))
def test_round_trip(seed, n):
    rng = random.Random(seed)
    for g in (gen.complete_game(rng, n), gen.minimal_game(rng, n, "any"), gen.duv_game(rng, n)):
        assert loads(dumps(g)) == g


def test_write_and_parse(tmp_path):
    w = gen.one_convex_game(random.Random(2), 4)
    path = tmp_path / "w.json"
    write_game(path, w)
    assert parse_game(path) == w
    assert json.loads(path.read_text())["kind"] == "complete"
