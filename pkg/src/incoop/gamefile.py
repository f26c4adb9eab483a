"""JSON game files.

A game file is one JSON object::

    {"n": 3, "kind": "minimal",
     "values": [{"coalition": [1], "value": "0"}, ..., {"coalition": [1, 2, 3], "value": "1"}]}

``kind`` is ``complete``, ``minimal``, ``upper-vector`` or ``general``.
Coalitions are strictly increasing lists of 1-based players and values are
exact rationals written as ``"p/q"`` or integer strings. The empty coalition
may be omitted.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .core import (
    MAX_PLAYERS,
    CompleteGame,
    GameError,
    IncompleteGame,
    coalition,
    fmt,
    minimal_known,
    players,
    to_rational,
)

KINDS = ("complete", "minimal", "upper-vector", "general")


class GameFileError(GameError):
    exit_code = 3


class MalformedGameFile(GameFileError):
    exit_code = 3


class KShapeError(GameFileError):
    exit_code = 4


class DuplicateCoalition(GameFileError):
    exit_code = 5


def _value(raw, where: str):
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise MalformedGameFile(f"{where}: value must be a rational string such as \"7/5\", got {raw!r}")
    try:
        return to_rational(raw)
    except (GameError, TypeError) as exc:
        raise MalformedGameFile(f"{where}: {exc}") from None


def from_document(doc) -> Union[CompleteGame, IncompleteGame]:
    if not isinstance(doc, dict):
        raise MalformedGameFile("a game file must hold a JSON object")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= MAX_PLAYERS:
        raise MalformedGameFile(f"'n' must be an integer in 1..{MAX_PLAYERS}")
    kind = doc.get("kind", "general")
    if kind not in KINDS:
        raise MalformedGameFile(f"'kind' must be one of {', '.join(KINDS)}")
    entries = doc.get("values")
    if not isinstance(entries, list):
        raise MalformedGameFile("'values' must be a list")
    vals = {}
    for k, entry in enumerate(entries):
        where = f"values[{k}]"
        if not isinstance(entry, dict) or set(entry) != {"coalition", "value"}:
            raise MalformedGameFile(f"{where}: expected an object with 'coalition' and 'value'")
        members_ = entry["coalition"]
        if not isinstance(members_, list) or any(isinstance(p, bool) or not isinstance(p, int) for p in members_):
            raise MalformedGameFile(f"{where}: coalition must be a list of player numbers")
        if any(a >= b for a, b in zip(members_, members_[1:])):
            raise MalformedGameFile(f"{where}: coalition must be strictly increasing")
        if any(not 1 <= p <= n for p in members_):
            raise MalformedGameFile(f"{where}: players must lie in 1..{n}")
        mask = coalition(members_, n)
        if mask in vals:
            raise DuplicateCoalition(f"{where}: coalition {members_} appears twice")
        vals[mask] = _value(entry["value"], where)
    if vals.get(0, 0) != 0:
        raise MalformedGameFile("the empty coalition must have value 0")
    vals.setdefault(0, to_rational(0))
    game = IncompleteGame(n, vals)
    if kind == "complete":
        if not game.is_complete():
            raise KShapeError(f"kind 'complete' needs all {1 << n} coalitions, got {len(vals)}")
        return game.completed()
    if kind == "minimal" and not game.is_minimal():
        extra = sorted(game.known - minimal_known(n))
        missing = sorted(minimal_known(n) - game.known)
        raise KShapeError(
            "kind 'minimal' needs exactly the singletons and N"
            + (f"; missing {[list(players(m)) for m in missing]}" if missing else "")
            + (f"; unexpected {[list(players(m)) for m in extra]}" if extra else "")
        )
    if kind == "upper-vector" and not game.has_upper_vector():
        raise KShapeError("kind 'upper-vector' needs N and every coalition N minus one player")
    return game


def kind_of(game: Union[CompleteGame, IncompleteGame]) -> str:
    if isinstance(game, CompleteGame):
        return "complete"
    if game.is_minimal():
        return "minimal"
    if game.has_upper_vector():
        return "upper-vector"
    return "general"


def to_document(game: Union[CompleteGame, IncompleteGame]) -> dict:
    if isinstance(game, CompleteGame):
        items = [(m, game.values[m]) for m in range(1, 1 << game.n)]
    else:
        items = [(m, v) for m, v in game.values.items() if m]
    items.sort(key=lambda mv: (len(players(mv[0])), players(mv[0])))
    return {
        "n": game.n,
        "kind": kind_of(game),
        "values": [{"coalition": list(players(m)), "value": fmt(v)} for m, v in items],
    }


def dumps(game: Union[CompleteGame, IncompleteGame]) -> str:
    """The game-file text, one coalition per line."""
    doc = to_document(game)
    entries = ",\n".join("    " + json.dumps(e) for e in doc["values"])
    return f'{{\n  "n": {doc["n"]},\n  "kind": "{doc["kind"]}",\n  "values": [\n{entries}\n  ]\n}}\n'


def loads(text: str) -> Union[CompleteGame, IncompleteGame]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedGameFile(f"not valid JSON: {exc}") from None
    return from_document(doc)


def parse_game(path: Union[str, Path]) -> Union[CompleteGame, IncompleteGame]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedGameFile(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def write_game(path: Union[str, Path], game: Union[CompleteGame, IncompleteGame]) -> None:
    Path(path).write_text(dumps(game), encoding="utf-8")
