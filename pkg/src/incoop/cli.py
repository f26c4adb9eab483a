"""Command-line front end.

Exit codes: 0 success, 1 a mathematical negative (not extendable, not
1-convex, not a member, an axiom fails), 2 usage error, 3 malformed game
file, 4 known coalitions of the wrong shape for the declared kind,
5 duplicate coalition.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence, Union

from . import oracle
from .axioms import AXIOMS, axioms_for, check_axiom, random_suite
from .core import (
    CompleteGame,
    GameError,
    IncompleteGame,
    NotExtendableError,
    fmt,
    label,
    to_rational,
    total_excess,
    upper_vector,
)
from .gamefile import GameFileError, dumps, loads, parse_game, to_document
from .generators import seeded
from .oneconvex import (
    NotAMember,
    centroid_games,
    centroid_rays,
    condition_slacks,
    decompose,
    describe,
    is_extendable,
    is_one_convex,
    upper_game,
)
from .values import CONCEPTS, compute_value

Game = Union[CompleteGame, IncompleteGame]

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2
BUNDLED = ("example3", "example5")


class Negative(Exception):
    """A well-formed question whose answer is no; maps to exit code 1."""


def load(spec: str) -> Game:
    """A game file path, or the name of a bundled instance."""
    if not Path(spec).exists() and spec in BUNDLED:
        return loads(resources.files("incoop").joinpath("data", f"{spec}.json").read_text(encoding="utf-8"))
    return parse_game(spec)


def _vector(x) -> str:
    return " ".join(fmt(v) for v in x)


def _game_text(g: Game) -> str:
    doc = to_document(g)
    lines = []
    for e in doc["values"]:
        lines.append("{" + ",".join(map(str, e["coalition"])) + "} " + e["value"])
    return "\n".join(lines)


def _incomplete(g: Game) -> IncompleteGame:
    if isinstance(g, CompleteGame):
        raise GameError("this command needs an incomplete game")
    return g


def _extendable(g: IncompleteGame) -> tuple[bool, str]:
    try:
        ok = is_extendable(g)
    except GameError:
        ok = oracle.lp_extendable(g)  # any other shape: decide by LP
        return ok, "" if ok else "no 1-convex extension (LP infeasible)"
    if ok:
        return True, ""
    if g.is_minimal():
        return False, f"Delta < 0 (Delta = {fmt(total_excess(g))})"
    return False, "b(N) < v(N) or a known coalition exceeds v(N) - b(N \\ S)"


# -- commands ---------------------------------------------------------------------


def cmd_check(args) -> tuple[dict, str]:
    g = load(args.game)
    if isinstance(g, CompleteGame):
        per, total = condition_slacks(g)
        bad = [label(S) for S, s in per.items() if s < 0]
        ok = is_one_convex(g)
        doc = {"one_convex": ok, "violated": bad, "b(N) - v(N)": fmt(total)}
        text = "1-convex" if ok else "not 1-convex: " + (
            "b(N) < v(N)" if total < 0 else "violated at " + ", ".join(bad)
        )
        if not ok:
            raise Negative(json.dumps(doc) if args.json else text)
        return doc, text
    ok, reason = _extendable(g)
    doc = {"extendable": ok}
    if g.is_minimal():
        doc["Delta"] = fmt(total_excess(g))
    if not ok:
        doc["reason"] = reason
        raise Negative(json.dumps(doc) if args.json else "not extendable: " + reason)
    return doc, "extendable" + (f" (Delta = {doc['Delta']})" if "Delta" in doc else "")


def _require_extendable(g: IncompleteGame) -> None:
    ok, reason = _extendable(g)
    if not ok:
        raise NotExtendableError(reason)


def cmd_upper(args) -> tuple[dict, str]:
    g = _incomplete(load(args.game))
    _require_extendable(g)
    ub = upper_game(g)
    return {"upper_game": to_document(ub), "b": [fmt(x) for x in upper_vector(ub)]}, _game_text(ub)


def cmd_extremes(args) -> tuple[dict, str]:
    g = _incomplete(load(args.game))
    _require_extendable(g)
    d = describe(g)
    rays = sorted(d.ray_index_set)
    doc = {
        "extreme_games": [to_document(e) for e in d.extreme_games],
        "ray_coalitions": [list(map(int, label(T)[1:-1].split(","))) for T in rays],
    }
    parts = []
    for k, e in enumerate(d.extreme_games, 1):
        parts.append(f"# extreme game {k}\n{_game_text(e)}")
    parts.append("# rays e_T for T in: " + (" ".join(label(T) for T in rays) or "(none)"))
    return doc, "\n".join(parts)


def cmd_centroid(args) -> tuple[dict, str]:
    g = _incomplete(load(args.game))
    _require_extendable(g)
    d = describe(g)
    vt, et = centroid_games(d), centroid_rays(d)
    doc = {"centroid_games": to_document(vt), "centroid_rays": to_document(et)}
    return doc, f"# centroid of extreme games\n{_game_text(vt)}\n# centroid of rays\n{_game_text(et)}"


def cmd_value(args) -> tuple[dict, str]:
    g = load(args.game)
    if isinstance(g, IncompleteGame) and CONCEPTS[args.concept].domain == "incomplete":
        _require_extendable(g)
    alpha = to_rational(args.alpha) if args.alpha is not None else None
    report = compute_value(args.concept, g, alpha)
    doc = {"concept": args.concept, "payoff": [fmt(x) for x in report.payoff]}
    if alpha is not None:
        doc["alpha"] = fmt(alpha)
    return doc, _vector(report.payoff)


def cmd_decompose(args) -> tuple[dict, str]:
    g = _incomplete(load(args.game))
    _require_extendable(g)
    w = load(args.extension)
    if isinstance(w, IncompleteGame):
        w = w.completed()
    try:
        cert = decompose(g, w)
    except NotAMember as exc:
        doc = {
            "member": False,
            "requirement": exc.requirement,
            "where": None if exc.where is None else _where(exc),
            "value": fmt(exc.value),
        }
        raise Negative(json.dumps(doc) if args.json else f"not a member: {exc}") from None
    doc = {
        "member": True,
        "alphas": {str(i + 1): fmt(a) for i, a in cert.alphas.items()},
        "betas": {label(T): fmt(b) for T, b in cert.betas.items()},
    }
    lines = ["alpha " + " ".join(f"{i}:{a}" for i, a in doc["alphas"].items())]
    lines += [f"beta {T} {b}" for T, b in doc["betas"].items() if b != "0"]
    return doc, "\n".join(lines)


def _where(exc: NotAMember) -> str:
    if exc.requirement == "alpha-sign":
        return f"player {exc.where + 1}"
    return label(exc.where)


def cmd_axioms(args) -> tuple[dict, str]:
    concept = CONCEPTS[args.value]
    names = args.axiom or axioms_for(concept.domain)
    for name in names:
        if name not in AXIOMS:
            raise GameError(f"unknown axiom {name!r}")
    rng = seeded(args.seed)
    ns = (2, 3, 4) if concept.domain == "complete" else (3, 4, 5)
    results = []
    for name in names:
        ax = AXIOMS[name]
        suite = random_suite(concept.domain, ax.arity, rng, args.samples, ns)
        verdict = check_axiom(name, args.value, suite)
        entry = {"axiom": name, "holds": verdict.holds, "checked": verdict.checked}
        if verdict.counterexample is not None:
            cx = verdict.counterexample
            entry["counterexample"] = {
                "games": [to_document(x) for x in cx.games],
                "players": [p + 1 for p in cx.players],
                "lhs": oracle.plain(cx.lhs),
                "rhs": oracle.plain(cx.rhs),
                "detail": cx.detail,
            }
        results.append(entry)
    lines = []
    for e in results:
        line = f"{'holds' if e['holds'] else 'fails':<6} {e['axiom']}"
        if not e["holds"]:
            cx = e["counterexample"]
            line += f"  ({cx['detail']}; lhs {json.dumps(cx['lhs'])}, rhs {json.dumps(cx['rhs'])})"
        lines.append(line)
    doc = {"value": args.value, "seed": args.seed, "results": results}
    text = "\n".join(lines)
    if not all(e["holds"] for e in results):
        raise Negative(json.dumps(doc, indent=2) if args.json else text)
    return doc, text


def cmd_verify_claims(args) -> tuple[object, str]:
    game = load(args.game) if args.game else None
    reports = oracle.verify_claims(game, seed=args.seed, samples=args.samples)
    return [r.to_json() for r in reports], oracle.report_text(reports).rstrip("\n")


def cmd_emit(args) -> tuple[dict, str]:
    g = load(args.game)
    return to_document(g), dumps(g).rstrip("\n")


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="incoop", description="1-convex extensions and values of incomplete cooperative games"
    )
    parser.add_argument("--json", action="store_true", help="print a JSON document instead of text")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def game_command(name: str, help_: str, fn):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.add_argument("game", help=f"game file, or a bundled instance: {', '.join(BUNDLED)}")
        p.set_defaults(fn=fn)
        return p

    game_command("check", "extendability (incomplete) or 1-convexity (complete)", cmd_check)
    game_command("upper", "the upper game", cmd_upper)
    game_command("extremes", "extreme games and ray coalitions", cmd_extremes)
    game_command("centroid", "centroids of the extreme games and of the rays", cmd_centroid)
    game_command("emit", "re-emit the game in canonical game-file form", cmd_emit)
    p = game_command("value", "a value concept", cmd_value)
    p.add_argument("--concept", required=True, choices=sorted(CONCEPTS))
    p.add_argument("--alpha", help="ray weight p/q for the conic values")
    p = game_command("decompose", "certificate for an extension", cmd_decompose)
    p.add_argument("--extension", required=True, help="game file of a complete extension")

    p = sub.add_parser("axioms", parents=[common], help="check axioms for a value on a seeded random suite")
    p.add_argument("--value", required=True, choices=sorted(CONCEPTS))
    p.add_argument("--axiom", action="append", help="axiom to check (repeatable); default all for the domain")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=10, help="games per player count")
    p.set_defaults(fn=cmd_axioms)

    p = sub.add_parser("verify-claims", parents=[common], help="compare catalogued statements with direct computation")
    p.add_argument("game", nargs="?", help="optional game checked first by every applicable claim")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=4, help="random instances per player count")
    p.set_defaults(fn=cmd_verify_claims)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, text = args.fn(args)
    except Negative as neg:
        print(str(neg))
        return EXIT_NEGATIVE
    except GameFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except NotExtendableError as exc:
        print(f"not extendable: {exc}")
        return EXIT_NEGATIVE
    except GameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(doc, indent=2) if args.json else text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
