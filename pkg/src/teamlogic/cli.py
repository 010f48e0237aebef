"""``tlw``: command-line front end.

Exit codes: 0 when the evaluation is true or the claim holds, 1 when it is
false or the claim fails, 2 on usage, input or fragment errors. Results are
JSON on stdout (or ``--output``); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Iterable

from .closure import Cls, check_closure, in_class
from .definability import check_uniform, property_function, search_context
from .evaluate import EvaluationError
from .fragments import FragmentId, offending_subformula
from .golden import run_suite
from .modal import KripkeModel, ModelError, mextension, msat
from .parser import ParseError, parse
from .prop import entails, extension, sat
from .synth import Logic, SynthesisError, synthesize, verify_completeness
from .teams import Domain, DomainTooLarge, Property


class UsageError(Exception):
    pass


def _load_json(text: str) -> Any:
    """Inline JSON, or the contents of a file when ``text`` names one."""
    if not text.lstrip().startswith(("[", "{")) and Path(text).is_file():
        text = Path(text).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"invalid JSON: {e}") from None


def _domain(args) -> Domain:
    if args.domain is None:
        raise UsageError("--domain is required")
    try:
        return Domain.parse(args.domain)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _formula(text: str | None, frag: str | None):
    if text is None:
        raise UsageError("--formula is required")
    f = parse(text)
    if frag:
        bad = offending_subformula(f, FragmentId.lookup(frag))
        if bad is not None:
            raise UsageError(f"formula is outside {frag}: offending subformula {bad}")
    return f


def _model(args) -> KripkeModel:
    return KripkeModel.from_json(_load_json(args.model))


def _team(X: Domain, text: str) -> int:
    data = _load_json(text)
    if not isinstance(data, list):
        raise UsageError("a team is a JSON array of valuations")
    try:
        return X.team(data)
    except (ValueError, TypeError, AttributeError) as e:
        raise UsageError(f"bad team: {e}") from None


def _property(X: Domain, text: str) -> Property:
    data = _load_json(text)
    if not isinstance(data, list) or not all(isinstance(t, list) for t in data):
        raise UsageError("a property is a JSON array of teams")
    try:
        return X.property_from_json(data)
    except (ValueError, TypeError, AttributeError) as e:
        raise UsageError(f"bad property: {e}") from None


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("TLW_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"TLW_SEED must be an integer, got {env!r}") from None
    return 0


# commands: each returns (exit code, JSON value, optional JSON Lines records)


def cmd_eval(args):
    f = _formula(args.formula, args.fragment)
    if args.model:
        M = _model(args)
        names = _load_json(args.team)
        if not isinstance(names, list):
            raise UsageError("a modal team is a JSON array of world names")
        value = msat(f, M, [str(w) for w in names])
    else:
        X = _domain(args)
        value = sat(f, _team(X, args.team), X)
    return (0 if value else 1), {"sat": value}, None


def cmd_extension(args):
    f = _formula(args.formula, args.fragment)
    if args.model:
        M = _model(args)
        P = mextension(f, M)
        teams = [M.team_names(t) for t in P]
    else:
        X = _domain(args)
        P = extension(f, X)
        teams = X.property_json(P)
    return 0, {"formula": str(f), "size": len(P), "extension": teams}, None


def cmd_closure(args):
    X = _domain(args)
    if args.property is not None:
        P = _property(X, args.property)
    else:
        P = extension(_formula(args.formula, args.fragment), X)
    rep = check_closure(P)
    out = rep.to_json(X.team_json)
    out.pop("points")
    code = 0
    if args.cls:
        member = in_class(P, args.cls)
        out["class"] = Cls.lookup(args.cls).value
        out["member"] = member
        code = 0 if member else 1
    return code, out, None


def cmd_entails(args):
    X = _domain(args)
    premises = [parse(p) for p in args.premise or []]
    ok, w = entails(premises, _formula(args.formula, args.fragment), X)
    return (0 if ok else 1), {"entails": ok, "witness": None if w is None else X.team_json(w)}, None


def cmd_synth(args):
    X = _domain(args)
    logic = Logic.lookup(args.logic)
    P = _property(X, args.property)
    try:
        f = synthesize(logic, X, P)
    except SynthesisError as e:
        return 1, {"logic": logic.value, "error": str(e)}, None
    ext = extension(f, X)
    ok = ext == P and offending_subformula(f, logic.fragment) is None
    return (0 if ok else 1), {"logic": logic.value, "formula": str(f), "verified": ok}, None


def cmd_verify(args):
    X = _domain(args)
    rep = verify_completeness(args.logic, X, mode=args.mode, k=args.k, seed=_seed(args), jobs=args.jobs)
    out = rep.to_json()
    return (0 if rep.ok else 1), out, out["failures"]


def cmd_unidef(args):
    X = _domain(args)
    ok, witness = check_uniform(args.context, property_function(args.op), args.cls, X)
    out = {
        "context": args.context,
        "op": property_function(args.op).name,
        "class": Cls.lookup(args.cls).value,
        "verified_at": list(X.names),
        "uniform": ok,
        "witness": None if witness is None else [X.property_json(P) for P in witness],
    }
    return (0 if ok else 1), out, None


def cmd_search(args):
    X = _domain(args)
    c = search_context(args.op, args.cls, X, args.fragment or "CONDEP", args.depth)
    out = {
        "op": property_function(args.op).name,
        "class": Cls.lookup(args.cls).value,
        "verified_at": list(X.names),
        "depth": args.depth,
        "context": None if c is None else str(c),
    }
    return (0 if c is not None else 1), out, None


def cmd_counterexamples(args):
    checks = run_suite(args.suite)
    records = [c.to_json() for c in checks]
    ok = all(c.passed for c in checks)
    out = {"suite": args.suite, "total": len(checks), "passed": sum(c.passed for c in checks), "checks": records}
    return (0 if ok else 1), out, records


COMMANDS = {
    "eval": cmd_eval,
    "extension": cmd_extension,
    "closure": cmd_closure,
    "entails": cmd_entails,
    "synth": cmd_synth,
    "verify": cmd_verify,
    "unidef": cmd_unidef,
    "search": cmd_search,
    "counterexamples": cmd_counterexamples,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--domain", help="comma-separated atoms, e.g. p,q")
    common.add_argument("--format", choices=("json", "jsonl"), default="json")
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--fragment", help="reject formulas outside this fragment")

    p = argparse.ArgumentParser(prog="tlw", description="team semantics toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="decide t |= formula")
    s.add_argument("--formula")
    s.add_argument("--team", required=True, help="JSON array of valuations (or world names with --model)")
    s.add_argument("--model", help="Kripke model JSON file")

    s = sub.add_parser("extension", parents=[common], help="all teams satisfying a formula")
    s.add_argument("--formula")
    s.add_argument("--model")

    s = sub.add_parser("closure", parents=[common], help="closure report of a property or formula")
    s.add_argument("--property", help="JSON array of teams, or a file containing one")
    s.add_argument("--formula")
    s.add_argument("--class", dest="cls", choices=[c.value for c in Cls])

    s = sub.add_parser("entails", parents=[common], help="premises |= formula over the domain")
    s.add_argument("--premise", action="append")
    s.add_argument("--formula")

    s = sub.add_parser("synth", parents=[common], help="characteristic formula of a property")
    s.add_argument("--logic", required=True)
    s.add_argument("--property", required=True)

    s = sub.add_parser("verify", parents=[common], help="completeness sweep")
    s.add_argument("--logic", required=True)
    s.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    s.add_argument("--k", type=int, default=500)
    s.add_argument("--seed", type=int)
    s.add_argument("--jobs", type=int, default=1)

    s = sub.add_parser("unidef", parents=[common], help="check a context against a connective")
    s.add_argument("--context", required=True)
    s.add_argument("--op", required=True, help="or, gor, lor, lgor, ne, id, a lifted connective, or a context")
    s.add_argument("--class", dest="cls", required=True, choices=[c.value for c in Cls])

    s = sub.add_parser("search", parents=[common], help="bounded search for a defining context")
    s.add_argument("--op", required=True)
    s.add_argument("--class", dest="cls", required=True, choices=[c.value for c in Cls])
    s.add_argument("--depth", type=int, default=3)

    s = sub.add_parser("counterexamples", parents=[common], help="replay the reference judgments")
    s.add_argument("--suite", default="all")
    return p


def _emit(args, value: Any, records: Iterable | None) -> None:
    if args.format == "jsonl":
        rows = records if records is not None else [value]
        text = "".join(json.dumps(r) + "\n" for r in rows)
    else:
        text = json.dumps(value, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        code, value, records = COMMANDS[args.command](args)
        _emit(args, value, records)
        return code
    except (UsageError, ParseError, EvaluationError, ModelError, DomainTooLarge, KeyError, ValueError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"tlw {args.command}: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
