"""Reference judgments replayed through the evaluators.

Every check recomputes its verdict (satisfaction, entailment, class
membership) with the library and compares it with the known answer; no
verdict is stored as a constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from .closure import check_closure, in_class
from .definability import GLOBAL_OR, SPLIT_OR
from .modal import gap_model, msat
from .parser import parse
from .prop import entails, extension, sat
from .teams import Domain, Property


@dataclass
class Check:
    id: str
    suite: str
    topic: str
    claim: str
    expected: object
    observed: object
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.expected == self.observed

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "suite": self.suite,
            "topic": self.topic,
            "claim": self.claim,
            "expected": self.expected,
            "observed": self.observed,
            "passed": self.passed,
            **({"detail": self.detail} if self.detail else {}),
        }


def _team(X: Domain, *vals: str) -> int:
    """Team from valuation names like ``"pq"``, ``"p~q"`` (every atom of X listed in order)."""
    t = 0
    for name in vals:
        code, i, k = 0, 0, 0
        while k < len(name):
            neg = name[k] == "~"
            k += neg
            atom = X.names[i]
            if not name.startswith(atom, k):
                raise ValueError(f"bad valuation name {name!r} for {X.names}")
            k += len(atom)
            if not neg:
                code |= 1 << i
            i += 1
        if i != X.n:
            raise ValueError(f"valuation {name!r} does not cover {X.names}")
        t |= 1 << code
    return t


def _sat_check(cid, suite, topic, X, team_names, text, expected) -> Check:
    X = Domain.parse(X)
    t = _team(X, *team_names)
    f = parse(text)
    shown = "{" + ", ".join(X.valuation_name(c) for c in range(X.points) if t >> c & 1) + "}"
    return Check(cid, suite, topic, f"{shown} {'|=' if expected else '|/='} {f}", expected, sat(f, t, X))


def semantics_checks() -> Iterator[Check]:
    s, topic = "semantics", "basic judgments"
    yield _sat_check("split-or-pq", s, topic, "p,q", ["pq", "p~q"], r"p \/ q", True)
    yield _sat_check("might-q", s, topic, "p,q", ["pq", "p~q"], "might q", True)
    X = Domain.parse("p,q,r")
    team = X.team_from_strings("011", "010", "100", "100")
    for cid, text, expected in (("dep-p-q", "=(p; q)", True), ("dep-p-r", "=(p; r)", False)):
        yield Check(cid, s, "dependence atoms", f"four-row team {'|=' if expected else '|/='} {text}",
                    expected, sat(parse(text), team, X))
    yield _sat_check("gor-holds", s, "global disjunction", "p,q", ["pq", "p~q"], r"p \\/ q", True)
    yield _sat_check("gor-fails", s, "global disjunction", "p,q", ["~pq", "~p~q"], r"p \\/ q", False)
    yield _sat_check("split-or-flat-neg", s, topic, "p,q", ["p~q"], r"p \/ ~p", True)


def union_checks() -> Iterator[Check]:
    """Formulas true on two teams but false on their union."""
    cases = (
        ("might-impl", "might p -> q", ["pq"], ["~p~q"]),
        ("dep-q-p", "=(q; p)", ["pq"], ["~pq"]),
        ("gor-excluded-middle", r"p \\/ !p", ["pq"], ["~pq"]),
        ("lgor-excluded-middle", r"p \\/. !p", ["pq"], ["~pq"]),
    )
    X = Domain.parse("p,q")
    for cid, text, a, b in cases:
        f = parse(text)
        s, t = _team(X, *a), _team(X, *b)
        observed = (sat(f, s, X), sat(f, t, X), sat(f, s | t, X))
        yield Check(cid, "union", "failures of union closure",
                    f"{f}: true on {a} and on {b}, false on their union", [True, True, False], list(observed))
        rep = check_closure(extension(f, X))
        yield Check(cid + "-report", "union", "failures of union closure",
                    f"closure report of {f} says not union closed", False, rep.union_closed)


def convexity_chain_checks() -> Iterator[Check]:
    """Convex formulas whose disjunctions have a gap s < u < t."""
    chains = (
        ("split-or-chain", "p,r", r"(((p /\ ne) \/ (~p /\ ne)) -> bot) /\ might r", r"{} \/ {}",
         [["~pr"], ["~pr", "p~r"], ["~pr", "p~r", "pr"]]),
        ("gor-chain", "p,q", None, r"p \\/ might q", [["p~q"], ["p~q", "~p~q"], ["p~q", "~p~q", "pq"]]),
    )
    for cid, X, phi, shape, teams in chains:
        X = Domain.parse(X)
        if phi is not None:
            f = parse(shape.format(f"({phi})", f"({phi})"))
            yield Check(cid + "-operand-convex", "convexity", "disjunctions breaking convexity",
                        f"{phi} is convex", True, in_class(extension(parse(phi), X), "C"))
        else:
            f = parse(shape)
        observed = [sat(f, _team(X, *t), X) for t in teams]
        yield Check(cid, "convexity", "disjunctions breaking convexity",
                    f"{f} along the chain {teams}", [True, False, True], observed)
    X = Domain.parse("p,q")
    yield Check("might-both-convex", "convexity", "epistemic might", "might p /\\ might ~p is convex",
                True, in_class(extension(parse("might p /\\ might ~p"), X), "C"))


def substitution_checks() -> Iterator[Check]:
    s, topic = "substitution", "failures of uniform substitution"
    cases = (
        ("split-idempotent", "p", [r"p \/ p"], "p", True, None),
        ("gor-split-idempotent", "p", [r"(p \\/ !p) \/ (p \\/ !p)"], r"p \\/ !p", False, ["p", "~p"]),
        ("distributive", "p,q,r", [r"p /\ (q \/ r)"], r"(p /\ q) \/ (p /\ r)", True, None),
        ("might-distributive", "q,r", [r"might top /\ (q \/ r)"], r"(might top /\ q) \/ (might top /\ r)",
         False, ["q~r"]),
    )
    for cid, X, prem, concl, expected, witness in cases:
        X = Domain.parse(X)
        ok, w = entails([parse(p) for p in prem], parse(concl), X)
        yield Check(cid, s, topic, f"{', '.join(prem)} {'|=' if expected else '|/='} {concl}", expected, ok)
        if witness is not None:
            yield Check(cid + "-witness", s, topic, f"least counterexample team is {witness}",
                        _team(X, *witness), w)


def modal_checks() -> Iterator[Check]:
    M = gap_model()
    f = parse(r"gdia (((might p /\ might ~p) -> bot) /\ might r)")
    g = parse(r"gdia (=(p) /\ might r)")
    for cid, team, expected in (
        ("gdia-low", ["w_npr"], True),
        ("gdia-middle", ["w_pnr", "w_npr"], False),
        ("gdia-top", ["w_pr", "w_pnr", "w_npr"], True),
    ):
        yield Check(cid, "modal", "global diamond breaks convexity",
                    f"{team} {'|=' if expected else '|/='} {f}", expected, msat(f, M, team))
        yield Check(cid + "-dep", "modal", "global diamond breaks convexity",
                    f"same judgment for {g}", expected, msat(g, M, team))
    t = M.team(["w_pnr", "w_npr"])
    yield Check("gdia-successors", "modal", "successor teams",
                "the successors of {w_pnr, w_npr} are {w_pnr} and {w_pnr, w_npr}",
                [["w_pnr"], ["w_pnr", "w_npr"]], [M.team_names(s) for s in M.successors(t)])


def class_checks() -> Iterator[Check]:
    """Convex property pairs whose split or global disjunction is not convex."""
    X = Domain.parse("p,q")
    v1, v2, v3 = 1 << 3, 1 << 1, 1 << 2  # v_pq, v_p~q, v_~pq
    pairs = (
        ("convex-split-or", SPLIT_OR, [v1, v2 | v3], [v1]),
        ("convex-global-or", GLOBAL_OR, [v1 | v2 | v3], [v1]),
    )
    for cid, op, P, Q in pairs:
        P, Q = Property.from_teams(P, X.points), Property.from_teams(Q, X.points)
        R = op(X, P, Q)
        rep = check_closure(R)
        yield Check(cid, "classes", "disjunctions leave the convex class",
                    f"P, Q convex and P {op.name} Q = {{{{v1}}, {{v1, v2, v3}}}} is not convex",
                    [True, True, [v1, v1 | v2 | v3], False],
                    [in_class(P, "C"), in_class(Q, "C"), R.teams(), rep.convex],
                    {"convex_witness": list(rep.convex_witness) if rep.convex_witness else None})


SUITES: dict[str, Callable[[], Iterator[Check]]] = {
    "semantics": semantics_checks,
    "union": union_checks,
    "convexity": convexity_chain_checks,
    "substitution": substitution_checks,
    "modal": modal_checks,
    "classes": class_checks,
}


def run_suite(name: str = "all") -> list[Check]:
    if name == "all":
        return [c for fn in SUITES.values() for c in fn()]
    try:
        return list(SUITES[name]())
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; known: all, {', '.join(SUITES)}") from None
