"""Characteristic formulas: for a property P over a finite domain X, build a
formula of a chosen logic whose extension over X is exactly P.

Building blocks (each has a contract checked over all teams in the tests):

* ``chi_v``: a valuation formula, true on a team iff it is within {v};
* ``chi_t``: true on s iff s is within t;
* ``chi_U``: true on t iff t includes some member of P;
* ``chi_D``: true on t iff t is included in some member of P;
* ``gamma``: true on t iff |t| <= n; ``xi``: true on s iff t is not within s;
* ``chi_F``: true on t iff t is within the union of P.

A convex P is the intersection of its down-set and up-set, so
``chi_D /\\ chi_U`` defines it; a convex union-closed P is also
``chi_F /\\ chi_U``.
"""

from __future__ import annotations

import enum
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Iterator, Sequence

from . import kernels
from .closure import Cls, mask_in_class, random_property
from .formula import (
    BOT,
    NBOT,
    NONEMPTY,
    TOP,
    And,
    Atom,
    Dep,
    Formula,
    Impl,
    LaxSplitOr,
    Might,
    Neg,
    SplitOr,
    big_and,
    big_lax_global_or,
    big_or,
    fold,
    neg_int,
)
from .fragments import FragmentId, offending_subformula
from .prop import extension_int
from .teams import Domain, Property, all_properties, bits

MAX_LITERAL_CONJUNCTS = 4096
MAX_CONDEP_ATOMS = 3


class SynthesisError(ValueError):
    pass


class Logic(str, enum.Enum):
    """Target logics. ``PL_NE`` uses the flat-and-upward construction,
    ``PL_NE_DISJ`` the disjunction of nonempty valuation blocks."""

    CONDEP = "CONDEP"
    CONINQ = "CONINQ"
    PLIM = "PLIM"
    PL_NE = "PL_NE"
    PL_NE_DISJ = "PL_NE_DISJ"

    @classmethod
    def lookup(cls, name: "str | Logic") -> "Logic":
        key = str(getattr(name, "value", name)).upper()
        try:
            return cls(key)
        except ValueError:
            raise KeyError(f"unknown logic {name!r}; known: {', '.join(x.value for x in cls)}") from None

    @property
    def fragment(self) -> FragmentId:
        return FragmentId.PL_NE if self in (Logic.PL_NE, Logic.PL_NE_DISJ) else FragmentId(self.value)

    @property
    def cls(self) -> Cls:
        return Cls.CU if self in (Logic.PL_NE, Logic.PL_NE_DISJ) else Cls.C


@dataclass(frozen=True)
class Flavor:
    """How a logic spells negation and the might operator."""

    neg: Callable[[Formula], Formula]
    might: Callable[[Formula], Formula]


def _might_by_ne(f: Formula) -> Formula:
    return SplitOr(And(f, NONEMPTY), TOP)


FLAT_NEG = Flavor(Neg, Might)
INT_NEG = Flavor(neg_int, Might)
NE_FLAVOR = Flavor(Neg, _might_by_ne)


def flavor(logic: Logic | str) -> Flavor:
    logic = Logic.lookup(logic)
    if logic is Logic.CONDEP:
        return FLAT_NEG
    if logic in (Logic.CONINQ, Logic.PLIM):
        return INT_NEG
    return NE_FLAVOR


def _domain(X) -> Domain:
    return Domain.parse(X)


def _check_property(P: Property, X: Domain) -> None:
    if P.points != X.points:
        raise SynthesisError(f"property over {P.points} points used with a domain of {X.points} valuations")


# valuation and team formulas ------------------------------------------------


def chi_v(v: int, X: Domain | str, neg: Callable[[Formula], Formula] = Neg) -> Formula:
    """Conjunction of the literals true at valuation code ``v``; top when X is empty."""
    X = _domain(X)
    if not 0 <= v < X.points:
        raise SynthesisError(f"valuation code {v} is not over {X.names}")
    lits = [Atom(a) if v >> i & 1 else neg(Atom(a)) for i, a in enumerate(X.names)]
    return big_and(lits)


def classical_or(neg: Callable[[Formula], Formula]) -> Callable[[Formula, Formula], Formula]:
    """The disjunction defined from a negation: not(not a and not b)."""
    return lambda a, b: neg(And(neg(a), neg(b)))


def chi_seq(codes: Sequence[int], X: Domain, neg: Callable[[Formula], Formula] = Neg) -> Formula:
    return fold(classical_or(neg), [chi_v(v, X, neg) for v in codes], BOT)


def chi_t(t: int, X: Domain | str, neg: Callable[[Formula], Formula] = Neg) -> Formula:
    """Classical disjunction of the valuation formulas of ``t``; bot for the empty team."""
    X = _domain(X)
    if t < 0 or t >> X.points:
        raise SynthesisError(f"team mask {t} is not over {X.names}")
    return chi_seq(list(bits(t)), X, neg)


# upward part ------------------------------------------------------------------


def minimal_transversals(members: Sequence[int], m: int) -> list[int]:
    """Inclusion-minimal point sets meeting every (nonempty) member, ascending."""
    def hits(S: int) -> bool:
        return all(S & s for s in members)

    out = []
    for S in range(1, 1 << m):
        if hits(S) and all(not hits(S & ~(1 << w)) for w in bits(S)):
            out.append(S)
    return out


def chi_U(P: Property, X: Domain | str, fl: Flavor = FLAT_NEG) -> Formula:
    """True on t iff some member of P is included in t.

    One might-conjunct per minimal transversal S of P: a team meets every
    transversal iff it includes a member.
    """
    X = _domain(X)
    _check_property(P, X)
    if not P:
        raise SynthesisError("the upward formula needs a nonempty property")
    if 0 in P:
        return TOP
    return big_and(fl.might(chi_t(S, X, fl.neg)) for S in minimal_transversals(list(P), X.points))


def chi_U_literal(P: Property, X: Domain | str, fl: Flavor = FLAT_NEG, cap: int = MAX_LITERAL_CONJUNCTS) -> Formula:
    """The undeduplicated form: one conjunct per choice of a valuation from each member."""
    X = _domain(X)
    _check_property(P, X)
    if not P:
        raise SynthesisError("the upward formula needs a nonempty property")
    members = [list(bits(t)) for t in P]
    count = 1
    for ms in members:
        count *= len(ms)
    if count > cap:
        raise SynthesisError(f"{count} conjuncts exceed the cap of {cap}")
    return big_and(fl.might(chi_seq(choice, X, fl.neg)) for choice in product(*members))


# downward part ----------------------------------------------------------------


def maximal_members(P: Property) -> list[int]:
    members = list(P)
    return [s for s in members if not any(s != t and s & ~t == 0 for t in members)]


def gamma(n: int, X: Domain | str, lax: bool = False) -> Formula:
    """True on t iff |t| <= n: bot for n = 0, else n disjuncts of constancy atoms."""
    X = _domain(X)
    if n < 0:
        raise SynthesisError("gamma needs n >= 0")
    if n == 0:
        return BOT
    g1 = big_and(Dep((), Atom(a)) for a in X.names)
    return fold(LaxSplitOr if lax else SplitOr, [g1] * n, BOT)


def xi(t: int, X: Domain | str, lax: bool = False, neg: Callable[[Formula], Formula] = Neg) -> Formula:
    """True on s iff t is not included in s."""
    X = _domain(X)
    if not t:
        raise SynthesisError("xi is undefined for the empty team")
    rest = ((1 << X.points) - 1) & ~t
    op = LaxSplitOr if lax else SplitOr
    return op(gamma(t.bit_count() - 1, X, lax), chi_t(rest, X, neg))


def xi_prime(t: int, X: Domain | str) -> Formula:
    return xi(t, X, lax=True)


def chi_D(P: Property, X: Domain | str, logic: Logic | str, antichain: bool = False) -> Formula:
    """True on t iff t is included in some member of P, in the given logic."""
    X = _domain(X)
    _check_property(P, X)
    logic = Logic.lookup(logic)
    if not P:
        raise SynthesisError("the downward formula needs a nonempty property")
    fl = flavor(logic)
    members = maximal_members(P) if antichain else list(P)
    if logic is Logic.CONINQ:
        return big_lax_global_or(chi_t(s, X, fl.neg) for s in members)
    if logic is Logic.PLIM:
        first, *others = members
        guard = big_and(fl.might(fl.neg(chi_t(s, X, fl.neg))) for s in others)
        return Impl(guard, chi_t(first, X, fl.neg))
    if logic is Logic.CONDEP:
        if X.n > MAX_CONDEP_ATOMS:
            raise SynthesisError(f"the dependence construction is materialized for at most {MAX_CONDEP_ATOMS} atoms")
        below = kernels.down_closure(P.mask, X.points)
        outside = ((1 << (1 << X.points)) - 1) & ~below
        return big_and(xi_prime(u, X) for u in bits(outside))
    raise SynthesisError(f"no downward construction for {logic.value}")


def chi_F(P: Property, X: Domain | str, neg: Callable[[Formula], Formula] = Neg) -> Formula:
    """True on t iff t is included in the union of P; bot for the empty property."""
    X = _domain(X)
    _check_property(P, X)
    return big_or(chi_t(s, X, neg) for s in P)


def choice_images(P: Property) -> list[int]:
    """The distinct sets {v_1, ..., v_n} obtained by picking one valuation from each member."""
    images = {0}
    for t in P:
        images = {S | 1 << v for S in images for v in bits(t)}
    return sorted(images)


def ne_blocks(P: Property, X: Domain | str) -> Formula:
    """Disjunction over choice images S of (split disjunction of chi_v, v in S) /\\ NE."""
    X = _domain(X)
    blocks = [And(big_or(chi_v(v, X) for v in bits(S)), NONEMPTY) for S in choice_images(P)]
    return big_or(blocks)


# synthesis --------------------------------------------------------------------


def empty_formula(logic: Logic | str) -> Formula:
    """A formula of the logic with the empty extension."""
    return And(BOT, NONEMPTY) if Logic.lookup(logic).fragment is FragmentId.PL_NE else NBOT


def synthesize(logic: Logic | str, X: Domain | str, P: Property, check_class: bool = True) -> Formula:
    """A formula of ``logic`` whose extension over X is P."""
    logic = Logic.lookup(logic)
    X = _domain(X)
    _check_property(P, X)
    if check_class and not mask_in_class(P.mask, P.points, logic.cls):
        raise SynthesisError(f"property is not in class {logic.cls.value}, which {logic.value} expresses")
    if not P:
        return empty_formula(logic)
    if logic is Logic.PL_NE:
        return And(chi_F(P, X), chi_U(P, X, NE_FLAVOR))
    if logic is Logic.PL_NE_DISJ:
        if 0 in P:
            return chi_F(P, X)
        return ne_blocks(P, X)
    return And(chi_D(P, X, logic), chi_U(P, X, flavor(logic)))


# verification sweeps ----------------------------------------------------------


@dataclass
class Report:
    logic: str
    domain: list[str]
    mode: str = "exhaustive"
    seed: int | None = None
    total: int = 0
    passed: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.total == self.passed

    def to_json(self) -> dict:
        return {
            "logic": self.logic,
            "domain": self.domain,
            "mode": self.mode,
            "seed": self.seed,
            "ok": self.ok,
            "total": self.total,
            "passed": self.passed,
            "failures": self.failures,
        }


def check_one(logic: Logic, X: Domain, P: Property, cache: dict | None = None) -> dict | None:
    """None when synthesis reproduces P inside the logic's fragment, else a failure record."""
    try:
        f = synthesize(logic, X, P, check_class=False)
    except SynthesisError as e:
        return {"property": X.property_json(P), "formula": None, "extension": None, "error": str(e)}
    bad = offending_subformula(f, logic.fragment)
    ext = extension_int(f, X, cache=cache)
    if bad is None and ext == P.mask:
        return None
    rec = {
        "property": X.property_json(P),
        "formula": str(f),
        "extension": X.property_json(Property(ext, X.points)),
    }
    if bad is not None:
        rec["error"] = f"outside {logic.fragment.value}: {bad}"
    return rec


def class_properties(X: Domain, cls: Cls) -> Iterator[Property]:
    """All properties of the class over X, by increasing mask (X of at most 2 atoms)."""
    m = X.points
    return (P for P in all_properties(X) if mask_in_class(P.mask, m, cls))


def sample_properties(X: Domain, cls: Cls, k: int, seed: int) -> list[Property]:
    rng = random.Random(seed)
    return [random_property(X, cls, rng) for _ in range(k)]


def _check_chunk(logic: str, names: tuple[str, ...], masks: list[int]) -> list[tuple[int, dict]]:
    X = Domain(names)
    lg = Logic.lookup(logic)
    cache: dict = {}
    out = []
    for i, mask in enumerate(masks):
        rec = check_one(lg, X, Property(mask, X.points), cache)
        if rec is not None:
            out.append((i, rec))
    return out


def verify_completeness(
    logic: Logic | str,
    X: Domain | str,
    mode: str = "exhaustive",
    k: int = 500,
    seed: int = 0,
    jobs: int = 1,
    properties: Iterable[Property] | None = None,
) -> Report:
    """Synthesize every property of the logic's class over X (or ``k`` seeded
    samples) and compare extensions."""
    logic = Logic.lookup(logic)
    X = _domain(X)
    if properties is not None:
        mode = "given"
    else:
        if mode == "exhaustive":
            properties = class_properties(X, logic.cls)
        elif mode == "sample":
            properties = sample_properties(X, logic.cls, k, seed)
        else:
            raise ValueError(f"unknown mode {mode!r}")
    masks = [P.mask for P in properties]
    report = Report(logic.value, list(X.names), mode, seed if mode == "sample" else None, total=len(masks))
    if jobs <= 1 or len(masks) < 2 * jobs:
        found = _check_chunk(logic.value, X.names, masks)
    else:
        size = -(-len(masks) // jobs)
        chunks = [masks[i : i + size] for i in range(0, len(masks), size)]
        found = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_check_chunk, [logic.value] * len(chunks), [X.names] * len(chunks), chunks)
            for c, res in enumerate(results):
                found.extend((c * size + i, rec) for i, rec in res)
    found.sort(key=lambda x: x[0])
    report.failures = [rec for _, rec in found]
    report.passed = report.total - len(found)
    return report
