"""Contexts, connectives as functions on properties, and uniform
definability checks at a fixed finite domain.

A positive answer from :func:`check_uniform` or :func:`search_context` is
verified at the given domain only; a negative answer from ``check_uniform``
is a genuine counterexample tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Sequence

from . import kernels
from .closure import Cls, mask_in_class
from .evaluate import PROPERTY_OPS, extension_mask
from .formula import BOT, NONEMPTY, TOP, Formula, GlobalOr, Hole, LaxGlobalOr, LaxSplitOr, SplitOr, holes
from .fragments import GRAMMARS, FragmentId
from .parser import parse
from .prop import check_propositional, structure_of
from .teams import Domain, DomainTooLarge, Property, all_properties


class ArityError(ValueError):
    pass


@dataclass(frozen=True)
class Context:
    """A formula with holes ``_1 .. _n``; ``arity`` may exceed the largest hole used."""

    formula: Formula
    arity: int

    def __init__(self, formula: Formula | str, arity: int | None = None):
        if isinstance(formula, str):
            formula = parse(formula)
        hs = holes(formula)
        top = max(hs, default=0)
        if arity is None:
            if hs != set(range(1, top + 1)):
                raise ArityError(f"hole indices must be contiguous from 1, got {sorted(hs)}")
            arity = top
        elif top > arity:
            raise ArityError(f"context uses hole _{top} but has arity {arity}")
        object.__setattr__(self, "formula", formula)
        object.__setattr__(self, "arity", arity)

    def __str__(self) -> str:
        return str(self.formula)


def apply_context_mask(c: Context, args: Sequence[int], X: Domain) -> int:
    if len(args) != c.arity:
        raise ArityError(f"context of arity {c.arity} applied to {len(args)} arguments")
    env = {i + 1: a for i, a in enumerate(args)}
    return extension_mask(c.formula, structure_of(X), env=env)


def apply_context(c: Context | str, args: Sequence[Property], X: Domain | str) -> Property:
    """The property obtained by giving hole ``_i`` the extension ``args[i-1]``."""
    X = Domain.parse(X)
    c = c if isinstance(c, Context) else Context(c)
    check_propositional(c.formula, X, allow_holes=True)
    for P in args:
        if P.points != X.points:
            raise ValueError("argument property is over a different domain")
    return Property(apply_context_mask(c, [P.mask for P in args], X), X.points)


@dataclass(frozen=True)
class PropertyFunction:
    """A named n-ary function on property masks over ``m`` points."""

    name: str
    arity: int
    fn: Callable[..., int]  # fn(m, *masks) -> mask

    def __call__(self, X: Domain, *args: Property) -> Property:
        if len(args) != self.arity:
            raise ArityError(f"{self.name} takes {self.arity} arguments, got {len(args)}")
        return Property(self.fn(X.points, *(P.mask for P in args)), X.points)

    @classmethod
    def lifted(cls, node: type) -> "PropertyFunction":
        """A connective acting on extensions, as the evaluator interprets it."""
        op = PROPERTY_OPS[node]
        arity = op.__code__.co_argcount - 1
        return cls(node.__name__, arity, op)

    @classmethod
    def of_context(cls, c: Context | str) -> "PropertyFunction":
        c = c if isinstance(c, Context) else Context(c)

        def fn(m: int, *masks: int) -> int:
            env = {i + 1: a for i, a in enumerate(masks)}
            return extension_mask(c.formula, _points_structure(m), env=env)

        return cls(str(c), c.arity, fn)


def _points_structure(m: int):
    n = m.bit_length() - 1
    if 1 << n != m:
        raise ValueError(f"{m} points is not a propositional team lattice")
    return structure_of(Domain(f"x{i}" for i in range(n)))


SPLIT_OR = PropertyFunction.lifted(SplitOr)
GLOBAL_OR = PropertyFunction.lifted(GlobalOr)
LAX_SPLIT_OR = PropertyFunction.lifted(LaxSplitOr)
LAX_GLOBAL_OR = PropertyFunction.lifted(LaxGlobalOr)
NONEMPTINESS = PropertyFunction("NE", 0, lambda m: ((1 << (1 << m)) - 1) & ~1)
IDENTITY = PropertyFunction("id", 1, lambda m, a: a)

BUILTINS: dict[str, PropertyFunction] = {
    "or": SPLIT_OR,
    "gor": GLOBAL_OR,
    "lor": LAX_SPLIT_OR,
    "lgor": LAX_GLOBAL_OR,
    "ne": NONEMPTINESS,
    "id": IDENTITY,
    **{k.__name__.lower(): PropertyFunction.lifted(k) for k in PROPERTY_OPS},
}


def property_function(spec: str | PropertyFunction) -> PropertyFunction:
    """Look up a built-in by name, or read a context such as ``"_1 \\/. _2"``."""
    if isinstance(spec, PropertyFunction):
        return spec
    key = spec.strip().lower()
    if key in BUILTINS:
        return BUILTINS[key]
    return PropertyFunction.of_context(spec)


def class_members(cls: Cls | str, X: Domain | str) -> Iterator[Property]:
    """All properties of the class over X, by increasing mask."""
    X = Domain.parse(X)
    cls = Cls.lookup(cls)
    m = X.points
    if cls is Cls.F:
        if X.n > 4:
            raise DomainTooLarge("flat properties are enumerated for at most 4 atoms")
        return (Property(kernels.down_closure(1 << u, m), m) for u in range(1 << m))
    return (P for P in all_properties(X) if mask_in_class(P.mask, m, cls))


def check_uniform(
    theta: Context | str, op: PropertyFunction | str, cls: Cls | str, X: Domain | str
) -> tuple[bool, tuple[Property, ...] | None]:
    """Whether the context agrees with ``op`` on every tuple of class members.

    Tuples are visited in lexicographic order of member masks; the first
    disagreeing tuple is returned as the witness.
    """
    X = Domain.parse(X)
    theta = theta if isinstance(theta, Context) else Context(theta)
    op = property_function(op)
    if theta.arity != op.arity:
        raise ArityError(f"context has arity {theta.arity} but {op.name} has arity {op.arity}")
    check_propositional(theta.formula, X, allow_holes=True)
    members = [P.mask for P in class_members(cls, X)]
    m = X.points
    for args in product(members, repeat=op.arity):
        if apply_context_mask(theta, args, X) != op.fn(m, *args):
            return False, tuple(Property(a, m) for a in args)
    return True, None


def search_context(
    op: PropertyFunction | str,
    cls: Cls | str,
    X: Domain | str,
    signature: FragmentId | str,
    depth: int,
) -> Context | None:
    """The first context of the fragment's connectives agreeing with ``op``
    on all class tuples, or None within the depth bound.

    Candidates are built level by level: leaves are the holes ``_1.._n``,
    then ``bot``, ``top`` and (if the fragment has it) ``ne``; level d
    applies every unary connective (sorted by name) and then every binary
    one to earlier candidates with at least one operand of level d - 1.
    Candidates whose behaviour on the class tuples repeats an earlier one
    are dropped. Negation and dependence atoms are not used, since their
    operands must be hole-free classical formulas.
    """
    X = Domain.parse(X)
    op = property_function(op)
    frag = FragmentId.lookup(signature) if isinstance(signature, str) else signature
    g = GRAMMARS[frag]
    m = X.points
    members = [P.mask for P in class_members(cls, X)]
    tuples = list(product(members, repeat=op.arity))
    target = tuple(op.fn(m, *a) for a in tuples)

    leaves: list[tuple[Formula, tuple[int, ...]]] = [
        (Hole(i + 1), tuple(a[i] for a in tuples)) for i in range(op.arity)
    ]
    consts = [(BOT, 1), (TOP, PROPERTY_OPS[type(TOP)](m, 1))]
    if g.ne:
        consts.append((NONEMPTY, ((1 << (1 << m)) - 1) & ~1))
    leaves += [(f, (v,) * len(tuples)) for f, v in consts]

    seen: set[tuple[int, ...]] = set()
    found: list[tuple[Formula, tuple[int, ...]]] = []

    def admit(f: Formula, beh: tuple[int, ...]) -> bool:
        if beh in seen:
            return False
        seen.add(beh)
        found.append((f, beh))
        return beh == target

    level_start = 0
    for f, beh in leaves:
        if admit(f, beh):
            return Context(f, op.arity)
    unary = sorted(g.unary & PROPERTY_OPS.keys(), key=lambda c: c.__name__)
    binary = sorted(g.binary & PROPERTY_OPS.keys(), key=lambda c: c.__name__)
    for _ in range(depth):
        prev_end = len(found)
        snapshot = found[:prev_end]
        for node in unary:
            fn = PROPERTY_OPS[node]
            for f, beh in snapshot[level_start:]:
                if admit(node(f), tuple(fn(m, a) for a in beh)):
                    return Context(node(f), op.arity)
        for node in binary:
            fn = PROPERTY_OPS[node]
            for i, (f1, b1) in enumerate(snapshot):
                for j, (f2, b2) in enumerate(snapshot):
                    if i < level_start and j < level_start:
                        continue
                    h = node(f1, f2)
                    if admit(h, tuple(fn(m, x, y) for x, y in zip(b1, b2))):
                        return Context(h, op.arity)
        level_start = prev_end
    return None
