"""Formula abstract syntax shared by every propositional and modal team logic.

Nodes are immutable and hashable. The hash is cached on first use so that
large synthesized formulas with heavily shared subterms can be used as keys
of extension memo tables without re-walking the tree.
"""

from __future__ import annotations

import sys
from contextlib import contextmanager
from dataclasses import dataclass, fields
from functools import reduce
from typing import Callable, Iterable, Iterator, Sequence


class Formula:
    """Base class of all formula nodes."""

    __slots__ = ()

    def children(self) -> tuple["Formula", ...]:
        return ()

    def __hash__(self) -> int:
        try:
            return self.__dict__["_hash"]
        except KeyError:
            pass
        # children first, without recursion: folds can be hundreds of levels deep
        stack: list[Formula] = [self]
        while stack:
            g = stack[-1]
            if "_hash" in g.__dict__:
                stack.pop()
                continue
            pending = [c for c in g.children() if "_hash" not in c.__dict__]
            if pending:
                stack.extend(pending)
                continue
            object.__setattr__(g, "_hash", hash((type(g).__name__, *g._key())))
            stack.pop()
        return self.__dict__["_hash"]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Formula):
            return NotImplemented
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if type(a) is not type(b) or hash(a) != hash(b) or a._local() != b._local():
                return False
            stack.extend(zip(a.children(), b.children()))
        return True

    def _local(self) -> tuple:
        """Non-formula fields that equality must compare."""
        return ()

    def _key(self) -> tuple:
        raise NotImplementedError

    def __reduce__(self):
        # the cached hash depends on per-process string hashing; never pickle it
        return (type(self), tuple(getattr(self, f.name) for f in fields(self)))

    def __str__(self) -> str:
        from .parser import to_text

        return to_text(self)


def _node(cls):
    cls = dataclass(frozen=True, eq=False, repr=True)(cls)
    cls.__hash__ = Formula.__hash__
    return cls


@_node
class Atom(Formula):
    name: str

    def _key(self):
        return (self.name,)

    def _local(self):
        return (self.name,)


@_node
class Hole(Formula):
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"hole index must be positive, got {self.index}")

    def _key(self):
        return (self.index,)

    def _local(self):
        return (self.index,)


@_node
class Bot(Formula):
    def _key(self):
        return ()


@_node
class NE(Formula):
    def _key(self):
        return ()


@_node
class _Unary(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)

    def _key(self):
        return (hash(self.arg),)


@_node
class _Binary(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def _key(self):
        return (hash(self.left), hash(self.right))


class Neg(_Unary):
    """Flat (classical) negation."""


class Might(_Unary):
    """Epistemic might: some nonempty subteam satisfies the operand."""


class Dia(_Unary):
    """Flat diamond."""


class Box(_Unary):
    """Flat box."""


class GDia(_Unary):
    """Global diamond, quantifying over successor teams."""


class GBox(_Unary):
    """Global box, evaluated at the image team."""


class And(_Binary):
    pass


class SplitOr(_Binary):
    pass


class LaxSplitOr(_Binary):
    pass


class Impl(_Binary):
    pass


class GlobalOr(_Binary):
    pass


class LaxGlobalOr(_Binary):
    pass


for _cls in (Neg, Might, Dia, Box, GDia, GBox, And, SplitOr, LaxSplitOr, Impl, GlobalOr, LaxGlobalOr):
    _node(_cls)


@_node
class Dep(Formula):
    """Dependence atom ``=(args; head)``; empty ``args`` is a constancy atom."""

    args: tuple[Formula, ...]
    head: Formula

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    def children(self):
        return (*self.args, self.head)

    def _key(self):
        return (tuple(hash(a) for a in self.args), hash(self.head))

    def _local(self):
        return (len(self.args),)


UNARY = (Neg, Might, Dia, Box, GDia, GBox)
BINARY = (And, SplitOr, LaxSplitOr, Impl, GlobalOr, LaxGlobalOr)

BOT = Bot()
TOP = Neg(BOT)
NBOT = Might(BOT)
NONEMPTY = NE()


def neg_int(f: Formula) -> Formula:
    """Intuitionistic negation ``f -> bot``."""
    return Impl(f, BOT)


def fold(op: Callable[[Formula, Formula], Formula], items: Iterable[Formula], empty: Formula) -> Formula:
    """Left fold of a binary connective; ``empty`` is the unit for no operands."""
    items = list(items)
    if not items:
        return empty
    return reduce(op, items)


def big_and(items: Iterable[Formula], top: Formula = TOP) -> Formula:
    return fold(And, items, top)


def big_or(items: Iterable[Formula]) -> Formula:
    return fold(SplitOr, items, BOT)


def big_lax_or(items: Iterable[Formula]) -> Formula:
    return fold(LaxSplitOr, items, BOT)


def big_global_or(items: Iterable[Formula]) -> Formula:
    return fold(GlobalOr, items, BOT)


def big_lax_global_or(items: Iterable[Formula]) -> Formula:
    return fold(LaxGlobalOr, items, BOT)


def walk(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal (shared subterms are visited once per occurrence)."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(g.children()))


def atoms(f: Formula) -> set[str]:
    return {g.name for g in _unique(f) if isinstance(g, Atom)}


def holes(f: Formula) -> set[int]:
    return {g.index for g in _unique(f) if isinstance(g, Hole)}


def _unique(f: Formula) -> Iterator[Formula]:
    seen: set[int] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if id(g) in seen:
            continue
        seen.add(id(g))
        yield g
        stack.extend(g.children())


def _postorder_unique(f: Formula) -> list[Formula]:
    """Distinct nodes (by identity), children before parents."""
    seen: set[int] = set()
    out: list[Formula] = []
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        g, ready = stack.pop()
        if ready:
            out.append(g)
            continue
        if id(g) in seen:
            continue
        seen.add(id(g))
        stack.append((g, True))
        stack.extend((c, False) for c in g.children())
    return out


def depth(f: Formula) -> int:
    memo: dict[int, int] = {}
    for g in _postorder_unique(f):
        kids = g.children()
        memo[id(g)] = 1 + max(memo[id(c)] for c in kids) if kids else 0
    return memo[id(f)]


def size(f: Formula) -> int:
    """Number of nodes in the tree view (shared subterms counted per occurrence)."""
    memo: dict[int, int] = {}
    for g in _postorder_unique(f):
        memo[id(g)] = 1 + sum(memo[id(c)] for c in g.children())
    return memo[id(f)]


@contextmanager
def recursion_room(f: Formula, frames_per_level: int = 8):
    """Temporarily raise the recursion limit enough to walk ``f`` recursively."""
    need = depth(f) * frames_per_level + 500
    old = sys.getrecursionlimit()
    if need > old:
        sys.setrecursionlimit(need)
    try:
        yield
    finally:
        if need > old:
            sys.setrecursionlimit(old)


def arity(f: Formula) -> int:
    """Arity of a context: the largest hole index (0 if hole-free).

    Raises ValueError when hole indices are not contiguous from 1.
    """
    hs = holes(f)
    if not hs:
        return 0
    n = max(hs)
    if hs != set(range(1, n + 1)):
        raise ValueError(f"hole indices must be contiguous from 1, got {sorted(hs)}")
    return n


def rebuild(f: Formula, kids: Sequence[Formula]) -> Formula:
    """Rebuild a node of the same kind with new children."""
    if isinstance(f, UNARY):
        return type(f)(kids[0])
    if isinstance(f, BINARY):
        return type(f)(kids[0], kids[1])
    if isinstance(f, Dep):
        return Dep(tuple(kids[:-1]), kids[-1])
    return f


def substitute(f: Formula, mapping: Callable[[Formula], Formula | None]) -> Formula:
    """Bottom-up rewrite; ``mapping`` returns a replacement or None to keep the node."""
    memo: dict[int, Formula] = {}

    def go(g: Formula) -> Formula:
        k = id(g)
        if k in memo:
            return memo[k]
        kids = g.children()
        new = rebuild(g, [go(c) for c in kids]) if kids else g
        out = mapping(new)
        memo[k] = new if out is None else out
        return memo[k]

    with recursion_room(f):
        return go(f)


def plug(context: Formula, args: Sequence[Formula]) -> Formula:
    """Replace hole ``_i`` with ``args[i-1]``."""

    def m(g: Formula) -> Formula | None:
        if isinstance(g, Hole):
            return args[g.index - 1]
        return None

    return substitute(context, m)
