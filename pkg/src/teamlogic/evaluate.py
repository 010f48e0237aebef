"""Two independent evaluators over a :class:`~teamlogic.structure.Structure`.

``extension_mask`` computes the whole extension of a formula bottom-up, one
property-level operation per node. ``sat_direct`` decides a single
(formula, team) pair straight from the satisfaction clauses by enumerating
subteams, supersets, covers and successor teams. The test suite checks
that the two agree.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Mapping, MutableMapping

from . import kernels
from .formula import (
    And,
    Atom,
    Bot,
    Box,
    Dep,
    Dia,
    Formula,
    GBox,
    GDia,
    GlobalOr,
    Hole,
    Impl,
    LaxGlobalOr,
    LaxSplitOr,
    Might,
    NE,
    Neg,
    SplitOr,
)
from .structure import Structure
from .teams import bits, submasks

MAX_EXTENSION_POINTS = 16
MAX_MODAL_EXTENSION_POINTS = 10
MAX_DIRECT_SPLIT = 12


class EvaluationError(ValueError):
    pass


def powerset_property(points_mask: int, m: int) -> int:
    """The property of all teams included in ``points_mask``."""
    return kernels.down_closure(1 << points_mask, m)


def singleton_points(P: int, m: int) -> int:
    """Mask of the points w with {w} in P."""
    out = 0
    for w in range(m):
        if P >> (1 << w) & 1:
            out |= 1 << w
    return out


def _dependence(args: list[int], head: int, m: int) -> int:
    """Extension of a dependence atom from the point-truth masks of its parts."""
    pairs = 0
    for v in range(m):
        for w in range(v + 1, m):
            if all((a >> v & 1) == (a >> w & 1) for a in args) and (head >> v & 1) != (head >> w & 1):
                pairs |= 1 << ((1 << v) | (1 << w))
    full = (1 << (1 << m)) - 1
    return full & ~kernels.up_closure(pairs, m)


def _full(m: int) -> int:
    return (1 << (1 << m)) - 1


# property-level meaning of the non-modal connectives, as functions of the
# operand extensions over m points
PROPERTY_OPS: dict[type, Callable[..., int]] = {
    And: lambda m, a, b: a & b,
    SplitOr: lambda m, a, b: kernels.split_or(a, b, m),
    LaxSplitOr: lambda m, a, b: kernels.down_closure(kernels.split_or(a, b, m), m),
    GlobalOr: lambda m, a, b: a | b,
    LaxGlobalOr: lambda m, a, b: kernels.down_closure(a | b, m),
    Impl: lambda m, a, b: _full(m) & ~kernels.up_closure(a & ~b, m),
    Might: lambda m, a: kernels.up_closure(a & ~1, m),
    Neg: lambda m, a: powerset_property(((1 << m) - 1) & ~singleton_points(a, m), m),
}


def _image_table(S: Structure) -> list[int]:
    T = 1 << S.points
    img = [0] * T
    for t in range(1, T):
        low = t & -t
        img[t] = img[t ^ low] | S.succ[low.bit_length() - 1]
    return img


def extension_mask(
    f: Formula,
    S: Structure,
    env: Mapping[int, int] | None = None,
    cache: MutableMapping[Formula, int] | None = None,
) -> int:
    """Property mask of all teams of ``S`` satisfying ``f``.

    ``env`` fixes the extension of each hole. ``cache`` may be shared between
    calls on the same structure, but only for hole-free formulas.
    """
    m = S.points
    if m > MAX_EXTENSION_POINTS or (S.modal and m > MAX_MODAL_EXTENSION_POINTS):
        raise EvaluationError(f"{m} points is too many for exhaustive extension")
    if cache is None or env is not None:
        cache = {}
    T = 1 << m
    full = (1 << T) - 1
    images: list[int] | None = None

    def node(g: Formula, kid: list[int]) -> int:
        nonlocal images
        if isinstance(g, Atom):
            try:
                A = S.atom_sets[g.name]
            except KeyError:
                raise EvaluationError(f"atom {g.name!r} is not interpreted") from None
            return powerset_property(A, m)
        if isinstance(g, Bot):
            return 1
        if isinstance(g, NE):
            return full & ~1
        if isinstance(g, Hole):
            if env is None or g.index not in env:
                raise EvaluationError(f"hole _{g.index} has no assigned property")
            return env[g.index]
        op = PROPERTY_OPS.get(type(g))
        if op is not None:
            return op(m, *kid)
        if isinstance(g, Dep):
            return _dependence([singleton_points(k, m) for k in kid[:-1]], singleton_points(kid[-1], m), m)
        if not S.modal:
            raise EvaluationError(f"modal operator {type(g).__name__} in a propositional formula")
        if isinstance(g, Dia):
            might = kernels.up_closure(kid[0] & ~1, m)
            good = sum(1 << w for w in range(m) if might >> S.succ[w] & 1)
            return powerset_property(good, m)
        if isinstance(g, Box):
            good = sum(1 << w for w in range(m) if kid[0] >> S.succ[w] & 1)
            return powerset_property(good, m)
        if images is None:
            images = _image_table(S)
        if isinstance(g, GBox):
            P = kid[0]
            return sum(1 << t for t in range(T) if P >> images[t] & 1)
        if isinstance(g, GDia):
            targets = [(s, S.preimage(s)) for s in bits(kid[0])]
            out = 0
            for t in range(T):
                img = images[t]
                for s, pre in targets:
                    if s & ~img == 0 and t & ~pre == 0:
                        out |= 1 << t
                        break
            return out
        raise EvaluationError(f"unknown node {g!r}")

    # iterative post-order so that long folds do not hit the recursion limit
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        g, ready = stack.pop()
        if g in cache:
            continue
        kids = g.children()
        if ready or not kids:
            cache[g] = node(g, [cache[c] for c in kids])
        else:
            stack.append((g, True))
            stack.extend((c, False) for c in kids if c not in cache)
    return cache[f]


def sat_direct(f: Formula, S: Structure, team: int, env: Mapping[int, int] | None = None) -> bool:
    """Decide ``team |= f`` from the clauses, without computing extensions."""
    return direct_checker(S, env)(f, team)


def direct_checker(S: Structure, env: Mapping[int, int] | None = None) -> Callable[[Formula, int], bool]:
    """A memoizing ``(formula, team) -> bool`` decision procedure for ``S``."""
    m = S.points
    all_teams = range(1 << m)
    all_pts = (1 << m) - 1

    @lru_cache(maxsize=None)
    def lax_parts(g: LaxSplitOr) -> tuple[list[int], set[int]]:
        # t is covered by s | u iff the part of t outside s lies within u
        lefts = [s for s in all_teams if sat(g.left, s)]
        below = {r for u in all_teams if sat(g.right, u) for r in submasks(u)}
        return lefts, below

    @lru_cache(maxsize=None)
    def sat(g: Formula, t: int) -> bool:
        if isinstance(g, Atom):
            try:
                return t & ~S.atom_sets[g.name] == 0
            except KeyError:
                raise EvaluationError(f"atom {g.name!r} is not interpreted") from None
        if isinstance(g, Bot):
            return t == 0
        if isinstance(g, NE):
            return t != 0
        if isinstance(g, Hole):
            if env is None or g.index not in env:
                raise EvaluationError(f"hole _{g.index} has no assigned property")
            return bool(env[g.index] >> t & 1)
        if isinstance(g, Neg):
            return all(not sat(g.arg, 1 << v) for v in bits(t))
        if isinstance(g, And):
            return sat(g.left, t) and sat(g.right, t)
        if isinstance(g, SplitOr):
            if t.bit_count() > MAX_DIRECT_SPLIT:
                raise EvaluationError("team too large for direct split enumeration")
            for s in submasks(t):
                if sat(g.left, s):
                    rest = t & ~s
                    for r in submasks(s):
                        if sat(g.right, rest | r):
                            return True
            return False
        if isinstance(g, LaxSplitOr):
            lefts, below_rights = lax_parts(g)
            return any(t & ~s in below_rights for s in lefts)
        if isinstance(g, Impl):
            return all(sat(g.right, s) for s in submasks(t) if sat(g.left, s))
        if isinstance(g, GlobalOr):
            return sat(g.left, t) or sat(g.right, t)
        if isinstance(g, LaxGlobalOr):
            return any(sat(g.left, t | r) or sat(g.right, t | r) for r in submasks(all_pts & ~t))
        if isinstance(g, Might):
            return any(sat(g.arg, s) for s in submasks(t) if s)
        if isinstance(g, Dep):
            truth = [[sat(a, 1 << w) for a in g.args] + [sat(g.head, 1 << w)] for w in range(m)]
            members = list(bits(t))
            return all(
                truth[v][-1] == truth[w][-1]
                for v in members
                for w in members
                if truth[v][:-1] == truth[w][:-1]
            )
        if not S.modal:
            raise EvaluationError(f"modal operator {type(g).__name__} in a propositional formula")
        if isinstance(g, Dia):
            return all(any(sat(g.arg, s) for s in submasks(S.succ[w]) if s) for w in bits(t))
        if isinstance(g, Box):
            return all(sat(g.arg, S.succ[w]) for w in bits(t))
        if isinstance(g, GDia):
            return any(sat(g.arg, s) for s in S.successors(t))
        if isinstance(g, GBox):
            return sat(g.arg, S.image(t))
        raise EvaluationError(f"unknown node {g!r}")

    return sat
