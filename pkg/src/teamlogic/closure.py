"""Closure properties of finite properties, class membership, and random
generators of properties and formulas for fuzzing."""

from __future__ import annotations

import enum
import random
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

from . import kernels
from .formula import BOT, TOP, NONEMPTY, Atom, Dep, Formula, Might, Neg
from .fragments import GRAMMARS, FragmentId
from .teams import Domain, Property, bits


class Cls(str, enum.Enum):
    """Property classes: all, convex, convex and union closed, downward closed
    with the empty team, union closed, flat."""

    A = "A"
    C = "C"
    CU = "CU"
    DE = "DE"
    U = "U"
    F = "F"

    @classmethod
    def lookup(cls, name: "str | Cls") -> "Cls":
        try:
            return cls(str(getattr(name, "value", name)).upper())
        except ValueError:
            raise KeyError(f"unknown class {name!r}; known: {', '.join(c.value for c in cls)}") from None


# mask-level predicates used by the sweeps ---------------------------------


def is_downward(P: int, m: int) -> bool:
    return kernels.down_closure(P, m) == P


def is_upward(P: int, m: int) -> bool:
    return kernels.up_closure(P, m) == P


def is_convex(P: int, m: int) -> bool:
    return kernels.down_closure(P, m) & kernels.up_closure(P, m) == P


def is_union_closed(P: int, m: int) -> bool:
    return kernels.split_or(P, P, m) == P


def is_downward_mod_empty(P: int, m: int) -> bool:
    return kernels.down_closure(P, m) & ~1 & ~P == 0


def is_flat(P: int, m: int) -> bool:
    return bool(P & 1) and is_downward(P, m) and is_union_closed(P, m)


def mask_in_class(P: int, m: int, cls: Cls) -> bool:
    if cls is Cls.A:
        return True
    if cls is Cls.C:
        return is_convex(P, m)
    if cls is Cls.CU:
        return is_convex(P, m) and is_union_closed(P, m)
    if cls is Cls.DE:
        return bool(P & 1) and is_downward(P, m)
    if cls is Cls.U:
        return is_union_closed(P, m)
    if cls is Cls.F:
        return is_flat(P, m)
    raise KeyError(cls)


def in_class(P: Property, cls: Cls | str) -> bool:
    return mask_in_class(P.mask, P.points, Cls.lookup(cls))


# reports with witnesses ---------------------------------------------------


def _least(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class ClosureReport:
    points: int
    downward: bool
    upward: bool
    convex: bool
    union_closed: bool
    empty_team: bool
    flat: bool
    downward_mod_empty: bool
    downward_witness: tuple[int, int] | None = None  # (t in P, s below t outside P)
    upward_witness: tuple[int, int] | None = None  # (s in P, t above s outside P)
    convex_witness: tuple[int, int, int] | None = None  # (s, u, t): s, t in P, s < u < t, u outside
    union_witness: tuple[int, int] | None = None  # s, t in P with s | t outside P
    downward_mod_empty_witness: tuple[int, int] | None = None

    @property
    def partial_union(self) -> bool:
        """Convex and union closed together."""
        return self.convex and self.union_closed

    def to_json(self, team_json: Callable[[int], object] | None = None) -> dict:
        show = team_json or (lambda t: list(bits(t)))
        out = asdict(self)
        out["partial_union"] = self.partial_union
        for k, v in out.items():
            if k.endswith("_witness") and v is not None:
                out[k] = [show(t) for t in v]
        return out


def check_closure(P: Property) -> ClosureReport:
    m, mask = P.points, P.mask
    down = kernels.down_closure(mask, m)
    up = kernels.up_closure(mask, m)

    dw = None
    if down & ~mask:
        s = _least(down & ~mask)
        t = _least(mask & kernels.up_closure(1 << s, m))
        dw = (t, s)
    uw = None
    if up & ~mask:
        t = _least(up & ~mask)
        s = _least(mask & kernels.down_closure(1 << t, m))
        uw = (s, t)
    cw = None
    gaps = down & up & ~mask
    if gaps:
        for s in bits(mask):
            between = gaps & kernels.up_closure(1 << s, m)
            if between:
                u = _least(between)
                t = _least(mask & kernels.up_closure(1 << u, m))
                cw = (s, u, t)
                break
    uniw = None
    members = list(bits(mask))
    for i, s in enumerate(members):
        bad = [t for t in members[i:] if not mask >> (s | t) & 1]
        if bad:
            uniw = (s, bad[0])
            break
    dme = None
    if down & ~1 & ~mask:
        s = _least(down & ~1 & ~mask)
        dme = (_least(mask & kernels.up_closure(1 << s, m)), s)
    empty = bool(mask & 1)
    return ClosureReport(
        points=m,
        downward=dw is None,
        upward=uw is None,
        convex=cw is None,
        union_closed=uniw is None,
        empty_team=empty,
        flat=dw is None and uniw is None and empty,
        downward_mod_empty=dme is None,
        downward_witness=dw,
        upward_witness=uw,
        convex_witness=cw,
        union_witness=uniw,
        downward_mod_empty_witness=dme,
    )


# random properties --------------------------------------------------------


def _union_closure(P: int, m: int) -> int:
    while True:
        Q = kernels.split_or(P, P, m)
        if Q == P:
            return P
        P = Q


def _random_teams(rng: random.Random, points: int, count: int) -> int:
    out = 0
    for _ in range(count):
        density = rng.random()
        out |= 1 << sum(1 << w for w in range(points) if rng.random() < density)
    return out


def random_property(X: Domain | str, cls: Cls | str, seed: int | random.Random) -> Property:
    """A seeded random property of the given class over X.

    Convex properties are convex hulls (down-set meet up-set) of a few random
    teams; union-closed convex ones alternate hull and union closure until
    both hold.
    """
    X = Domain.parse(X)
    cls = Cls.lookup(cls)
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    m, T = X.points, 1 << X.points
    if cls is Cls.A:
        return Property(rng.getrandbits(T), m)
    if cls is Cls.F:
        return Property(kernels.down_closure(1 << rng.getrandbits(m), m), m)
    seedset = _random_teams(rng, m, rng.randint(1, 5))
    if cls is Cls.DE:
        P = kernels.down_closure(seedset, m) | 1
    elif cls is Cls.U:
        P = _union_closure(seedset, m)
    elif cls is Cls.C:
        P = kernels.down_closure(seedset, m) & kernels.up_closure(seedset, m)
        if rng.random() < 0.1:
            P = 0
    else:
        P = seedset
        while True:
            hull = kernels.down_closure(P, m) & kernels.up_closure(P, m)
            Q = _union_closure(hull, m)
            if Q == P:
                break
            P = Q
    if not mask_in_class(P, m, cls):
        raise AssertionError(f"generated property is not in class {cls.value}")
    return Property(P, m)


# random formulas ----------------------------------------------------------


def random_formula(
    frag: FragmentId | str,
    atom_names: Sequence[str],
    rng: random.Random,
    depth: int = 5,
    ne_for_might: bool = False,
) -> Formula:
    """A random formula of the fragment, of depth at most ``depth``.

    At each inner node every production of the grammar is equally likely.
    With ``ne_for_might`` the might operator is dropped and NE is offered
    as a leaf instead.
    """
    frag = FragmentId.lookup(frag) if isinstance(frag, str) else frag
    atom_names = list(atom_names)

    def leaves(g) -> list[Callable[[], Formula]]:
        out: list[Callable[[], Formula]] = [lambda: Atom(rng.choice(atom_names))] if atom_names else []
        out += [lambda: BOT, lambda: TOP]
        if g.ne or ne_for_might:
            out.append(lambda: NONEMPTY)
        return out

    def gen(fr: FragmentId, d: int) -> Formula:
        g = GRAMMARS[fr]
        options = leaves(g)
        if d > 0 and rng.random() < 0.8:
            inner: list[Callable[[], Formula]] = []
            for op in sorted(g.binary, key=lambda c: c.__name__):
                inner.append(lambda op=op: op(gen(fr, d - 1), gen(fr, d - 1)))
            for op in sorted(g.unary, key=lambda c: c.__name__):
                if op is Might and ne_for_might:
                    continue
                inner.append(lambda op=op: op(gen(fr, d - 1)))
            if g.neg_base is not None:
                inner.append(lambda: Neg(gen(g.neg_base, d - 1)))
            if g.dep_base is not None and atom_names:
                inner.append(lambda: dep(g, d))
            options = inner or options
        return rng.choice(options)()

    def dep(g, d: int) -> Formula:
        k = rng.randint(0, 2)
        if g.dep_atoms_only:
            parts = [Atom(rng.choice(atom_names)) for _ in range(k + 1)]
        else:
            parts = [gen(g.dep_base, min(d - 1, 2)) for _ in range(k + 1)]
        return Dep(tuple(parts[:-1]), parts[-1])

    return gen(frag, depth)
