"""Finite domains, valuations, teams and properties.

Encodings:

* valuation over ``X = (x0, ..., x{n-1})``: int code, bit ``i`` is the value
  of ``x_i``;
* team: int mask, bit ``c`` set iff the valuation with code ``c`` is present;
* property: :class:`Property`, an int mask whose bit ``t`` is set iff the
  team with mask ``t`` belongs to it.

The same team/property encodings are used for modal teams, with points
being world indices instead of valuation codes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from . import kernels

MAX_VALUATION_ATOMS = 16
MAX_PROPERTY_ATOMS = 2

_ATOM_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


class DomainTooLarge(ValueError):
    pass


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in increasing order."""
    members = list(bits(mask))
    for k in range(1 << len(members)):
        s = 0
        for j, b in enumerate(members):
            if k >> j & 1:
                s |= 1 << b
        yield s


@dataclass(frozen=True)
class Property:
    """A set of teams over ``points`` evaluation points (valuations or worlds)."""

    mask: int
    points: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> (1 << self.points):
            raise ValueError("property mask wider than its team lattice")

    @classmethod
    def from_teams(cls, teams: Iterable[int], points: int) -> "Property":
        m = 0
        for t in teams:
            if t < 0 or t >> points:
                raise ValueError(f"team {t} is not over {points} points")
            m |= 1 << t
        return cls(m, points)

    @classmethod
    def empty(cls, points: int) -> "Property":
        return cls(0, points)

    @classmethod
    def full(cls, points: int) -> "Property":
        return cls((1 << (1 << points)) - 1, points)

    def teams(self) -> list[int]:
        return list(bits(self.mask))

    def __iter__(self) -> Iterator[int]:
        return bits(self.mask)

    def __contains__(self, team: int) -> bool:
        return bool(self.mask >> team & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def _same(self, other: "Property") -> None:
        if self.points != other.points:
            raise ValueError("properties over different point sets")

    def __and__(self, other: "Property") -> "Property":
        self._same(other)
        return Property(self.mask & other.mask, self.points)

    def __or__(self, other: "Property") -> "Property":
        self._same(other)
        return Property(self.mask | other.mask, self.points)

    def __sub__(self, other: "Property") -> "Property":
        self._same(other)
        return Property(self.mask & ~other.mask, self.points)

    def __le__(self, other: "Property") -> bool:
        self._same(other)
        return self.mask & ~other.mask == 0

    def down(self) -> "Property":
        return Property(kernels.down_closure(self.mask, self.points), self.points)

    def up(self) -> "Property":
        return Property(kernels.up_closure(self.mask, self.points), self.points)

    def __repr__(self) -> str:
        return f"Property({{{', '.join(map(bin, self.teams()))}}}, points={self.points})"


def union_all(P: Property) -> int:
    """The union of all member teams (the empty team when P is empty)."""
    u = 0
    for t in P:
        u |= t
    return u


class Domain:
    """An ordered finite set of atoms; the canonical order fixes all encodings."""

    __slots__ = ("names", "_index")

    def __init__(self, names: str | Iterable[str] = ()):
        if isinstance(names, str):
            names = [a.strip() for a in names.split(",") if a.strip()]
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate atoms in domain {names}")
        for a in names:
            if not _ATOM_RE.match(a):
                raise ValueError(f"bad atom name {a!r}")
        self.names = names
        self._index = {a: i for i, a in enumerate(names)}

    @classmethod
    def parse(cls, spec: str | Sequence[str] | "Domain") -> "Domain":
        if isinstance(spec, Domain):
            return spec
        return cls(spec)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def points(self) -> int:
        """Number of valuations, 2^n."""
        return 1 << self.n

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, Domain) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Domain({list(self.names)!r})"

    def index(self, name: str) -> int:
        return self._index[name]

    def atom_set(self, name: str) -> int:
        """Team mask of the valuations making ``name`` true."""
        i = self._index[name]
        return sum(1 << c for c in range(self.points) if c >> i & 1)

    # valuations -----------------------------------------------------------

    def encode(self, valuation: Mapping[str, int | bool]) -> int:
        if set(valuation) != set(self.names):
            raise ValueError(f"valuation keys {sorted(valuation)} do not match domain {list(self.names)}")
        code = 0
        for a, v in valuation.items():
            if v not in (0, 1, True, False):
                raise ValueError(f"valuation value for {a!r} must be 0 or 1")
            if v:
                code |= 1 << self._index[a]
        return code

    def decode(self, code: int) -> dict[str, int]:
        return {a: code >> i & 1 for i, a in enumerate(self.names)}

    def valuation_name(self, code: int) -> str:
        """Readable name in the ``v_pq̄`` style, e.g. ``v_p~q``."""
        return "v_" + "".join(a if code >> i & 1 else "~" + a for i, a in enumerate(self.names))

    def team(self, valuations: Iterable[Mapping[str, int | bool] | int]) -> int:
        t = 0
        for v in valuations:
            c = v if isinstance(v, int) else self.encode(v)
            if not 0 <= c < self.points:
                raise ValueError(f"valuation code {c} out of range")
            t |= 1 << c
        return t

    def team_from_strings(self, *vals: str) -> int:
        """Team from strings of 0/1 digits in domain order, e.g. ``"10"`` for p=1,q=0."""
        t = 0
        for s in vals:
            if len(s) != self.n or set(s) - {"0", "1"}:
                raise ValueError(f"bad valuation string {s!r}")
            t |= 1 << sum(1 << i for i, ch in enumerate(s) if ch == "1")
        return t

    def team_json(self, team: int) -> list[dict[str, int]]:
        return [self.decode(c) for c in bits(team)]

    def property_json(self, P: Property) -> list[list[dict[str, int]]]:
        return [self.team_json(t) for t in P]

    def property_from_json(self, data: Iterable[Iterable[Mapping[str, int]]]) -> Property:
        return Property.from_teams((self.team(t) for t in data), self.points)

    def structure(self):
        from .structure import Structure

        return Structure.propositional(self)


def all_valuations(X: Domain) -> list[int]:
    """All 2^n valuation codes in canonical order."""
    if X.n > MAX_VALUATION_ATOMS:
        raise DomainTooLarge(f"{X.n} atoms exceeds the limit of {MAX_VALUATION_ATOMS}")
    return list(range(X.points))


def all_teams(X: Domain) -> Iterator[int]:
    """All 2^(2^n) teams over X, by increasing mask."""
    if X.points > 24:
        raise DomainTooLarge(f"2^{X.n} valuations is too many to enumerate teams")
    return iter(range(1 << X.points))


def all_properties(X: Domain) -> Iterator[Property]:
    """All 2^(2^(2^n)) properties over X, by increasing mask."""
    if X.n > MAX_PROPERTY_ATOMS:
        raise DomainTooLarge(f"properties over {X.n} atoms cannot be enumerated")
    nteams = 1 << X.points
    return (Property(m, X.points) for m in range(1 << nteams))
