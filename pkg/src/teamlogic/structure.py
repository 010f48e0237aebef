"""Evaluation structures: a finite set of points with an atom valuation and,
for modal structures, an accessibility relation.

A propositional domain over ``n`` atoms becomes a structure whose ``2^n``
points are the valuations; a Kripke model becomes a structure whose points
are its worlds. Both evaluators work on this one shape.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .teams import bits, submasks

MAX_SUCCESSOR_FRONTIER = 20


@dataclass(frozen=True, eq=False)
class Structure:
    points: int
    atom_sets: Mapping[str, int]
    succ: tuple[int, ...] | None = None  # succ[w]: mask of R[w]
    labels: tuple[str, ...] = ()
    pred: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.succ is not None and self.pred is None:
            pred = [0] * self.points
            for w, s in enumerate(self.succ):
                for v in bits(s):
                    pred[v] |= 1 << w
            object.__setattr__(self, "pred", tuple(pred))

    @classmethod
    def propositional(cls, X) -> "Structure":
        return cls(
            points=X.points,
            atom_sets={a: X.atom_set(a) for a in X.names},
            labels=tuple(X.valuation_name(c) for c in range(X.points)),
        )

    @property
    def modal(self) -> bool:
        return self.succ is not None

    @property
    def all_points(self) -> int:
        return (1 << self.points) - 1

    def image(self, team: int) -> int:
        """R[t]."""
        out = 0
        for w in bits(team):
            out |= self.succ[w]
        return out

    def preimage(self, team: int) -> int:
        """R^-1[t]."""
        out = 0
        for w in bits(team):
            out |= self.pred[w]
        return out

    def successors(self, team: int) -> Iterator[int]:
        """All s with tRs: s within R[t] and t within R^-1[s]."""
        frontier = self.image(team)
        if frontier.bit_count() > MAX_SUCCESSOR_FRONTIER:
            raise ValueError(f"successor frontier of {frontier.bit_count()} worlds is too large")
        for s in submasks(frontier):
            if team & ~self.preimage(s) == 0:
                yield s

    def is_successor(self, team: int, s: int) -> bool:
        return s & ~self.image(team) == 0 and team & ~self.preimage(s) == 0
