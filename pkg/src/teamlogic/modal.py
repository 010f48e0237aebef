"""Kripke models, modal teams and the modal evaluator."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from .evaluate import MAX_MODAL_EXTENSION_POINTS, EvaluationError, extension_mask, sat_direct
from .formula import Formula, Hole, _unique, atoms
from .structure import Structure
from .teams import Property, bits


class ModelError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class KripkeModel:
    """A finite model (W, R, V) with named worlds.

    Teams are int masks over the world order of ``worlds``.
    """

    worlds: tuple[str, ...]
    rel: frozenset[tuple[str, str]]
    val: Mapping[str, frozenset[str]]
    structure: Structure = field(init=False, repr=False)

    def __post_init__(self):
        worlds = tuple(self.worlds)
        if not worlds:
            raise ModelError("a model needs at least one world")
        if len(set(worlds)) != len(worlds):
            raise ModelError("duplicate world names")
        index = {w: i for i, w in enumerate(worlds)}
        rel = frozenset((a, b) for a, b in self.rel)
        for a, b in rel:
            if a not in index or b not in index:
                raise ModelError(f"relation pair ({a}, {b}) mentions an unknown world")
        val = {p: frozenset(ws) for p, ws in self.val.items()}
        for p, ws in val.items():
            unknown = ws - index.keys()
            if unknown:
                raise ModelError(f"valuation of {p!r} mentions unknown worlds {sorted(unknown)}")
        succ = [0] * len(worlds)
        for a, b in rel:
            succ[index[a]] |= 1 << index[b]
        atom_sets = {p: sum(1 << index[w] for w in ws) for p, ws in val.items()}
        object.__setattr__(self, "worlds", worlds)
        object.__setattr__(self, "rel", rel)
        object.__setattr__(self, "val", val)
        object.__setattr__(
            self, "structure", Structure(len(worlds), atom_sets, tuple(succ), labels=worlds)
        )

    # construction and JSON ------------------------------------------------

    @classmethod
    def from_json(cls, data: Mapping) -> "KripkeModel":
        if not isinstance(data, Mapping):
            raise ModelError("a model is a JSON object with worlds, rel and val")
        unknown = set(data) - {"worlds", "rel", "val"}
        if unknown:
            raise ModelError(f"unknown model keys {sorted(unknown)}; expected worlds, rel, val")
        try:
            worlds = [str(w) for w in data["worlds"]]
            rel = [(str(a), str(b)) for a, b in data.get("rel", [])]
            val = {str(p): [str(w) for w in ws] for p, ws in data.get("val", {}).items()}
        except (KeyError, TypeError, ValueError) as e:
            raise ModelError(f"malformed model JSON: {e}") from None
        return cls(tuple(worlds), frozenset(rel), val)

    @classmethod
    def load(cls, path: str | Path) -> "KripkeModel":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict:
        return {
            "worlds": list(self.worlds),
            "rel": sorted([a, b] for a, b in self.rel),
            "val": {p: [w for w in self.worlds if w in ws] for p, ws in sorted(self.val.items())},
        }

    # teams ----------------------------------------------------------------

    def team(self, names: Iterable[str]) -> int:
        t = 0
        for w in names:
            try:
                t |= 1 << self.worlds.index(w)
            except ValueError:
                raise ModelError(f"unknown world {w!r}") from None
        return t

    def team_names(self, team: int) -> list[str]:
        return [self.worlds[i] for i in bits(team)]

    def image(self, team: int) -> int:
        return self.structure.image(team)

    def preimage(self, team: int) -> int:
        return self.structure.preimage(team)

    def successors(self, team: int) -> Iterator[int]:
        """All teams s with tRs, as masks in increasing order."""
        return self.structure.successors(team)

    @property
    def all_worlds(self) -> int:
        return self.structure.all_points


def _as_team(M: KripkeModel, t: int | Sequence[str]) -> int:
    if isinstance(t, int):
        if t < 0 or t >> len(M.worlds):
            raise ModelError(f"team mask {t} is not over {len(M.worlds)} worlds")
        return t
    return M.team(t)


def _check_formula(f: Formula, M: KripkeModel) -> None:
    missing = atoms(f) - set(M.val)
    if missing:
        raise EvaluationError(f"atoms {sorted(missing)} are not interpreted by the model")
    if any(isinstance(g, Hole) for g in _unique(f)):
        raise EvaluationError("formula contains context holes")


def msat(f: Formula, M: KripkeModel, t: int | Sequence[str]) -> bool:
    """``M, t |= f``; ``t`` is a world mask or a list of world names."""
    _check_formula(f, M)
    return sat_direct(f, M.structure, _as_team(M, t))


def mextension(f: Formula, M: KripkeModel) -> Property:
    """All teams of M satisfying ``f``."""
    _check_formula(f, M)
    if len(M.worlds) > MAX_MODAL_EXTENSION_POINTS:
        raise EvaluationError(f"models with more than {MAX_MODAL_EXTENSION_POINTS} worlds are too large")
    return Property(extension_mask(f, M.structure), len(M.worlds))


def gap_model() -> KripkeModel:
    """A three-world model on which the global diamond is not convex.

    Worlds are named after the atoms they make true (``n`` marks a false atom).

    Every world sees itself, and ``w_npr`` also sees ``w_pnr``; p holds at
    ``w_pr`` and ``w_pnr``, r at ``w_pr`` and ``w_npr``.
    """
    worlds = ("w_pr", "w_pnr", "w_npr")
    rel = {(w, w) for w in worlds} | {("w_npr", "w_pnr")}
    return KripkeModel(worlds, frozenset(rel), {"p": ["w_pr", "w_pnr"], "r": ["w_pr", "w_npr"]})


def random_model(
    rng: random.Random, max_worlds: int = 4, atoms: Sequence[str] = ("p", "q"), density: float = 0.4
) -> KripkeModel:
    """A model with 1..max_worlds worlds, random edges and random valuation."""
    n = rng.randint(1, max_worlds)
    worlds = tuple(f"w{i}" for i in range(n))
    rel = frozenset((a, b) for a in worlds for b in worlds if rng.random() < density)
    val = {p: [w for w in worlds if rng.random() < 0.5] for p in atoms}
    return KripkeModel(worlds, rel, val)
