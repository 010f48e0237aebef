"""Propositional satisfaction, extensions, entailment and equivalence."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, MutableMapping

from .evaluate import EvaluationError, extension_mask, sat_direct
from .formula import Formula, Hole, _unique, atoms
from .fragments import is_modal_syntax
from .structure import Structure
from .teams import Domain, Property

MAX_PROP_EXTENSION_ATOMS = 4


@lru_cache(maxsize=64)
def structure_of(X: Domain) -> Structure:
    return Structure.propositional(X)


def check_propositional(f: Formula, X: Domain, allow_holes: bool = False) -> None:
    """Raise EvaluationError unless ``f`` is a propositional formula over X."""
    missing = atoms(f) - set(X.names)
    if missing:
        raise EvaluationError(f"atoms {sorted(missing)} are not in the domain {list(X.names)}")
    if is_modal_syntax(f):
        raise EvaluationError("modal operator in a propositional formula")
    if not allow_holes and any(isinstance(g, Hole) for g in _unique(f)):
        raise EvaluationError("formula contains context holes")


def _check_team(t: int, X: Domain) -> None:
    if t < 0 or t >> X.points:
        raise EvaluationError(f"team mask {t} is not over {X.points} valuations")


def sat(f: Formula, t: int, X: Domain | str) -> bool:
    """``t |= f`` for a team mask ``t`` over X, straight from the clauses."""
    X = Domain.parse(X)
    check_propositional(f, X)
    _check_team(t, X)
    return sat_direct(f, structure_of(X), t)


def extension_int(f: Formula, X: Domain, cache: MutableMapping[Formula, int] | None = None) -> int:
    """Raw mask of ``extension``; ``cache`` may be shared across calls at the same X."""
    if X.n > MAX_PROP_EXTENSION_ATOMS:
        raise EvaluationError(f"extensions are computed for at most {MAX_PROP_EXTENSION_ATOMS} atoms")
    return extension_mask(f, structure_of(X), cache=cache)


def extension(f: Formula, X: Domain | str) -> Property:
    """The property of all teams over X satisfying ``f``."""
    X = Domain.parse(X)
    check_propositional(f, X)
    return Property(extension_int(f, X), X.points)


def entails(premises: Iterable[Formula], f: Formula, X: Domain | str) -> tuple[bool, int | None]:
    """Whether every team satisfying all premises satisfies ``f``.

    On failure the least-code counterexample team is returned as well.
    """
    X = Domain.parse(X)
    S = structure_of(X)
    cache: dict[Formula, int] = {}
    common = (1 << (1 << X.points)) - 1
    for g in premises:
        check_propositional(g, X)
        common &= extension_mask(g, S, cache=cache)
    check_propositional(f, X)
    bad = common & ~extension_mask(f, S, cache=cache)
    if not bad:
        return True, None
    return False, (bad & -bad).bit_length() - 1


def equivalent(f: Formula, g: Formula, X: Domain | str) -> bool:
    X = Domain.parse(X)
    return extension(f, X) == extension(g, X)
