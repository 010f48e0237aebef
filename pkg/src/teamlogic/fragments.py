"""Fragment grammars of the propositional and modal team logics.

Every fragment is described by a :class:`Grammar` row: which binary and
unary connectives it admits, which leaves, what ``~`` may be applied to,
and what may appear inside dependence atoms. :func:`in_fragment` and the
random formula generator both read the same table.

``top`` (``~bot``) is accepted in every fragment: the truth constant is an
abbreviation available in all the languages, whichever negation they use.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .formula import (
    TOP,
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
    recursion_room,
)


class FragmentId(str, enum.Enum):
    PL_or = "PL_or"
    PL_lor = "PL_lor"
    PL_impl = "PL_impl"
    DEP = "DEP"
    CONDEP = "CONDEP"
    INQ = "INQ"
    CONINQ = "CONINQ"
    PLIM = "PLIM"
    PL_NE = "PL_NE"
    ML_or_dia = "ML_or_dia"
    ML_lor_dia = "ML_lor_dia"
    ML_impl_dia = "ML_impl_dia"
    ML_or_gdia = "ML_or_gdia"
    ML_lor_gdia = "ML_lor_gdia"
    ML_impl_gdia = "ML_impl_gdia"
    CONDEP_modal = "CONDEP_modal"
    CONINQ_modal = "CONINQ_modal"
    PLIM_modal = "PLIM_modal"
    CONDEP_gmodal = "CONDEP_gmodal"
    CONINQ_gmodal = "CONINQ_gmodal"
    PLIM_gmodal = "PLIM_gmodal"
    ML_NE_flat = "ML_NE_flat"
    ML_NE_global = "ML_NE_global"

    @classmethod
    def lookup(cls, name: str) -> "FragmentId":
        for f in cls:
            if f.value.lower() == name.lower():
                return f
        raise KeyError(f"unknown fragment {name!r}; known: {', '.join(f.value for f in cls)}")


@dataclass(frozen=True)
class Grammar:
    binary: frozenset[type]
    unary: frozenset[type]
    ne: bool = False
    neg_base: FragmentId | None = None  # operand grammar of ~, None: no ~
    dep_base: FragmentId | None = None  # grammar of dep arguments, None: no dep
    dep_atoms_only: bool = True
    modal: bool = False
    classical: bool = False


_FLAT_MODAL = frozenset({Dia, Box})
_GLOBAL_MODAL = frozenset({GDia, GBox})

F = FragmentId
GRAMMARS: dict[FragmentId, Grammar] = {
    F.PL_or: Grammar(frozenset({And, SplitOr}), frozenset(), neg_base=F.PL_or, classical=True),
    F.PL_lor: Grammar(frozenset({And, LaxSplitOr}), frozenset(), neg_base=F.PL_lor, classical=True),
    F.PL_impl: Grammar(frozenset({And, Impl}), frozenset(), classical=True),
    F.DEP: Grammar(frozenset({And, SplitOr}), frozenset(), neg_base=F.PL_or, dep_base=F.PL_or),
    F.CONDEP: Grammar(frozenset({And, LaxSplitOr}), frozenset({Might}), neg_base=F.PL_lor, dep_base=F.PL_lor),
    F.INQ: Grammar(frozenset({And, Impl, GlobalOr}), frozenset()),
    F.CONINQ: Grammar(frozenset({And, Impl, LaxGlobalOr}), frozenset({Might})),
    F.PLIM: Grammar(frozenset({And, Impl}), frozenset({Might})),
    F.PL_NE: Grammar(frozenset({And, SplitOr}), frozenset(), ne=True, neg_base=F.PL_or),
    F.ML_or_dia: Grammar(frozenset({And, SplitOr}), _FLAT_MODAL, neg_base=F.ML_or_dia, modal=True, classical=True),
    F.ML_lor_dia: Grammar(
        frozenset({And, LaxSplitOr}), _FLAT_MODAL, neg_base=F.ML_lor_dia, modal=True, classical=True
    ),
    F.ML_impl_dia: Grammar(frozenset({And, Impl}), _FLAT_MODAL, modal=True, classical=True),
    F.ML_or_gdia: Grammar(
        frozenset({And, SplitOr}), _GLOBAL_MODAL, neg_base=F.ML_or_gdia, modal=True, classical=True
    ),
    F.ML_lor_gdia: Grammar(
        frozenset({And, LaxSplitOr}), _GLOBAL_MODAL, neg_base=F.ML_lor_gdia, modal=True, classical=True
    ),
    F.ML_impl_gdia: Grammar(frozenset({And, Impl}), _GLOBAL_MODAL, modal=True, classical=True),
    F.CONDEP_modal: Grammar(
        frozenset({And, LaxSplitOr}),
        _FLAT_MODAL | {Might},
        neg_base=F.ML_lor_dia,
        dep_base=F.ML_lor_dia,
        dep_atoms_only=False,
        modal=True,
    ),
    F.CONINQ_modal: Grammar(frozenset({And, Impl, LaxGlobalOr}), _FLAT_MODAL | {Might}, modal=True),
    F.PLIM_modal: Grammar(frozenset({And, Impl}), _FLAT_MODAL | {Might}, modal=True),
    F.CONDEP_gmodal: Grammar(
        frozenset({And, LaxSplitOr}),
        _GLOBAL_MODAL | {Might},
        neg_base=F.ML_lor_gdia,
        dep_base=F.ML_lor_gdia,
        dep_atoms_only=False,
        modal=True,
    ),
    F.CONINQ_gmodal: Grammar(frozenset({And, Impl, LaxGlobalOr}), _GLOBAL_MODAL | {Might}, modal=True),
    F.PLIM_gmodal: Grammar(frozenset({And, Impl}), _GLOBAL_MODAL | {Might}, modal=True),
    F.ML_NE_flat: Grammar(frozenset({And, SplitOr}), _FLAT_MODAL, ne=True, neg_base=F.ML_or_dia, modal=True),
    F.ML_NE_global: Grammar(
        frozenset({And, SplitOr}), _GLOBAL_MODAL, ne=True, neg_base=F.ML_or_gdia, modal=True
    ),
}
del F

PROPOSITIONAL = tuple(f for f, g in GRAMMARS.items() if not g.modal)
MODAL = tuple(f for f, g in GRAMMARS.items() if g.modal)


def offending_subformula(f: Formula, frag: FragmentId, allow_holes: bool = False) -> Formula | None:
    """Return the first subformula (pre-order) that violates the grammar, or None."""
    g = GRAMMARS[frag]
    memo: dict[int, Formula | None] = {}

    def bad(h: Formula) -> Formula | None:
        k = id(h)
        if k in memo:
            return memo[k]
        memo[k] = out = _check(h)
        return out

    def _check(h: Formula) -> Formula | None:
        if h == TOP or isinstance(h, (Atom, Bot)):
            return None
        if isinstance(h, Hole):
            return None if allow_holes else h
        if isinstance(h, NE):
            return None if g.ne else h
        if isinstance(h, Neg):
            if g.neg_base is None:
                return h
            inner = offending_subformula(h.arg, g.neg_base, allow_holes)
            return None if inner is None else inner
        if isinstance(h, Dep):
            if g.dep_base is None:
                return h
            for a in h.children():
                if g.dep_atoms_only:
                    if not isinstance(a, Atom):
                        return a
                else:
                    inner = offending_subformula(a, g.dep_base, allow_holes)
                    if inner is not None:
                        return inner
            return None
        if type(h) in g.binary or type(h) in g.unary:
            for c in h.children():
                b = bad(c)
                if b is not None:
                    return b
            return None
        return h

    with recursion_room(f):
        return bad(f)


def in_fragment(f: Formula, frag: FragmentId, allow_holes: bool = False) -> bool:
    """True iff ``f`` is generated by the grammar of ``frag``."""
    return offending_subformula(f, frag, allow_holes) is None


def is_modal_syntax(f: Formula) -> bool:
    from .formula import _unique

    return any(isinstance(g, (Dia, Box, GDia, GBox)) for g in _unique(f))


__all__ = [
    "FragmentId",
    "Grammar",
    "GRAMMARS",
    "PROPOSITIONAL",
    "MODAL",
    "in_fragment",
    "offending_subformula",
    "is_modal_syntax",
]
