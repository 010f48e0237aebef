"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from teamlogic.formula import (
    BOT,
    NONEMPTY,
    TOP,
    And,
    Atom,
    Box,
    Dep,
    Dia,
    GBox,
    GDia,
    GlobalOr,
    Impl,
    LaxGlobalOr,
    LaxSplitOr,
    Might,
    Neg,
    SplitOr,
)

PROP_BINARY = (And, SplitOr, LaxSplitOr, Impl, GlobalOr, LaxGlobalOr)
PROP_UNARY = (Neg, Might)
MODAL_UNARY = (Dia, Box, GDia, GBox)


def formulas(names=("p", "q", "r"), modal=False, max_leaves=12):
    atoms = st.sampled_from([Atom(n) for n in names])
    leaves = st.one_of(atoms, st.sampled_from([BOT, TOP, NONEMPTY]))
    unary = PROP_UNARY + (MODAL_UNARY if modal else ())

    def extend(children):
        return st.one_of(
            st.builds(lambda op, a, b: op(a, b), st.sampled_from(PROP_BINARY), children, children),
            st.builds(lambda op, a: op(a), st.sampled_from(unary), children),
            st.builds(lambda args, h: Dep(tuple(args), h), st.lists(atoms, max_size=2), atoms),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def properties(points):
    """Random property masks over ``points`` evaluation points."""
    return st.integers(min_value=0, max_value=(1 << (1 << points)) - 1)
