import pickle

import pytest
from hypothesis import given, settings

from _strategies import formulas
from teamlogic.formula import (
    BOT,
    NBOT,
    NONEMPTY,
    TOP,
    And,
    Atom,
    Bot,
    Dep,
    GlobalOr,
    Hole,
    Impl,
    LaxGlobalOr,
    LaxSplitOr,
    Might,
    Neg,
    SplitOr,
    arity,
    atoms,
    big_and,
    big_or,
    depth,
    plug,
    size,
)
from teamlogic.fragments import MODAL, PROPOSITIONAL, FragmentId, in_fragment, offending_subformula
from teamlogic.parser import ParseError, parse, to_text

p, q, r = Atom("p"), Atom("q"), Atom("r")


@pytest.mark.parametrize(
    "text, expected",
    [
        (r"p /\ q", And(p, q)),
        ("=(p1, p2; q)", Dep((Atom("p1"), Atom("p2")), q)),
        ("top", Neg(Bot())),
        ("nbot", Might(BOT)),
        ("!p", Impl(p, BOT)),
        ("=(p)", Dep((), p)),
        ("=(;p)", Dep((), p)),
        (r"p \/ q \/ r", SplitOr(SplitOr(p, q), r)),
        ("p -> q -> r", Impl(p, Impl(q, r))),
        (r"~p /\ q", And(Neg(p), q)),
        (r"might p /\ might ~p", And(Might(p), Might(Neg(p)))),
        (r"p /\ q \\/. r", LaxGlobalOr(And(p, q), r)),
        (r"_1 \/. _2", LaxSplitOr(Hole(1), Hole(2))),
        ("ne", NONEMPTY),
    ],
)
def test_parse(text, expected):
    assert parse(text) == expected


@pytest.mark.parametrize(
    "f, text",
    [
        (And(p, BOT), r"p /\ bot"),
        (Might(r), "might r"),
        (LaxGlobalOr(p, q), r"p \\/. q"),
        (GlobalOr(p, q), r"p \\/ q"),
        (TOP, "top"),
        (Dep((p, q), r), "=(p, q; r)"),
        (Impl(And(p, q), BOT), r"!(p /\ q)"),
    ],
)
def test_print(f, text):
    assert to_text(f) == text


@pytest.mark.parametrize(
    "text",
    [r"p \/ q \\/ r", "p /\\", "(p", "P", "p q", "=(p, q)", "might", "_0", "p # q", ""],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as e:
        parse(r"p /\ ")
    assert e.value.pos == 5


def test_mixed_disjunctions_with_parentheses():
    assert parse(r"(p \/ q) \\/ r") == GlobalOr(SplitOr(p, q), r)


@settings(max_examples=400)
@given(formulas(modal=True))
def test_round_trip(f):
    assert parse(to_text(f)) == f


@given(formulas())
def test_hash_consistent_with_equality(f):
    g = parse(to_text(f))
    assert hash(f) == hash(g)
    assert pickle.loads(pickle.dumps(f)) == f


@pytest.mark.parametrize(
    "f, frag, expected",
    [
        (SplitOr(p, q), "CONDEP", False),
        (LaxSplitOr(p, Might(q)), "CONDEP", True),
        (GlobalOr(p, q), "PLIM", False),
        (Neg(Might(p)), "CONDEP", False),
        (Neg(And(p, Neg(q))), "DEP", True),
        (Neg(LaxSplitOr(p, q)), "DEP", False),
        (Dep((p,), q), "DEP", True),
        (Dep((Neg(p),), q), "DEP", False),
        (And(NONEMPTY, p), "PL_NE", True),
        (And(NONEMPTY, p), "CONDEP", False),
        (Might(p), "PL_NE", False),
        (Impl(Might(p), q), "PLIM", True),
        (LaxGlobalOr(Impl(p, BOT), Might(q)), "CONINQ", True),
        (parse("gdia (=(p) /\\ might r)"), "PLIM_gmodal", False),
        (parse("gdia (=(p) /\\ might r)"), "CONDEP_gmodal", True),
        (parse("=(dia p; box q)"), "CONDEP_modal", True),
        (parse("=(dia (p \\/. q); q)"), "CONDEP_modal", True),
        (parse("=(might p; q)"), "CONDEP_modal", False),
        (parse(r"dia (p \/ ne)"), "ML_NE_flat", True),
        (parse(r"gdia (p \/ ne)"), "ML_NE_flat", False),
        (TOP, "PLIM", True),
        (Hole(1), "PLIM", False),
    ],
)
def test_in_fragment(f, frag, expected):
    assert in_fragment(f, FragmentId.lookup(frag)) is expected


def test_holes_allowed_on_request():
    assert in_fragment(LaxSplitOr(Hole(1), Hole(2)), FragmentId.CONDEP, allow_holes=True)


def test_offending_subformula_is_reported():
    f = And(p, SplitOr(q, r))
    assert offending_subformula(f, FragmentId.CONDEP) == SplitOr(q, r)


CLASSICAL = [FragmentId.PL_or, FragmentId.PL_lor, FragmentId.PL_impl]


@given(formulas())
def test_fragment_inclusions(f):
    if in_fragment(f, FragmentId.PL_lor):
        assert in_fragment(f, FragmentId.CONDEP)
    if in_fragment(f, FragmentId.PL_impl):
        assert in_fragment(f, FragmentId.PLIM)
        assert in_fragment(f, FragmentId.CONINQ)
    if in_fragment(f, FragmentId.PLIM):
        assert in_fragment(f, FragmentId.CONINQ)
    if in_fragment(f, FragmentId.PL_or):
        assert in_fragment(f, FragmentId.DEP)
        assert in_fragment(f, FragmentId.PL_NE)


@given(formulas(modal=True))
def test_classical_fragments_have_no_team_connectives(f):
    from teamlogic.formula import walk

    for frag in CLASSICAL + [FragmentId.ML_or_dia, FragmentId.ML_lor_gdia]:
        if in_fragment(f, frag):
            kinds = {type(g) for g in walk(f)}
            assert not kinds & {Might, Dep, GlobalOr, LaxGlobalOr, type(NONEMPTY)}


def test_fragment_lookup():
    assert FragmentId.lookup("condep") is FragmentId.CONDEP
    assert set(PROPOSITIONAL) | set(MODAL) == set(FragmentId)
    with pytest.raises(KeyError):
        FragmentId.lookup("nope")


def test_helpers():
    f = big_or([p, q, r])
    assert f == SplitOr(SplitOr(p, q), r)
    assert big_or([]) == BOT
    assert big_and([]) == TOP
    assert atoms(f) == {"p", "q", "r"}
    assert depth(f) == 2 and size(f) == 5
    ctx = LaxSplitOr(Hole(1), Hole(2))
    assert arity(ctx) == 2
    assert plug(ctx, [p, q]) == LaxSplitOr(p, q)
    with pytest.raises(ValueError):
        arity(Hole(2))
    with pytest.raises(ValueError):
        Hole(0)
    assert NBOT == Might(BOT)
