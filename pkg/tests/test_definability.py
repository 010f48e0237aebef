import random

import pytest

from teamlogic.closure import Cls, in_class
from teamlogic.definability import (
    GLOBAL_OR,
    IDENTITY,
    NONEMPTINESS,
    SPLIT_OR,
    ArityError,
    Context,
    PropertyFunction,
    apply_context,
    check_uniform,
    class_members,
    property_function,
    search_context,
)
from teamlogic.formula import And, Impl
from teamlogic.parser import parse
from teamlogic.prop import extension
from teamlogic.teams import Domain, Property

PQ = Domain("p,q")
P1 = Domain("p")
V1, V2, V3 = 1 << 3, 1 << 1, 1 << 2  # v_pq, v_p~q, v_~pq


def test_apply_context_examples():
    P = Property.from_teams([0, V1, V1 | V2], 4)
    assert apply_context(r"_1 /\ _2", [P, P], PQ) == P
    E = Property.from_teams([0], 4)
    assert apply_context(r"_1 \/. _2", [E, E], PQ) == E
    A = Property.from_teams([V1, V2 | V3], 4)
    B = Property.from_teams([V1], 4)
    assert apply_context(r"_1 \/ _2", [A, B], PQ).teams() == [V1, V1 | V2 | V3]


def test_apply_context_arity_mismatch():
    with pytest.raises(ArityError):
        apply_context(r"_1 \/ _2", [Property.full(4)], PQ)
    with pytest.raises(ArityError):
        Context("_2")


def test_context_with_unused_holes():
    c = Context("bot", arity=2)
    assert apply_context(c, [Property.full(2), Property.full(2)], P1).teams() == [0]


@pytest.mark.parametrize(
    "cls, X, count",
    [("DE", "p,q", 167), ("A", "p", 16), ("F", "p", 4), ("C", "p", 13), ("C", "p,q", 3938), ("CU", "p,q", 283)],
)
def test_class_member_counts(cls, X, count):
    members = list(class_members(cls, X))
    assert len(members) == count
    assert all(in_class(P, cls) for P in members)


def test_flat_members_match_filter():
    flat = {P.mask for P in class_members("F", PQ)}
    from teamlogic.teams import all_properties

    assert flat == {P.mask for P in all_properties(PQ) if in_class(P, "F")}


def test_lax_split_or_defines_split_or_on_downsets():
    assert check_uniform(r"_1 \/. _2", SPLIT_OR, "DE", PQ) == (True, None)
    assert check_uniform(r"_1 \\/. _2", GLOBAL_OR, "DE", PQ) == (True, None)


def test_lax_split_or_fails_on_convex():
    ok, witness = check_uniform(r"_1 \/. _2", "or", "C", P1)
    assert not ok
    P, Q = witness
    assert apply_context(r"_1 \/. _2", [P, Q], P1) != SPLIT_OR(P1, P, Q)


def test_known_convex_pair_is_a_counterexample():
    P = Property.from_teams([V1, V2 | V3], 4)
    Q = Property.from_teams([V1], 4)
    assert in_class(P, "C") and in_class(Q, "C")
    assert not in_class(SPLIT_OR(PQ, P, Q), "C")
    assert apply_context(r"_1 \/. _2", [P, Q], PQ) != SPLIT_OR(PQ, P, Q)


def test_might_top_defines_ne():
    assert check_uniform("might top", NONEMPTINESS, "A", PQ) == (True, None)


def test_uniform_arity_mismatch():
    with pytest.raises(ArityError):
        check_uniform("_1", SPLIT_OR, "DE", P1)


def test_context_application_depends_only_on_extensions():
    # equivalent formulas plugged into a context give the same result
    rng = random.Random(0)
    pairs = [("p", r"p \/ p"), ("might q", r"(q /\ ne) \/ top"), ("=(p)", r"p \\/ ~p"), (r"p \/ q", r"q \/ p")]
    ctx = Context(r"(_1 \/. might _2) -> _1")
    for a, b in pairs:
        ea, eb = extension(parse(a), PQ), extension(parse(b), PQ)
        assert ea == eb
        other = Property(rng.getrandbits(16), 4)
        assert apply_context(ctx, [ea, other], PQ) == apply_context(ctx, [eb, other], PQ)


def test_property_function_lookup():
    assert property_function("or") is SPLIT_OR
    assert property_function("impl").arity == 2
    f = property_function(r"_1 /\ _2")
    P, Q = Property(0b1011, 2), Property(0b0110, 2)
    assert f(P1, P, Q) == P & Q
    with pytest.raises(ArityError):
        SPLIT_OR(P1, P)


def test_search_examples():
    c = search_context("or", "DE", P1, "CONDEP", 2)
    assert c is not None and check_uniform(c, "or", "DE", P1)[0]
    assert str(c) == r"_1 \/. _2"
    d = search_context("gor", "F", P1, "PLIM", 4)
    assert d is not None and check_uniform(d, "gor", "F", P1)[0]
    assert search_context(IDENTITY, "C", P1, "PLIM", 0).formula == parse("_1")


def test_search_result_generalizes_to_two_atoms():
    d = search_context("gor", "F", P1, "PLIM", 4)
    assert check_uniform(d, "gor", "F", PQ)[0]


def test_search_can_fail_within_bound():
    assert search_context("or", "C", P1, "PLIM", 1) is None


def test_search_is_deterministic():
    a = search_context("gor", "F", P1, "PLIM", 4)
    b = search_context("gor", "F", P1, "PLIM", 4)
    assert a == b
