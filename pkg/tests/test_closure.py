import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from teamlogic import kernels
from teamlogic.closure import (
    Cls,
    check_closure,
    in_class,
    is_convex,
    is_downward,
    is_downward_mod_empty,
    is_union_closed,
    mask_in_class,
    random_formula,
    random_property,
)
from teamlogic.fragments import FragmentId, in_fragment
from teamlogic.parser import parse
from teamlogic.prop import extension, extension_int
from teamlogic.teams import Domain, Property, all_properties, bits

from _oracles import brute_class_counts, brute_convex_witness, brute_union_closed

PQ = Domain("p,q")
V1, V2, V3 = 1 << 3, 1 << 1, 1 << 2  # v_pq, v_p~q, v_~pq


def test_report_examples():
    P = Property.from_teams([V1, V1 | V2 | V3], 4)
    rep = check_closure(P)
    assert not rep.convex
    assert rep.convex_witness == (V1, V1 | V2, V1 | V2 | V3)
    assert not check_closure(extension(parse("=(q; p)"), PQ)).union_closed
    assert check_closure(extension(parse(r"p /\ ~(q \/ ~p)"), PQ)).flat
    empty = check_closure(Property.empty(4))
    assert empty.downward and empty.upward and empty.convex and empty.union_closed
    assert not empty.empty_team and not empty.flat


def test_class_examples():
    E = extension(parse(r"might p /\ might ~p"), PQ)
    assert in_class(E, "C") and not in_class(E, "DE")
    assert in_class(extension(parse("bot"), PQ), "DE")


def test_report_json():
    rep = check_closure(Property.from_teams([V1, V1 | V2 | V3], 4))
    data = json.loads(json.dumps(rep.to_json(PQ.team_json)))
    assert data["convex"] is False and data["partial_union"] is False
    assert data["convex_witness"][0] == [{"p": 1, "q": 1}]


@pytest.mark.parametrize("X", ["p", "p,q"])
def test_flags_against_brute_force(X):
    X = Domain(X)
    for P in all_properties(X):
        rep = check_closure(P)
        w = brute_convex_witness(P.mask)
        assert rep.convex == (w is None)
        assert rep.convex_witness == w
        assert rep.flat == (rep.downward and rep.union_closed and rep.empty_team)
        assert rep.partial_union == (rep.convex and rep.union_closed)
        if X.n == 1:
            assert rep.union_closed == brute_union_closed(P.mask)


@pytest.mark.parametrize("X", ["p", "p,q"])
def test_downward_and_upward_via_convexity(X):
    X = Domain(X)
    m = X.points
    full_team = (1 << m) - 1
    for P in all_properties(X):
        rep = check_closure(P)
        assert rep.downward == (rep.convex and (P.mask == 0 or rep.empty_team))
        assert rep.upward == (rep.convex and (P.mask == 0 or full_team in P))


def test_flat_means_powerset_of_singletons():
    for P in all_properties(PQ):
        singles = sum(1 << v for v in range(4) if (1 << v) in P)
        assert check_closure(P).flat == (P.mask == kernels.down_closure(1 << singles, 4))


def test_class_counts_against_independent_oracle():
    # triple-based convexity and pairwise unions, without the closure kernels
    counts = brute_class_counts(2)
    assert counts == {"C": 3938, "CU": 283, "DE": 167}
    assert sum(mask_in_class(m, 4, Cls.C) for m in range(1 << 16)) == 3938
    assert sum(mask_in_class(m, 2, Cls.C) for m in range(16)) == 13


@pytest.mark.parametrize("cls", ["A", "C", "CU", "DE", "U", "F"])
@pytest.mark.parametrize("X", ["p", "p,q", "p,q,r"])
def test_random_property_is_in_class(cls, X):
    X = Domain(X)
    rng = random.Random(f"{cls}{X}")
    seen = set()
    for _ in range(40):
        P = random_property(X, cls, rng)
        assert in_class(P, cls)
        seen.add(P.mask)
    assert len(seen) > 1


def test_random_property_is_seeded():
    assert random_property("p,q,r", "CU", 5) == random_property("p,q,r", "CU", 5)


@pytest.mark.parametrize("frag", [FragmentId.CONDEP, FragmentId.CONINQ, FragmentId.PLIM])
def test_might_free_variants_are_downward_modulo_empty(frag):
    rng = random.Random(frag.value)
    X = Domain("p,q,r")
    for _ in range(200):
        f = random_formula(frag, X.names, rng, ne_for_might=True)
        assert "might" not in str(f)
        assert is_downward_mod_empty(extension_int(f, X), 8), str(f)


@pytest.mark.parametrize("frag", [FragmentId.DEP, FragmentId.INQ])
def test_downward_fragments(frag):
    rng = random.Random(frag.value)
    for _ in range(200):
        f = random_formula(frag, PQ.names, rng)
        E = extension_int(f, PQ)
        assert is_downward(E, 4) and E & 1


@pytest.mark.parametrize("frag", list(FragmentId))
def test_random_formulas_stay_in_fragment(frag):
    rng = random.Random(frag.value)
    for _ in range(50):
        assert in_fragment(random_formula(frag, ("p", "q"), rng), frag)


@settings(max_examples=200)
@given(st.integers(0, (1 << 16) - 1))
def test_mask_predicates_match_report(mask):
    P = Property(mask, 4)
    rep = check_closure(P)
    assert is_convex(mask, 4) == rep.convex
    assert is_union_closed(mask, 4) == rep.union_closed
    assert is_downward_mod_empty(mask, 4) == rep.downward_mod_empty
