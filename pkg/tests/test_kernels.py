import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from teamlogic import _kernels_py, kernels
from teamlogic.teams import bits

BACKENDS = kernels.available_backends()


def brute_down(P, m):
    return sum(1 << s for s in range(1 << m) if any(s & ~t == 0 for t in bits(P)))


def brute_up(P, m):
    return sum(1 << s for s in range(1 << m) if any(t & ~s == 0 for t in bits(P)))


def brute_split(P, Q, m):
    out = 0
    for s in bits(P):
        for u in bits(Q):
            out |= 1 << (s | u)
    return out


def prop(m):
    return st.integers(0, (1 << (1 << m)) - 1)


@pytest.mark.parametrize("name", sorted(BACKENDS))
@settings(max_examples=150)
@given(data=st.data(), m=st.integers(0, 4))
def test_kernels_match_brute_force(name, data, m):
    k = BACKENDS[name]
    P, Q = data.draw(prop(m)), data.draw(prop(m))
    assert k.down_closure(P, m) == brute_down(P, m)
    assert k.up_closure(P, m) == brute_up(P, m)
    assert k.split_or(P, Q, m) == brute_split(P, Q, m)


@pytest.mark.parametrize("name", sorted(BACKENDS))
@settings(max_examples=30)
@given(data=st.data())
def test_kernels_at_eight_points(name, data):
    k = BACKENDS[name]
    m = 8
    members = data.draw(st.lists(st.integers(0, 255), max_size=6))
    others = data.draw(st.lists(st.integers(0, 255), max_size=6))
    P = sum(1 << t for t in set(members))
    Q = sum(1 << t for t in set(others))
    assert k.split_or(P, Q, m) == brute_split(P, Q, m)
    assert k.down_closure(P, m) == _kernels_py.down_closure(P, m)
    assert k.up_closure(P, m) == _kernels_py.up_closure(P, m)


def test_selected_backend_is_listed():
    assert kernels.BACKEND in {"python", "cython"}
    assert "python" in BACKENDS


def test_pure_env_forces_python(monkeypatch):
    import importlib

    monkeypatch.setenv("TEAMLOGIC_PURE", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("TEAMLOGIC_PURE")
        importlib.reload(kernels)


@pytest.mark.parametrize("m", range(11))
def test_backends_agree_on_dense_and_sparse_properties(m):
    backends = list(kernels.available_backends().values())
    rng = random.Random(m)
    T = 1 << m
    for _ in range(20):
        dense = rng.getrandbits(T), rng.getrandbits(T)
        sparse = tuple(sum(1 << t for t in rng.sample(range(T), min(T, 3))) for _ in range(2))
        for a, b in (dense, sparse, (dense[0], sparse[1])):
            outs = {(mod.split_or(a, b, m), mod.down_closure(a, m), mod.up_closure(b, m)) for mod in backends}
            assert len(outs) == 1
