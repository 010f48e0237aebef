"""Pure-Python property kernels.

A property over ``m`` points is an int whose bit ``t`` says whether the team
with code ``t`` (bit ``i`` of ``t``: point ``i`` is in the team) belongs to it.
All kernels are bit-parallel: one big-int shift moves every team at once.
"""

from __future__ import annotations

from functools import lru_cache

BACKEND = "python"


@lru_cache(maxsize=None)
def point_masks(m: int) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """Per point ``i``: property mask of the teams containing ``i``, and of those lacking it."""
    T = 1 << m
    full = (1 << T) - 1
    with_pt = []
    for i in range(m):
        step = 1 << i
        pattern = ((1 << step) - 1) << step
        width = 2 * step
        while width < T:
            pattern |= pattern << width
            width *= 2
        with_pt.append(pattern)
    without = tuple(full ^ w for w in with_pt)
    return tuple(with_pt), without, full


def down_closure(P: int, m: int) -> int:
    """All subteams of members of P."""
    with_pt, _, _ = point_masks(m)
    for i, w in enumerate(with_pt):
        P |= (P & w) >> (1 << i)
    return P


def up_closure(P: int, m: int) -> int:
    """All superteams (within the m points) of members of P."""
    _, without, _ = point_masks(m)
    for i, w in enumerate(without):
        P |= (P & w) << (1 << i)
    return P


def _union_with(Q: int, team: int, m: int) -> int:
    """The property {s | team : s in Q}."""
    with_pt, without, _ = point_masks(m)
    i = 0
    while team:
        if team & 1:
            Q = ((Q & without[i]) << (1 << i)) | (Q & with_pt[i])
        team >>= 1
        i += 1
    return Q


def split_or(P: int, Q: int, m: int) -> int:
    """The property {s | u : s in P, u in Q}."""
    if P.bit_count() > Q.bit_count():
        P, Q = Q, P
    out = 0
    while P:
        low = P & -P
        out |= _union_with(Q, low.bit_length() - 1, m)
        P ^= low
    return out
