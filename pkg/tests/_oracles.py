"""Slow reference implementations that avoid the library's closure kernels."""

from itertools import combinations

from teamlogic.teams import bits


def brute_convex_witness(mask):
    members = list(bits(mask))
    best = None
    for s in members:
        for t in members:
            if s & ~t:
                continue
            for u in range(s, t + 1):
                if s & ~u == 0 and u & ~t == 0 and not mask >> u & 1:
                    cand = (s, u, t)
                    if best is None or cand < best:
                        best = cand
    return best


def brute_union_closed(mask):
    members = list(bits(mask))
    for k in range(1, len(members) + 1):
        for family in combinations(members, k):
            u = 0
            for t in family:
                u |= t
            if not mask >> u & 1:
                return False
    return True


def brute_class_counts(n_atoms):
    """Counts of convex, convex union-closed and downward-with-empty properties."""
    counts = {"C": 0, "CU": 0, "DE": 0}
    points = 1 << n_atoms
    for mask in range(1 << (1 << points)):
        convex = brute_convex_witness(mask) is None
        members = list(bits(mask))
        unions = all(mask >> (s | t) & 1 for s in members for t in members)
        downward = all(mask >> s & 1 for t in members for s in range(1 << points) if s & ~t == 0)
        counts["C"] += convex
        counts["CU"] += convex and unions
        counts["DE"] += downward and mask & 1
    return counts
