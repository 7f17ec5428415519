"""Independent reference implementations and shared fixtures for the tests.

These oracles deliberately avoid the library's own algorithms: cycles come
from permutation enumeration, field products from shift-and-reduce, ranks
from a from-scratch elimination.  Expected values asserted in the tests were
computed with these.
"""

from __future__ import annotations

import itertools

from icc import Digraph


def ref_gf_mul(a: int, b: int) -> int:
    """Carry-less multiply reduced by 0x11D, one bit at a time."""
    p = 0
    while b:
        if b & 1:
            p ^= a
        a <<= 1
        if a & 0x100:
            a ^= 0x11D
        b >>= 1
    return p & 0xFF


def _ref_inverses() -> dict[int, int]:
    inv = {}
    for x in range(1, 256):
        for y in range(1, 256):
            if ref_gf_mul(x, y) == 1:
                inv[x] = y
                break
    return inv


_REF_INV = _ref_inverses()


def ref_gf_rank(rows: list[list[int]]) -> int:
    """Rank over GF(2^8) using only the reference multiply."""
    inv = _REF_INV
    work = [row[:] for row in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    row_at = 0
    for col in range(cols):
        piv = next((r for r in range(row_at, len(work)) if work[r][col]), None)
        if piv is None:
            continue
        work[row_at], work[piv] = work[piv], work[row_at]
        scale = inv[work[row_at][col]]
        work[row_at] = [ref_gf_mul(scale, x) for x in work[row_at]]
        for r in range(len(work)):
            if r != row_at and work[r][col]:
                f = work[r][col]
                work[r] = [x ^ ref_gf_mul(f, y) for x, y in zip(work[r], work[row_at])]
        rank += 1
        row_at += 1
    return rank


def brute_simple_cycles(g: Digraph, max_len: int) -> set[tuple[int, ...]]:
    """All simple cycles up to max_len by permutation enumeration (n <= 8)."""
    out = set()
    verts = list(g.vertices())
    for length in range(2, max_len + 1):
        for subset in itertools.combinations(verts, length):
            first = subset[0]
            for rest in itertools.permutations(subset[1:]):
                cyc = (first, *rest, first)
                if all((a, b) in g.arcs for a, b in zip(cyc, cyc[1:])):
                    out.add(cyc)
    return out


def brute_is_acyclic(g: Digraph) -> bool:
    return not brute_simple_cycles(g, g.n)


def bidirected_triangle() -> Digraph:
    return Digraph(3, [(1, 2), (2, 1), (2, 3), (3, 2), (1, 3), (3, 1)])


def bidirected_cycle(n: int) -> Digraph:
    arcs = []
    for i in range(1, n + 1):
        j = i % n + 1
        arcs += [(i, j), (j, i)]
    return Digraph(n, arcs)


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete_symmetric(n: int) -> Digraph:
    return Digraph(n, [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v])


# 4-IC structure whose non-inner vertices {5, 6} form a 2-cycle; inner
# {1, 2, 3, 4} splits into the disjoint 2-cliques {1, 3} and {2, 4}.
CASE2_SIX = Digraph(
    6,
    [
        (1, 5), (1, 3), (2, 1), (2, 3), (2, 4), (3, 6), (3, 1),
        (4, 1), (4, 2), (4, 3), (5, 6), (5, 4), (6, 2), (6, 5),
    ],
)
CASE2_SIX_INNER = frozenset({1, 2, 3, 4})

# 4-IC structure whose non-inner vertices {5, 6, 7} form a 3-cycle.
CASE2_SEVEN_ARCS = [
    (1, 5), (5, 6), (6, 2), (3, 6), (6, 7), (7, 5), (5, 4),
    (1, 3), (3, 1), (2, 1), (2, 3), (2, 4), (4, 1), (4, 2), (4, 3),
]
CASE2_SEVEN = Digraph(7, CASE2_SEVEN_ARCS)
CASE2_SEVEN_INNER = frozenset({1, 2, 3, 4})

# Same digraph plus the arc (7, 6), which cannot sit on any I-path: every
# route into 7 passes through 6 already.
UNCOVERED_ARC_GRAPH = Digraph(7, CASE2_SEVEN_ARCS + [(7, 6)])

# Five vertices whose two 2-cycles share vertex 2 only: MAIS = 4.
ICYCLE_FIVE = Digraph(5, [(1, 2), (2, 1), (2, 4), (4, 2), (5, 1), (4, 3)])
