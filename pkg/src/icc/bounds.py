"""Lower bounds and optimality certification.

The MAIS order (largest induced acyclic sub-digraph) lower-bounds every
achievable code length, so any scheme that meets it is provably optimal.
Certification follows two sufficient patterns on a validated structure: an
acyclic non-inner part (case 1), or a decomposition into non-inner cycles
plus case-1 sub-structures (case 2).  Failure to certify says nothing about
suboptimality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import CapExceededError
from .graphs import Digraph, _bits
from .structures import (
    DEFAULT_BUDGET,
    Candidate,
    ICStructure,
    _Budget,
    _cycle_orders,
    _mask_of,
    _tuple_of,
    structure_from_candidate,
    structures_for_inner,
)


def mais(g: Digraph, cap: int = 20) -> tuple[int, frozenset[int]]:
    """Order of the largest induced acyclic sub-digraph, with one witness set.

    Exact branch-and-bound on a minimum cycle-hitting set: find a cycle,
    branch on deleting each of its vertices, memoize on the surviving mask.
    """
    if g.n > cap:
        raise CapExceededError(f"mais cap {cap} exceeded by n={g.n}")
    full = (1 << g.n) - 1
    memo: dict[int, tuple[int, int]] = {}

    def hit(mask: int) -> tuple[int, int]:
        known = memo.get(mask)
        if known is not None:
            return known
        cyc = _find_cycle(g, mask)
        if cyc is None:
            res = (0, 0)
        else:
            best: tuple[int, int] | None = None
            for v in cyc:
                s, removed = hit(mask & ~(1 << v))
                if best is None or s + 1 < best[0]:
                    best = (s + 1, removed | (1 << v))
            res = best  # type: ignore[assignment]
        memo[mask] = res
        return res

    size, removed = hit(full)
    kept = full & ~removed
    return g.n - size, frozenset(_tuple_of(kept))


def _find_cycle(g: Digraph, mask: int) -> tuple[int, ...] | None:
    """One directed cycle inside the induced mask, as 0-based vertices, or None."""
    color = [0] * g.n
    stack_pos = [-1] * g.n
    for s in _bits(mask):
        if color[s]:
            continue
        stack: list[tuple[int, int]] = [(s, 0)]
        trail: list[int] = []
        color[s] = 1
        stack_pos[s] = 0
        trail.append(s)
        while stack:
            v, idx = stack.pop()
            nbrs = g.out_lists[v]
            advanced = False
            for k in range(idx, len(nbrs)):
                u = nbrs[k] - 1
                if not (mask >> u) & 1:
                    continue
                if color[u] == 1:
                    return tuple(trail[stack_pos[u] :])
                if color[u] == 0:
                    stack.append((v, k + 1))
                    stack.append((u, 0))
                    color[u] = 1
                    stack_pos[u] = len(trail)
                    trail.append(u)
                    advanced = True
                    break
            if not advanced:
                color[v] = 2
                trail.pop()
                stack_pos[v] = -1
    return None


@dataclass(frozen=True)
class OptimalityCertificate:
    """Certified pattern for one structure, reported in host labels.

    kind 'case1' or 'case2' certifies length = MAIS = N - K + 1; 'none' means
    not certified (not refuted).  removed is the cycle-hitting witness whose
    deletion leaves the structure acyclic, |removed| = K - 1.
    """

    kind: str
    removed: frozenset[int]
    cycles: tuple[tuple[int, ...], ...] = ()
    groups: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()

    @property
    def certified(self) -> bool:
        return self.kind != "none"


def certify_optimal(ic: ICStructure, budget: int | None = None) -> OptimalityCertificate:
    """Try to certify that the structure's code length meets the MAIS bound.

    Case 1: the non-inner induced sub-digraph is acyclic; dropping all but
    one inner vertex kills every cycle.  Case 2: an exact search for M >= 1
    disjoint non-inner cycles plus a grouping of the inner set into M + 1
    disjoint case-1 sub-structures avoiding those cycles; the removal set is
    re-verified before the certificate is issued.
    """
    g = ic.graph
    inner_sorted = sorted(ic.inner)
    inner_mask = _mask_of(inner_sorted)
    full = (1 << g.n) - 1
    noninner = full & ~inner_mask

    def to_host(vs: Iterable[int]) -> tuple[int, ...]:
        return tuple(ic.to_host(v) for v in sorted(vs))

    if _acyclic_mask(g, noninner):
        removed = frozenset(to_host(inner_sorted[1:]))
        return OptimalityCertificate("case1", removed)

    budget_state = _Budget(DEFAULT_BUDGET if budget is None else budget)
    cycle_masks = sorted(
        m for m in _cycle_orders(g) if not m & ~noninner
    )
    for packing in _disjoint_packings(cycle_masks):
        used = 0
        for m in packing:
            used |= m
        m_count = len(packing)
        for grouping in _set_partitions(inner_sorted, m_count + 1):
            assignment = _assign_groups(g, grouping, full & ~used, budget_state)
            if assignment is None:
                continue
            removed_mask = 0
            for cyc_mask in packing:
                removed_mask |= cyc_mask & -cyc_mask
            for grp, _support in assignment:
                bits = sorted(_bits(grp))
                for b in bits[1:]:
                    removed_mask |= 1 << b
            if not _acyclic_mask(g, full & ~removed_mask):
                continue
            return OptimalityCertificate(
                "case2",
                frozenset(to_host(v + 1 for v in _bits(removed_mask))),
                tuple(to_host(v + 1 for v in _bits(m)) for m in packing),
                tuple(
                    (to_host(v + 1 for v in _bits(grp)), to_host(v + 1 for v in _bits(sup)))
                    for grp, sup in assignment
                ),
            )
        if budget_state.left <= 0:
            break
    return OptimalityCertificate("none", frozenset())


def _acyclic_mask(g: Digraph, mask: int) -> bool:
    return _find_cycle(g, mask) is None


def _disjoint_packings(cycle_masks: list[int]) -> Iterator[tuple[int, ...]]:
    """Nonempty families of pairwise-disjoint cycle masks, deterministic order."""

    def rec(start: int, used: int, chosen: list[int]) -> Iterator[tuple[int, ...]]:
        for idx in range(start, len(cycle_masks)):
            m = cycle_masks[idx]
            if m & used:
                continue
            chosen.append(m)
            yield tuple(chosen)
            yield from rec(idx + 1, used | m, chosen)
            chosen.pop()

    yield from rec(0, 0, [])


def _set_partitions(items: list[int], parts: int) -> Iterator[list[list[int]]]:
    """Partitions of items into exactly `parts` nonempty groups, canonical order."""
    if parts < 1 or parts > len(items):
        return

    groups: list[list[int]] = []

    def rec(idx: int) -> Iterator[list[list[int]]]:
        if idx == len(items):
            if len(groups) == parts:
                yield [grp[:] for grp in groups]
            return
        item = items[idx]
        for grp in groups:
            grp.append(item)
            yield from rec(idx + 1)
            grp.pop()
        if len(groups) < parts:
            groups.append([item])
            yield from rec(idx + 1)
            groups.pop()

    yield from rec(0)


def _assign_groups(
    g: Digraph, grouping: list[list[int]], available: int, budget: _Budget
) -> list[tuple[int, int]] | None:
    """Disjoint case-1 supports for each inner group within available vertices."""

    assignment: list[tuple[int, int]] = []

    def rec(idx: int, remaining: int) -> bool:
        if budget.left <= 0:
            return False
        if idx == len(grouping):
            return True
        grp_mask = _mask_of(grouping[idx])
        for cand in structures_for_inner(g, grp_mask, remaining, budget, exact=True):
            if not _case1_candidate(g, cand):
                continue
            assignment.append((grp_mask, cand.support))
            if rec(idx + 1, remaining & ~cand.support):
                return True
            assignment.pop()
        return False

    return assignment if rec(0, available) else None


def _case1_candidate(g: Digraph, cand: Candidate) -> bool:
    if cand.kind in ("singleton", "cycle", "clique"):
        return True
    return _acyclic_mask(g, cand.support & ~cand.inner)


# -- figure-of-eight hunters ---------------------------------------------------


def find_figure_of_eight(
    g: Digraph, max_len: int | None = None
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two simple cycles sharing exactly one vertex, or None.

    Exhaustive pairing over enumerated cycles; first hit in the canonical
    cycle order wins.
    """
    cycles = g.simple_cycles(max_len or g.n)
    vsets = [frozenset(c[:-1]) for c in cycles]
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            if len(vsets[i] & vsets[j]) == 1:
                return cycles[i], cycles[j]
    return None


def three_ic_from_figure_eight(
    g: Digraph,
    f8: tuple[tuple[int, ...], tuple[int, ...]],
    budget: int | None = None,
) -> ICStructure | None:
    """Search a valid 3-IC seeded by a figure-of-eight.

    Inner triples are {u, v, w} with u the shared vertex and v, w picked from
    the two cycles among the vertices with a direct arc into u; the first
    triple whose structure search succeeds wins.
    """
    c1, c2 = f8
    shared = frozenset(c1[:-1]) & frozenset(c2[:-1])
    if len(shared) != 1:
        raise ValueError("not a figure-of-eight: cycles must share exactly one vertex")
    (u,) = shared
    budget_state = _Budget(DEFAULT_BUDGET if budget is None else budget)
    full = (1 << g.n) - 1
    vs = sorted(v for v in set(c1[:-1]) - {u} if (v, u) in g.arcs)
    ws = sorted(w for w in set(c2[:-1]) - {u} if (w, u) in g.arcs)
    for v in vs:
        for w in ws:
            if len({u, v, w}) != 3:
                continue
            cands = structures_for_inner(
                g, _mask_of((u, v, w)), full, budget_state, exact=True
            )
            if cands:
                return structure_from_candidate(g, cands[0])
    return None


# -- minimal partial cliques ---------------------------------------------------


def minimal_partial_clique_check(g: Digraph, cap: int = 15) -> bool:
    """True iff the whole digraph's savings beat every nontrivial partition.

    Savings of a block are its minimum out-degree within the block; subset
    dynamic programming maximizes the partition sum exactly.
    """
    if g.n > cap:
        raise CapExceededError(f"minimal-partial-clique cap {cap} exceeded by n={g.n}")
    if g.n == 1:
        return True
    full = (1 << g.n) - 1
    dmin = _min_outdeg_table(g)
    best_any = [0] * (full + 1)
    for s in range(1, full + 1):
        low = s & -s
        best = dmin[s]
        sub = (s - 1) & s
        while sub:
            if sub & low:
                rest = s & ~sub
                cand = dmin[sub] + (best_any[rest] if rest else 0)
                if cand > best:
                    best = cand
            sub = (sub - 1) & s
        best_any[s] = best
    best_split = 0
    sub = (full - 1) & full
    while sub:
        if sub & 1 and sub != full:
            best_split = max(best_split, dmin[sub] + best_any[full & ~sub])
        sub = (sub - 1) & full
    return dmin[full] > best_split


def _min_outdeg_table(g: Digraph) -> list[int]:
    """dmin[mask] = minimum out-degree of the sub-digraph induced by mask."""
    full = (1 << g.n) - 1
    dmin = [0] * (full + 1)
    for mask in range(1, full + 1):
        dmin[mask] = min(
            (g.out_masks[v] & mask).bit_count() for v in _bits(mask)
        )
    return dmin
