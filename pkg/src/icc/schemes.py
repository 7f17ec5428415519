"""Exact solvers for every covering scheme on one instance.

All solvers are exact under hard caps (no uncapped heuristics): the values
they report get compared against known constants, where an approximation
would be useless.  The fractional solver runs on exact rationals for the
same reason.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from . import bounds
from .errors import BidirectionalArcError, CapExceededError, SchemeInvariantError
from .graphs import Digraph, _bits
from .lp import solve_cover_lp
from .structures import (
    Candidate,
    CandidateSet,
    ICStructure,
    candidate_structures,
    collapse_super_vertices,
    find_super_vertices,
    structure_from_candidate,
    _tuple_of,
)

DEFAULT_CAP = 15


@dataclass(frozen=True)
class Block:
    """One block of a witness partition."""

    vertices: tuple[int, ...]
    kind: str  # 'clique' | 'cycle' | 'partial-clique' | 'ic' | 'singleton'
    structure: ICStructure | None = None
    order: tuple[int, ...] = ()  # traversal order for cycle blocks

    def min_vertex(self) -> int:
        return self.vertices[0]


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks covering all vertices, ordered by smallest member."""

    blocks: tuple[Block, ...]

    def vertex_sets(self) -> list[tuple[int, ...]]:
        return [b.vertices for b in self.blocks]


@dataclass(frozen=True)
class CoverResult:
    length: int
    partition: Partition
    complete: bool = True


def _sorted_blocks(blocks: Iterable[Block]) -> tuple[Block, ...]:
    return tuple(sorted(blocks, key=Block.min_vertex))


# -- clique cover -------------------------------------------------------------


def clique_cover_number(g: Digraph, cap: int = DEFAULT_CAP) -> CoverResult:
    """Minimum number of disjoint cliques covering the digraph, with a witness.

    Equals the chromatic number of the underlying undirected complement:
    color classes are bidirectional cliques.  Exact memoized coloring that
    branches over maximal cliques containing the lowest uncolored vertex.
    """
    if g.n > cap:
        raise CapExceededError(f"clique-cover cap {cap} exceeded by n={g.n}")
    bidir = [g.out_masks[v] & g.in_masks[v] for v in range(g.n)]
    full = (1 << g.n) - 1
    memo: dict[int, tuple[int, tuple[int, ...]]] = {0: (0, ())}

    def best(s: int) -> tuple[int, tuple[int, ...]]:
        known = memo.get(s)
        if known is not None:
            return known
        v = (s & -s).bit_length() - 1
        res: tuple[int, tuple[int, ...]] | None = None
        for cl in _maximal_cliques_with(bidir, s, v):
            count, blocks = best(s & ~cl)
            if res is None or count + 1 < res[0]:
                res = (count + 1, (cl, *blocks))
        memo[s] = res  # type: ignore[assignment]
        return res  # type: ignore[return-value]

    count, masks = best(full)
    blocks = []
    for m in masks:
        vs = _tuple_of(m)
        blocks.append(Block(vs, "singleton" if len(vs) == 1 else "clique"))
    return CoverResult(count, Partition(_sorted_blocks(blocks)))


def _maximal_cliques_with(bidir: list[int], s: int, v: int) -> Iterator[int]:
    """Maximal bidirectional cliques within s containing v (Bron-Kerbosch)."""

    def bk(r: int, p: int, x: int) -> Iterator[int]:
        if p == 0 and x == 0:
            yield r
            return
        while p:
            ub = p & -p
            u = ub.bit_length() - 1
            yield from bk(r | ub, p & bidir[u], x & bidir[u])
            p ^= ub
            x |= ub

    yield from bk(1 << v, s & bidir[v], 0)


# -- cycle cover ---------------------------------------------------------------


def cycle_cover_number(g: Digraph, cap: int = DEFAULT_CAP) -> CoverResult:
    """N minus the maximum number of vertex-disjoint cycles, with a witness.

    Subset DP over spanning-cycle masks; independent of the structure-search
    machinery so the special-case reduction tests compare two real solvers.
    """
    if g.n > cap:
        raise CapExceededError(f"cycle-cover cap {cap} exceeded by n={g.n}")
    from .structures import _cycle_orders

    orders = _cycle_orders(g)
    full = (1 << g.n) - 1
    by_low: dict[int, list[int]] = {}
    for m in sorted(orders):
        by_low.setdefault((m & -m).bit_length() - 1, []).append(m)
    best = [0] * (full + 1)
    for s in range(1, full + 1):
        v = (s & -s).bit_length() - 1
        b = best[s & (s - 1)]
        for m in by_low.get(v, ()):
            if not m & ~s:
                cand = 1 + best[s & ~m]
                if cand > b:
                    b = cand
        best[s] = b

    blocks: list[Block] = []
    s = full
    while s:
        v = (s & -s).bit_length() - 1
        choices = [
            m for m in by_low.get(v, ()) if not m & ~s and 1 + best[s & ~m] == best[s]
        ]
        if choices:
            m = min(choices, key=_tuple_of)
            blocks.append(Block(_tuple_of(m), "cycle", order=orders[m]))
            s &= ~m
        else:
            blocks.append(Block((v + 1,), "singleton"))
            s &= s - 1
    return CoverResult(g.n - best[full], Partition(_sorted_blocks(blocks)))


# -- partial-clique cover --------------------------------------------------------


def partial_clique_number(g: Digraph, cap: int = DEFAULT_CAP) -> CoverResult:
    """Exact minimum of sum(|block| - min-out-degree(block)) over all partitions.

    A block's cost is the MDS symbol count its sub-problem needs; subset DP
    over all submasks (3^n states).
    """
    if g.n > cap:
        raise CapExceededError(f"partial-clique cap {cap} exceeded by n={g.n}")
    full = (1 << g.n) - 1
    cost = [0] * (full + 1)
    for mask in range(1, full + 1):
        dmin = min((g.out_masks[v] & mask).bit_count() for v in _bits(mask))
        cost[mask] = mask.bit_count() - dmin
    f = [0] * (full + 1)
    for s in range(1, full + 1):
        low = s & -s
        best = cost[s]
        sub = (s - 1) & s
        while sub:
            if sub & low:
                cand = cost[sub] + f[s & ~sub]
                if cand < best:
                    best = cand
            sub = (sub - 1) & s
        f[s] = best

    blocks: list[Block] = []
    s = full
    while s:
        low = s & -s
        minimizers = [s] if cost[s] == f[s] else []
        sub = (s - 1) & s
        while sub:
            if sub & low and cost[sub] + f[s & ~sub] == f[s]:
                minimizers.append(sub)
            sub = (sub - 1) & s
        m = min(minimizers, key=_tuple_of)
        vs = _tuple_of(m)
        blocks.append(Block(vs, "singleton" if len(vs) == 1 else "partial-clique"))
        s &= ~m
    return CoverResult(f[full], Partition(_sorted_blocks(blocks)))


# -- interlinked-cycle cover ------------------------------------------------------


@dataclass(frozen=True)
class IccResult:
    length: int
    partition: Partition
    complete: bool = True


def icc_length(
    g: Digraph,
    budget: int | None = None,
    restrict: str | None = None,
    candidates: CandidateSet | None = None,
    forbid_inner: int = 0,
) -> IccResult:
    """Shortest code from packing disjoint validated structures.

    Maximizes total savings sum(K_i - 1) by exact set packing over the
    enumerated candidates; uncovered vertices ride uncoded.  restrict narrows
    the candidate pool to 'two_inner' (cycles only) or 'all_inner' (cliques
    only).  A blown search budget downgrades the result to an upper bound
    (complete=False).
    """
    if candidates is None:
        candidates = candidate_structures(
            g, budget, forbid_inner=forbid_inner, include_general=restrict is None
        )
    if restrict is None:
        pool = candidates.merged()
    elif restrict == "two_inner":
        pool = dict(candidates.cycles)
    elif restrict == "all_inner":
        pool = dict(candidates.cliques)
    else:
        raise ValueError(f"unknown restrict mode {restrict!r}")

    full = (1 << g.n) - 1
    by_low: dict[int, list[Candidate]] = {}
    for cand in pool.values():
        if cand.savings > 0:
            by_low.setdefault((cand.support & -cand.support).bit_length() - 1, []).append(cand)
    for lst in by_low.values():
        lst.sort(key=lambda c: c.support_tuple())
    best = [0] * (full + 1)
    for s in range(1, full + 1):
        v = (s & -s).bit_length() - 1
        b = best[s & (s - 1)]
        for cand in by_low.get(v, ()):
            if not cand.support & ~s:
                val = cand.savings + best[s & ~cand.support]
                if val > b:
                    b = val
        best[s] = b

    blocks: list[Block] = []
    s = full
    while s:
        v = (s & -s).bit_length() - 1
        choices = [
            c
            for c in by_low.get(v, ())
            if not c.support & ~s and c.savings + best[s & ~c.support] == best[s]
        ]
        if choices:
            # prefer the biggest single saving, then the lexicographically
            # smallest support: keeps emitted codes canonical
            c = min(choices, key=lambda c: (-c.savings, c.support_tuple()))
            blocks.append(
                Block(c.support_tuple(), "ic", structure=structure_from_candidate(g, c))
            )
            s &= ~c.support
        else:
            blocks.append(Block((v + 1,), "singleton"))
            s &= s - 1
    return IccResult(
        g.n - best[full], Partition(_sorted_blocks(blocks)), candidates.complete
    )


# -- extended ICC ------------------------------------------------------------------


@dataclass(frozen=True)
class EiccResult:
    length: int
    partition: Partition  # on the quotient digraph
    quotient: Digraph
    mapping: tuple[tuple[int, ...], ...]
    collapsed: tuple[tuple[int, ...], ...]
    symbol_supports: tuple[tuple[int, ...], ...]
    complete: bool = True


def eicc_length(g: Digraph, budget: int | None = None) -> EiccResult:
    """Best ICC value over choices of super-vertices to merge.

    Merged vertices stand for the XOR of their members and may not serve as
    inner vertices.  The empty choice is always tried, so the result never
    exceeds the plain ICC length; ties break toward the lexicographically
    smallest emitted symbol supports, which pins down one canonical code.
    """
    svs = find_super_vertices(g)
    if len(svs) > 10:
        svs = svs[:10]
    best: EiccResult | None = None
    best_key: tuple | None = None
    for choice in range(1 << len(svs)):
        chosen = [svs[i] for i in range(len(svs)) if (choice >> i) & 1]
        quotient, mapping = collapse_super_vertices(g, chosen)
        forbid = 0
        for q, members in enumerate(mapping):
            if len(members) > 1:
                forbid |= 1 << q
        res = icc_length(quotient, budget=budget, forbid_inner=forbid)
        supports = icc_symbol_supports(res.partition, mapping)
        key = (res.length, supports)
        if best_key is None or key < best_key:
            best_key = key
            best = EiccResult(
                res.length,
                res.partition,
                quotient,
                mapping,
                tuple(tuple(sorted(sv)) for sv in chosen),
                supports,
                res.complete,
            )
    assert best is not None
    return best


def icc_symbol_supports(
    partition: Partition, mapping: tuple[tuple[int, ...], ...] | None = None
) -> tuple[tuple[int, ...], ...]:
    """Host-vertex supports of the code a packing induces, in emission order.

    Per block: the inner XOR symbol first, then one symbol per non-inner
    vertex ascending.  mapping expands quotient vertices to their members.
    """

    def expand(vs: Iterable[int]) -> tuple[int, ...]:
        if mapping is None:
            return tuple(sorted(vs))
        out: set[int] = set()
        for v in vs:
            out.update(mapping[v - 1])
        return tuple(sorted(out))

    supports: list[tuple[int, ...]] = []
    for block in partition.blocks:
        if block.kind == "singleton":
            supports.append(expand(block.vertices))
            continue
        ic = block.structure
        assert ic is not None
        supports.append(expand(ic.host_inner))
        for j in sorted(set(ic.vertex_ids) - ic.host_inner):
            supports.append(expand({j} | ic.host_out_neighbors(j)))
    return tuple(supports)


# -- fractional ICC -----------------------------------------------------------------


@dataclass(frozen=True)
class FractionalSolution:
    """Exact optimum of the time-sharing relaxation."""

    terms: tuple[tuple[tuple[int, ...], Fraction, int], ...]  # (vertices, weight, cost)
    objective: Fraction


def fractional_icc(
    g: Digraph,
    cap: int = 12,
    candidates: CandidateSet | None = None,
    budget: int | None = None,
) -> FractionalSolution:
    """Exact rational optimum of the fractional covering relaxation.

    Each vertex subset costs |s| - K_s + 1 when it hosts a validated K_s-IC
    structure and |s| otherwise; weights in [0,1] must cover every vertex.
    Subsets with no structure and more than one vertex are dominated by their
    singletons at equal cost, so the solver only materializes useful columns.
    """
    if g.n > cap:
        raise CapExceededError(f"fractional-ICC cap {cap} exceeded by n={g.n}")
    if candidates is None:
        candidates = candidate_structures(g, budget)
    merged = candidates.merged()
    columns: list[int] = []
    costs: list[Fraction] = []
    masks: list[int] = []
    for mask in sorted(merged):
        cand = merged[mask]
        columns.append(mask)
        costs.append(Fraction(mask.bit_count() - cand.k + 1))
        masks.append(mask)
    for v in range(g.n):
        m = 1 << v
        if m not in merged:
            columns.append(m)
            costs.append(Fraction(1))
            masks.append(m)
    value, solution = solve_cover_lp(costs, columns, g.n)
    terms = tuple(
        (_tuple_of(masks[j]), weight, int(costs[j]))
        for j, weight in sorted(solution.items())
    )
    return FractionalSolution(terms, value)


# -- local-chromatic formula ---------------------------------------------------------


def flcn_bidirection_free(g: Digraph) -> int:
    """N minus the minimum out-degree; valid only without bidirectional arcs.

    The closed form holds because the complement's underlying undirected
    graph is then complete; with bidirectional arcs present there is no such
    formula here, so refuse rather than guess.
    """
    if g.has_bidirectional_arc():
        raise BidirectionalArcError(
            "local-chromatic formula requires a digraph with no bidirectional arcs"
        )
    return g.n - g.min_out_degree()


# -- assembled report -----------------------------------------------------------------


@dataclass(frozen=True)
class SchemeReport:
    n: int
    lengths: dict[str, int | Fraction]
    mais: int
    mais_witness: tuple[int, ...]
    certificate: dict
    partitions: dict[str, Partition]
    eicc: EiccResult
    complete: bool

    @property
    def optimal_certified(self) -> bool:
        return bool(self.certificate.get("optimal"))


def full_report(
    g: Digraph,
    cap: int = DEFAULT_CAP,
    mais_cap: int = 20,
    ficc_cap: int = 10,
    budget: int | None = None,
) -> SchemeReport:
    """Run every applicable solver and cross-check the scheme inequalities."""
    cands = candidate_structures(g, budget)
    cl = clique_cover_number(g, cap)
    cy = cycle_cover_number(g, cap)
    pc = partial_clique_number(g, cap)
    icc = icc_length(g, candidates=cands)
    eicc = eicc_length(g, budget=budget)
    mais_value, witness = bounds.mais(g, mais_cap)
    lengths: dict[str, int | Fraction] = {
        "cl": cl.length,
        "cy": cy.length,
        "pc": pc.length,
        "icc": icc.length,
        "eicc": eicc.length,
    }
    if not g.has_bidirectional_arc():
        lengths["flcn"] = flcn_bidirection_free(g)
    if g.n <= ficc_cap:
        lengths["ficc"] = fractional_icc(g, cap=ficc_cap, candidates=cands).objective

    certificate: dict = {"optimal": icc.length == mais_value, "mais": mais_value}
    single = [b for b in icc.partition.blocks if b.kind == "ic"]
    if len(single) == 1 and len(single[0].vertices) == g.n:
        cert = bounds.certify_optimal(single[0].structure)
        certificate["theorem_case"] = cert.kind
        certificate["removed"] = sorted(cert.removed)
    _check_report_invariants(lengths, mais_value)
    partitions = {"cl": cl.partition, "cy": cy.partition, "pc": pc.partition, "icc": icc.partition}
    return SchemeReport(
        g.n,
        lengths,
        mais_value,
        tuple(sorted(witness)),
        certificate,
        partitions,
        eicc,
        icc.complete and eicc.complete,
    )


def _check_report_invariants(lengths: dict[str, int | Fraction], mais_value: int) -> None:
    cl, cy, pc, icc, eicc = (
        lengths["cl"],
        lengths["cy"],
        lengths["pc"],
        lengths["icc"],
        lengths["eicc"],
    )
    if icc > min(cl, cy):
        raise SchemeInvariantError(f"icc={icc} exceeds min(cl, cy)={min(cl, cy)}")
    if pc > min(cl, cy):
        raise SchemeInvariantError(f"pc={pc} exceeds min(cl, cy)={min(cl, cy)}")
    if eicc > icc:
        raise SchemeInvariantError(f"eicc={eicc} exceeds icc={icc}")
    for name, val in lengths.items():
        if val < mais_value:
            raise SchemeInvariantError(f"{name}={val} undercuts the MAIS bound {mais_value}")


def report_to_json_dict(report: SchemeReport) -> dict:
    """JSON-ready dict: rationals as canonical 'p/q' strings, keys sortable."""
    schemes: dict[str, int | str] = {}
    for name, val in report.lengths.items():
        if isinstance(val, Fraction):
            schemes[name] = f"{val.numerator}/{val.denominator}"
        else:
            schemes[name] = int(val)
    witnesses = {
        name: [list(b.vertices) for b in part.blocks]
        for name, part in report.partitions.items()
    }
    witnesses["eicc"] = [list(s) for s in report.eicc.symbol_supports]
    return {
        "n": report.n,
        "schemes": schemes,
        "mais": report.mais,
        "mais_witness": list(report.mais_witness),
        "certificate": report.certificate,
        "witnesses": witnesses,
        "complete": report.complete,
        "eicc_collapsed": [list(sv) for sv in report.eicc.collapsed],
    }
