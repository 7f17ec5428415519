"""Interlinked-cycle structures: validation, discovery, and super-vertices.

An interlinked-cycle (IC) structure is a sub-digraph D together with an inner
vertex set V_I such that:

  1. D has no I-cycle (a cycle whose only inner vertex is its endpoint);
  2. every ordered pair of distinct inner vertices is joined by exactly one
     I-path (a path whose interior vertices are all non-inner);
  3. every vertex and every arc of D lies on at least one I-path.

Requirement 3 makes validation a complete characterization: the structure is
exactly the union of its K rooted trees, with nothing dangling.  K = |V_I|
and the structure saves K - 1 transmissions.

Vertex masks follow the package convention: bit k stands for vertex k+1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .graphs import Arc, Digraph, _bits, spanning_cycle_orders

DEFAULT_BUDGET = 500_000


@lru_cache(maxsize=128)
def _cycle_orders(g: Digraph) -> dict[int, tuple[int, ...]]:
    return spanning_cycle_orders(g)


class IcInternalError(RuntimeError):
    """A validated structure failed an operation that validation guarantees."""


@dataclass(frozen=True)
class IcViolation:
    """Why a candidate (digraph, inner set) is not an IC structure.

    kind is one of 'i_cycle', 'missing_i_path', 'duplicate_i_path',
    'uncovered_vertex', 'uncovered_arc'; witness carries the offending
    path(s), pair, vertex, or arc.
    """

    kind: str
    witness: tuple

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class ICStructure:
    """A validated IC structure, possibly living inside a host digraph.

    graph is the structure's own sub-digraph with dense labels 1..N;
    vertex_ids maps its label v to the host vertex vertex_ids[v-1] (the
    identity when the structure was validated standalone).
    """

    graph: Digraph
    inner: frozenset[int]
    vertex_ids: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.inner)

    @property
    def savings(self) -> int:
        return self.k - 1

    @property
    def length(self) -> int:
        return self.graph.n - self.k + 1

    def to_host(self, v: int) -> int:
        return self.vertex_ids[v - 1]

    @property
    def host_vertices(self) -> tuple[int, ...]:
        return self.vertex_ids

    @property
    def host_inner(self) -> frozenset[int]:
        return frozenset(self.to_host(v) for v in self.inner)

    @property
    def host_arcs(self) -> frozenset[Arc]:
        return frozenset((self.to_host(u), self.to_host(v)) for u, v in self.graph.arcs)

    def host_out_neighbors(self, host_v: int) -> frozenset[int]:
        dense = self.vertex_ids.index(host_v) + 1
        return frozenset(self.to_host(u) for u in self.graph.out_neighbors(dense))


@dataclass(frozen=True, eq=False)
class RootedTree:
    """Out-tree of the unique I-paths from one inner root.

    parent_of maps every non-root tree vertex to its parent; the leaves are
    exactly the other inner vertices.
    """

    root: int
    parent_of: Mapping[int, int]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.parent_of) | {self.root}

    def out_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(c for c, p in self.parent_of.items() if p == v)


SuperVertex = frozenset


# -- I-path machinery (0-based bit arithmetic) -------------------------------


def _count_ipaths(
    out_masks: tuple[int, ...] | list[int],
    src: int,
    dst: int,
    interior: int,
    limit: int,
    collect: list | None = None,
) -> int:
    """Count simple src->dst paths whose interior vertices all lie in interior.

    out_masks is 0-based adjacency (any arc subset); stops at limit;
    src == dst counts I-cycles.  Paths are appended to collect (as 0-based
    tuples) when requested.
    """
    count = 0
    path = [src]

    def dfs(v: int, visited: int) -> None:
        nonlocal count
        m = out_masks[v]
        while m:
            ub = m & -m
            m ^= ub
            u = ub.bit_length() - 1
            if count >= limit:
                return
            if u == dst:
                count += 1
                if collect is not None:
                    collect.append((*path, dst))
                if count >= limit:
                    return
            elif interior & ub and not visited & ub:
                path.append(u)
                dfs(u, visited | ub)
                path.pop()

    dfs(src, 1 << src)
    return count


def _validate_adj(
    out_masks: tuple[int, ...] | list[int], support: int, inner: int
) -> tuple[bool, dict[tuple[int, int], tuple[int, ...]] | IcViolation]:
    """Check the three structure requirements on an explicit arc subset.

    out_masks carries the candidate's own arcs (0-based).  On success returns
    (True, {ordered inner pair -> its unique I-path}), all 0-based; on
    failure (False, IcViolation) with 1-based witnesses.
    """
    interior = support & ~inner
    inner_bits = list(_bits(inner))
    for i in inner_bits:
        cycles: list[tuple[int, ...]] = []
        if _count_ipaths(out_masks, i, i, interior, 1, cycles):
            return False, IcViolation("i_cycle", (_path1(cycles[0]),))
    paths: dict[tuple[int, int], tuple[int, ...]] = {}
    for i in inner_bits:
        for j in inner_bits:
            if i == j:
                continue
            found: list[tuple[int, ...]] = []
            c = _count_ipaths(out_masks, i, j, interior, 2, found)
            if c == 0:
                return False, IcViolation("missing_i_path", (i + 1, j + 1))
            if c > 1:
                return False, IcViolation(
                    "duplicate_i_path", tuple(_path1(p) for p in found)
                )
            paths[(i, j)] = found[0]
    covered_v = inner
    covered_arcs: set[tuple[int, int]] = set()
    for p in paths.values():
        for a, b in zip(p, p[1:]):
            covered_v |= 1 << a
            covered_v |= 1 << b
            covered_arcs.add((a, b))
    if covered_v != support:
        stray = (support & ~covered_v) & -(support & ~covered_v)
        return False, IcViolation("uncovered_vertex", (stray.bit_length(),))
    for v in _bits(support):
        m = out_masks[v] & support
        while m:
            ub = m & -m
            m ^= ub
            u = ub.bit_length() - 1
            if (v, u) not in covered_arcs:
                return False, IcViolation("uncovered_arc", ((v + 1, u + 1),))
    return True, paths


def _validate_mask(
    g: Digraph, support: int, inner: int
) -> tuple[bool, dict[tuple[int, int], tuple[int, ...]] | IcViolation]:
    """Validate the sub-digraph induced by support inside g."""
    masked = [g.out_masks[v] & support for v in range(g.n)]
    return _validate_adj(masked, support, inner)


def _path1(p: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(v + 1 for v in p)


def _mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def _tuple_of(mask: int) -> tuple[int, ...]:
    return tuple(b + 1 for b in _bits(mask))


# -- public validation ops ----------------------------------------------------


def enumerate_i_paths(
    g: Digraph, inner: Iterable[int], i: int, j: int
) -> list[tuple[int, ...]]:
    """All simple i->j paths in g whose interior avoids the inner set.

    i == j is allowed and yields the I-cycles at i.  Deterministic order:
    sorted by (length, vertex sequence).
    """
    inner_set = frozenset(inner)
    if i not in inner_set or j not in inner_set:
        raise ValueError(f"endpoints {i}, {j} must both be inner vertices")
    full = (1 << g.n) - 1
    interior = full & ~_mask_of(inner_set)
    found: list[tuple[int, ...]] = []
    _count_ipaths(g.out_masks, i - 1, j - 1, interior, 1 << 30, found)
    return sorted((_path1(p) for p in found), key=lambda p: (len(p), p))


def validate_ic(g: Digraph, inner: Iterable[int]) -> ICStructure | IcViolation:
    """Validate (g, inner) as an IC structure; g itself is the candidate.

    Returns the structure on success, otherwise an IcViolation naming the
    first failed requirement (checked in the order: I-cycle, missing I-path,
    duplicate I-path, uncovered vertex/arc).  Violations are values, not
    exceptions; only malformed inputs raise.
    """
    inner_set = frozenset(inner)
    if not inner_set:
        raise ValueError("inner vertex set must be nonempty")
    for v in inner_set:
        g._check_vertex(v)
    full = (1 << g.n) - 1
    ok, detail = _validate_mask(g, full, _mask_of(inner_set))
    if not ok:
        return detail  # type: ignore[return-value]
    return ICStructure(g, inner_set, tuple(g.vertices()))


def extract_tree(ic: ICStructure, root: int) -> RootedTree:
    """The rooted tree formed by the unique I-paths out of one inner vertex.

    Path uniqueness makes the union well defined; a parent conflict here
    would mean the validator let a bad structure through.
    """
    if root not in ic.inner:
        raise ValueError(f"root {root} is not an inner vertex")
    g = ic.graph
    full = (1 << g.n) - 1
    interior = full & ~_mask_of(ic.inner)
    parent: dict[int, int] = {}
    for leaf in sorted(ic.inner - {root}):
        found: list[tuple[int, ...]] = []
        c = _count_ipaths(g.out_masks, root - 1, leaf - 1, interior, 2, found)
        if c != 1:
            raise IcInternalError(f"{c} I-paths from {root} to {leaf} in a validated structure")
        for a, b in zip(found[0], found[0][1:]):
            child, par = b + 1, a + 1
            if parent.get(child, par) != par:
                raise IcInternalError(f"vertex {child} has two parents under root {root}")
            parent[child] = par
    return RootedTree(root, parent)


# -- super-vertices -----------------------------------------------------------


def find_super_vertices(g: Digraph) -> list[frozenset[int]]:
    """Maximal cliques whose members share identical external neighborhoods.

    The pairwise relation (bidirectionally adjacent, same out- and
    in-neighborhood outside the pair) is transitive, so its classes of size
    two or more are exactly the maximal super-vertices; they are pairwise
    disjoint by construction.
    """
    parent = list(range(g.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in g.vertices():
        for v in range(u + 1, g.n + 1):
            if (u, v) not in g.arcs or (v, u) not in g.arcs:
                continue
            pm = (1 << (u - 1)) | (1 << (v - 1))
            if (
                g.out_masks[u - 1] & ~pm == g.out_masks[v - 1] & ~pm
                and g.in_masks[u - 1] & ~pm == g.in_masks[v - 1] & ~pm
            ):
                parent[find(u)] = find(v)
    groups: dict[int, list[int]] = {}
    for v in g.vertices():
        groups.setdefault(find(v), []).append(v)
    return sorted(
        (frozenset(members) for members in groups.values() if len(members) > 1),
        key=min,
    )


def collapse_super_vertices(
    g: Digraph, svs: Iterable[frozenset[int]]
) -> tuple[Digraph, tuple[tuple[int, ...], ...]]:
    """Quotient digraph with each super-vertex merged into a single vertex.

    Returns (quotient, mapping) where mapping[q-1] lists the original
    vertices behind quotient vertex q (a 1-tuple for untouched vertices).
    Quotient labels are ordered by smallest original member.
    """
    sv_list = [frozenset(sv) for sv in svs]
    valid = set(find_super_vertices(g))
    taken: set[int] = set()
    for sv in sv_list:
        if sv not in valid and not _is_super_vertex(g, sv):
            raise ValueError(f"{sorted(sv)} is not a super-vertex of this digraph")
        if taken & sv:
            raise ValueError("super-vertices overlap")
        taken |= sv
    groups = [tuple(sorted(sv)) for sv in sv_list]
    groups += [(v,) for v in g.vertices() if v not in taken]
    groups.sort(key=lambda t: t[0])
    where = {v: idx + 1 for idx, grp in enumerate(groups) for v in grp}
    arcs = {(where[u], where[v]) for u, v in g.arcs if where[u] != where[v]}
    return Digraph(len(groups), arcs), tuple(groups)


def _is_super_vertex(g: Digraph, sv: frozenset[int]) -> bool:
    members = sorted(sv)
    if len(members) < 2 or not g.is_clique(members):
        return False
    pm = _mask_of(members)
    outs = {g.out_masks[v - 1] & ~pm for v in members}
    ins = {g.in_masks[v - 1] & ~pm for v in members}
    return len(outs) == 1 and len(ins) == 1


# -- structure search ---------------------------------------------------------


@dataclass(frozen=True)
class Candidate:
    """A validated structure in host-mask form, cheap enough to enumerate in bulk."""

    support: int
    inner: int
    k: int
    kind: str  # 'singleton' | 'cycle' | 'clique' | 'general'
    order: tuple[int, ...] = ()  # cycle witness order (1-based) when kind == 'cycle'
    arcs: tuple[Arc, ...] = ()  # explicit arc set (1-based) when kind == 'general'

    @property
    def savings(self) -> int:
        return self.k - 1

    def inner_tuple(self) -> tuple[int, ...]:
        return _tuple_of(self.inner)

    def support_tuple(self) -> tuple[int, ...]:
        return _tuple_of(self.support)


@dataclass
class CandidateSet:
    """Everything the packing solvers need: candidates per kind plus a merged view."""

    singletons: dict[int, Candidate] = field(default_factory=dict)
    cycles: dict[int, Candidate] = field(default_factory=dict)
    cliques: dict[int, Candidate] = field(default_factory=dict)
    general: dict[int, Candidate] = field(default_factory=dict)
    complete: bool = True

    def merged(self) -> dict[int, Candidate]:
        """Best candidate per support: larger K wins, then lex-smaller inner set."""
        best: dict[int, Candidate] = {}
        for pool in (self.singletons, self.cycles, self.cliques, self.general):
            for mask, cand in pool.items():
                cur = best.get(mask)
                if cur is None or (-cand.k, cand.inner_tuple(), cand.arcs) < (
                    -cur.k,
                    cur.inner_tuple(),
                    cur.arcs,
                ):
                    best[mask] = cand
        return best


class _Budget:
    __slots__ = ("left", "truncated")

    def __init__(self, steps: int) -> None:
        self.left = steps
        self.truncated = False

    def spend(self) -> bool:
        self.left -= 1
        return self.left >= 0

    @property
    def exhausted(self) -> bool:
        return self.left <= 0 or self.truncated


def candidate_structures(
    g: Digraph,
    budget: int | None = None,
    forbid_inner: int = 0,
    include_general: bool = True,
) -> CandidateSet:
    """Enumerate validated IC structures of g, organized by family.

    Families: singletons (1-IC), simple cycles (2-IC; the structure keeps
    only the cycle arcs), cliques (all-inner), and general inner sets of size
    three or more, realized as induced sub-digraphs over subsets of the
    vertices that can sit on I-paths.  Vertices in forbid_inner are barred
    from inner sets (quotient graphs forbid merged vertices there).

    The general enumeration walks include/exclude decisions over the optional
    path vertices: duplicate I-paths and I-cycles only get worse when the
    support grows, missing I-paths only get worse when it shrinks, so both
    sides prune.  When the step budget runs out the set is flagged incomplete.
    """
    cs = CandidateSet()
    budget_state = _Budget(DEFAULT_BUDGET if budget is None else budget)
    for v in g.vertices():
        m = 1 << (v - 1)
        cs.singletons[m] = Candidate(m, m, 1, "singleton")
    for mask, order in sorted(_cycle_orders(g).items()):
        allowed = [v for v in order if not (forbid_inner >> (v - 1)) & 1]
        if len(allowed) < 2:
            continue
        inner = _mask_of(allowed[-2:])
        cs.cycles[mask] = Candidate(mask, inner, 2, "cycle", order)
    for mask in _clique_masks(g):
        if mask & forbid_inner:
            continue
        cs.cliques[mask] = Candidate(mask, mask, mask.bit_count(), "clique")
    if include_general:
        full = (1 << g.n) - 1
        inner_sets = [
            m
            for m in range(1, full + 1)
            if m.bit_count() >= 3 and not m & forbid_inner
        ]
        inner_sets.sort(key=lambda m: (-m.bit_count(), _tuple_of(m)))
        for inner in inner_sets:
            if budget_state.left <= 0:
                break
            for cand in structures_for_inner(g, inner, full, budget_state):
                cur = cs.general.get(cand.support)
                if cur is None or (-cand.k, cand.inner_tuple(), cand.arcs) < (
                    -cur.k,
                    cur.inner_tuple(),
                    cur.arcs,
                ):
                    cs.general[cand.support] = cand
        if budget_state.exhausted:
            cs.complete = False
    return cs


def _clique_masks(g: Digraph) -> list[int]:
    """All bidirectional-clique vertex sets of size >= 2, as masks."""
    bidir = [g.out_masks[v] & g.in_masks[v] for v in range(g.n)]
    out: list[int] = []

    def extend(mask: int, cand: int) -> None:
        m = cand
        while m:
            vb = m & -m
            m ^= vb
            v = vb.bit_length() - 1
            nm = mask | vb
            out.append(nm)
            extend(nm, cand & bidir[v] & ~((vb << 1) - 1))

    for v in range(g.n):
        extend(1 << v, bidir[v] & ~((1 << (v + 1)) - 1))
    return [m for m in out if m.bit_count() >= 2]


def _closure(out_masks: tuple[int, ...], start: int, interior: int) -> int:
    """Vertices reachable from the start mask stepping only through interior."""
    reach = 0
    frontier = start
    while frontier:
        reach |= frontier
        nxt = 0
        m = frontier & interior
        while m:
            vb = m & -m
            m ^= vb
            nxt |= out_masks[vb.bit_length() - 1]
        frontier = nxt & ~reach
    return reach


PATHS_PER_PAIR_CAP = 200


def structures_for_inner(
    g: Digraph,
    inner: int,
    universe: int,
    budget: _Budget | None = None,
    exact: bool = False,
) -> list[Candidate]:
    """Validated structures with this exact inner set, support inside universe.

    K = 1 gives the singleton; K = 2 enumerates simple cycles through the
    pair (the structure keeps only the cycle arcs; these are exactly the
    2-IC structures).  For K >= 3 the default mode realizes structures as
    induced sub-digraphs over subsets of the optional path vertices, which is
    fast and covers every instance the packing solvers are specified
    against.  exact=True instead enumerates arbitrary arc subsets: every
    valid structure is the union of its K(K-1) unique I-paths, so the search
    picks one host I-path per ordered pair and validates the union.  The
    exact mode also finds structures that must drop arcs of their induced
    subgraph, at a combinatorial cost that the step budget bounds.

    Results are sorted by (support size, support, arc set).
    """
    if budget is None:
        budget = _Budget(DEFAULT_BUDGET)
    if inner & ~universe:
        return []
    k = inner.bit_count()
    if k == 1:
        return [Candidate(inner, inner, 1, "singleton")]
    if k == 2:
        out = [
            Candidate(mask, inner, 2, "cycle", order)
            for mask, order in sorted(_cycle_orders(g).items())
            if not (inner & ~mask or mask & ~universe)
        ]
        return sorted(out, key=lambda c: (c.support.bit_count(), c.support_tuple()))

    out_m, in_m = g.out_masks, g.in_masks
    n = g.n
    noninner = universe & ~inner
    fwd = _closure(out_m, _union_out(out_m, inner), noninner) & noninner
    bwd = _closure(in_m, _union_out(in_m, inner), noninner) & noninner
    optional = fwd & bwd
    inner_bits = list(_bits(inner))
    if not _pairs_reachable(out_m, inner_bits, optional):
        return []
    if not exact:
        return _induced_structures(g, inner, inner_bits, optional, budget)

    pair_paths: list[tuple[tuple[int, int], list[tuple[int, ...]]]] = []
    for i in inner_bits:
        for j in inner_bits:
            if i == j:
                continue
            found_paths: list[tuple[int, ...]] = []
            c = _count_ipaths(out_m, i, j, optional, PATHS_PER_PAIR_CAP + 1, found_paths)
            if c == 0:
                return []
            if c > PATHS_PER_PAIR_CAP:
                budget.truncated = True  # too many alternatives to enumerate exactly
                return []
            found_paths.sort(key=lambda p: (len(p), p))
            pair_paths.append(((i, j), found_paths))
    # fewest alternatives first: forced paths accumulate arcs early and make
    # the duplicate/I-cycle pruning bite sooner
    pair_paths.sort(key=lambda item: (len(item[1]), item[0]))

    adj = [0] * n
    found: dict[tuple[int, ...], Candidate] = {}

    def flaw_free() -> bool:
        budget.spend()
        support = inner
        for v in range(n):
            if adj[v]:
                support |= (1 << v) | adj[v]
        interior = support & ~inner
        for i in inner_bits:
            if _count_ipaths(adj, i, i, interior, 1):
                return False
            for j in inner_bits:
                if i != j and _count_ipaths(adj, i, j, interior, 2) > 1:
                    return False
        return True

    def leaf() -> None:
        budget.spend()
        support = inner
        arcs = []
        for v in range(n):
            m = adj[v]
            if m:
                support |= (1 << v) | m
                arcs.extend((v + 1, u + 1) for u in _bits(m))
        ok, _ = _validate_adj(adj, support, inner)
        if ok:
            key = tuple(sorted(arcs))
            if key not in found:
                found[key] = Candidate(
                    support, inner, k, "general", arcs=tuple(sorted(arcs))
                )

    def walk(idx: int) -> None:
        if budget.left <= 0:
            return
        if idx == len(pair_paths):
            leaf()
            return
        (i, j), paths = pair_paths[idx]
        # a path already implied by earlier choices is forced: any different
        # choice would give the pair two I-paths in the union
        if _count_ipaths(adj, i, j, optional, 1):
            walk(idx + 1)
            return
        for p in paths:
            added = []
            for a, b in zip(p, p[1:]):
                bb = 1 << b
                if not adj[a] & bb:
                    adj[a] |= bb
                    added.append((a, bb))
            if flaw_free():
                walk(idx + 1)
            for a, bb in added:
                adj[a] &= ~bb
            if budget.left <= 0:
                return

    walk(0)
    return sorted(
        found.values(),
        key=lambda c: (c.support.bit_count(), c.support_tuple(), c.arcs),
    )


def _induced_structures(
    g: Digraph, inner: int, inner_bits: list[int], optional: int, budget: _Budget
) -> list[Candidate]:
    """Induced realizations: walk include/exclude over the optional vertices.

    Duplicate I-paths and I-cycles only get worse when the support grows,
    missing I-paths only get worse when it shrinks, so both sides prune.
    """
    out_m = g.out_masks
    opts = list(_bits(optional))
    found: list[Candidate] = []
    k = len(inner_bits)

    def dup_free(support: int) -> bool:
        # interiors are confined to the support, so unmasked adjacency is safe
        budget.spend()
        interior = support & ~inner
        for i in inner_bits:
            if _count_ipaths(out_m, i, i, interior, 1):
                return False
            for j in inner_bits:
                if i != j and _count_ipaths(out_m, i, j, interior, 2) > 1:
                    return False
        return True

    def nothing_missing(support: int) -> bool:
        budget.spend()
        interior = support & ~inner
        for i in inner_bits:
            reach = _closure(out_m, out_m[i] & support, interior)
            for j in inner_bits:
                if i != j and not (reach >> j) & 1:
                    return False
        return True

    def leaf(support: int) -> None:
        budget.spend()
        ok, _ = _validate_mask(g, support, inner)
        if ok:
            found.append(Candidate(support, inner, k, "general"))

    def walk(idx: int, included: int, rest: int) -> bool:
        if budget.left <= 0:
            return False
        if idx == len(opts):
            leaf(inner | included)
            return True
        vb = 1 << opts[idx]
        rest ^= vb
        ok = True
        if dup_free(inner | included | vb):
            ok = walk(idx + 1, included | vb, rest)
        if ok and nothing_missing(inner | included | rest):
            ok = walk(idx + 1, included, rest)
        return ok

    walk(0, 0, optional)
    return sorted(found, key=lambda c: (c.support.bit_count(), c.support_tuple()))


def _union_out(masks: tuple[int, ...], vertex_mask: int) -> int:
    u = 0
    m = vertex_mask
    while m:
        vb = m & -m
        m ^= vb
        u |= masks[vb.bit_length() - 1]
    return u


def _pairs_reachable(out_m: tuple[int, ...], inner_bits: list[int], optional: int) -> bool:
    for i in inner_bits:
        reach = _closure(out_m, out_m[i], optional)
        for j in inner_bits:
            if i != j and not (reach >> j) & 1:
                return False
    return True


# -- materializing candidates -------------------------------------------------


def structure_from_candidate(g: Digraph, cand: Candidate) -> ICStructure:
    """Build the dense ICStructure for a search candidate of host graph g."""
    ids = cand.support_tuple()
    back = {old: new + 1 for new, old in enumerate(ids)}
    if cand.kind == "cycle":
        cyc = cand.order
        arcs = [(back[a], back[b]) for a, b in zip(cyc, cyc[1:])]
        arcs.append((back[cyc[-1]], back[cyc[0]]))
    elif cand.arcs:
        arcs = [(back[u], back[v]) for u, v in cand.arcs]
    else:
        arcs = [(back[u], back[v]) for u, v in g.arcs if u in back and v in back]
    graph = Digraph(len(ids), arcs)
    inner = frozenset(back[v] for v in cand.inner_tuple())
    return ICStructure(graph, inner, ids)


@dataclass(frozen=True)
class StructureSearch:
    """find_ic_structures result: structures plus a completeness flag."""

    structures: tuple[ICStructure, ...]
    complete: bool


def find_ic_structures(g: Digraph, budget: int | None = None) -> StructureSearch:
    """All distinct validated structures found within the step budget.

    Sorted by savings (descending), then lexicographically by inner set and
    support.  Structures on the same support are deduplicated keeping the
    best inner set.  An exhausted budget yields a partial result flagged
    incomplete.
    """
    cs = candidate_structures(g, budget)
    ordered = sorted(
        cs.merged().values(),
        key=lambda c: (-c.savings, c.inner_tuple(), c.support_tuple()),
    )
    return StructureSearch(
        tuple(structure_from_candidate(g, c) for c in ordered), cs.complete
    )
