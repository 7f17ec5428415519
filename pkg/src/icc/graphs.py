"""Directed-graph value type for index-coding instances.

Vertices are labeled 1..n.  An arc (u, v) means receiver u already holds the
message requested by receiver v, i.e. v's message is in u's side information.
Graphs are immutable; every operation returns a fresh value.

Bitmask convention used throughout the package: bit k of a vertex mask stands
for vertex k+1.
"""

from __future__ import annotations

from typing import Iterable, Iterator

Arc = tuple[int, int]


class GraphFormatError(ValueError):
    """Malformed graph text input."""


def _bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Digraph:
    """Immutable simple digraph on vertices 1..n.

    Self-loops and parallel arcs are rejected at construction; neither has a
    meaning in the unicast index-coding model.
    """

    __slots__ = ("n", "arcs", "out_masks", "in_masks", "out_lists")

    def __init__(self, n: int, arcs: Iterable[Arc] = ()) -> None:
        if n < 1:
            raise ValueError(f"vertex count must be positive, got {n}")
        arcset = frozenset((int(u), int(v)) for u, v in arcs)
        for u, v in arcset:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"arc ({u}, {v}) out of range 1..{n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
        self.n = n
        self.arcs = arcset
        out = [0] * n
        inc = [0] * n
        for u, v in arcset:
            out[u - 1] |= 1 << (v - 1)
            inc[v - 1] |= 1 << (u - 1)
        self.out_masks = tuple(out)
        self.in_masks = tuple(inc)
        self.out_lists = tuple(tuple(b + 1 for b in _bits(m)) for m in out)

    # -- basic queries ------------------------------------------------------

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise ValueError(f"vertex {v} out of range 1..{self.n}")

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def out_neighbors(self, v: int) -> frozenset[int]:
        """Set of u with an arc v -> u (the side information of receiver v)."""
        self._check_vertex(v)
        return frozenset(self.out_lists[v - 1])

    def in_neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return frozenset(b + 1 for b in _bits(self.in_masks[v - 1]))

    def out_degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.out_lists[v - 1])

    def min_out_degree(self) -> int:
        return min(m.bit_count() for m in self.out_masks)

    def has_bidirectional_arc(self) -> bool:
        return any((v, u) in self.arcs for u, v in self.arcs)

    def is_clique(self, members: Iterable[int]) -> bool:
        """True iff all members are pairwise joined by arcs in both directions."""
        ms = sorted(set(members))
        for m in ms:
            self._check_vertex(m)
        return all(
            (u, v) in self.arcs and (v, u) in self.arcs
            for i, u in enumerate(ms)
            for v in ms[i + 1 :]
        )

    # -- derived graphs -----------------------------------------------------

    def complement(self) -> "Digraph":
        """Digraph with exactly the ordered pairs absent here."""
        arcs = [
            (u, v)
            for u in self.vertices()
            for v in self.vertices()
            if u != v and (u, v) not in self.arcs
        ]
        return Digraph(self.n, arcs)

    def induced(self, members: Iterable[int]) -> tuple["Digraph", tuple[int, ...]]:
        """Sub-digraph induced by members, relabeled densely.

        Returns (subgraph, ids) where ids[k-1] is the original label of the
        subgraph's vertex k.  Reports built from subgraphs should always be
        translated back through ids.
        """
        ids = tuple(sorted(set(members)))
        if not ids:
            raise ValueError("induced subgraph needs at least one vertex")
        for m in ids:
            self._check_vertex(m)
        back = {old: new + 1 for new, old in enumerate(ids)}
        arcs = [(back[u], back[v]) for u, v in self.arcs if u in back and v in back]
        return Digraph(len(ids), arcs), ids

    # -- cycles -------------------------------------------------------------

    def is_acyclic(self) -> bool:
        """True iff the digraph has no directed cycle (iterative DFS)."""
        color = [0] * (self.n + 1)  # 0 new, 1 on stack, 2 done
        for start in self.vertices():
            if color[start]:
                continue
            stack: list[tuple[int, int]] = [(start, 0)]
            color[start] = 1
            while stack:
                v, idx = stack.pop()
                nbrs = self.out_lists[v - 1]
                if idx < len(nbrs):
                    stack.append((v, idx + 1))
                    u = nbrs[idx]
                    if color[u] == 1:
                        return False
                    if color[u] == 0:
                        color[u] = 1
                        stack.append((u, 0))
                else:
                    color[v] = 2
        return True

    def simple_cycles(self, max_len: int) -> list[tuple[int, ...]]:
        """All simple directed cycles with at most max_len vertices.

        Each cycle is reported once, as a closed tuple rotated so its smallest
        vertex comes first; the result is sorted by (length, vertex sequence).
        The search from each start vertex only descends into larger vertices,
        which makes the rotation canonical for free.
        """
        if max_len < 2:
            raise ValueError("max_len must be at least 2")
        found: list[tuple[int, ...]] = []
        path: list[int] = []

        def dfs(start: int, v: int) -> None:
            path.append(v)
            for u in self.out_lists[v - 1]:
                if u == start and len(path) >= 2:
                    found.append((start, *path[1:], start))
                elif u > start and u not in path and len(path) < max_len:
                    dfs(start, u)
            path.pop()

        for s in self.vertices():
            dfs(s, s)
        found.sort(key=lambda c: (len(c), c))
        return found

    # -- value semantics ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.arcs == other.arcs

    def __hash__(self) -> int:
        return hash((self.n, self.arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={sorted(self.arcs)})"


# -- shared text format ------------------------------------------------------


def parse_graph_text(text: str) -> Digraph:
    """Parse the shared graph format: `#` comments, first line n, then `u v` arcs.

    Duplicate arc lines are an error.
    """
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise GraphFormatError("empty graph file")
    try:
        n = int(lines[0])
    except ValueError:
        raise GraphFormatError(f"first line must be the vertex count, got {lines[0]!r}")
    arcs: list[Arc] = []
    seen: set[Arc] = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer arc line {ln!r}")
        if (u, v) in seen:
            raise GraphFormatError(f"duplicate arc line {ln!r}")
        seen.add((u, v))
        arcs.append((u, v))
    try:
        return Digraph(n, arcs)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def format_graph_text(g: Digraph, comment: str | None = None) -> str:
    """Serialize a digraph into the shared text format (arcs sorted)."""
    out = []
    if comment:
        for ln in comment.splitlines():
            out.append(f"# {ln}")
    out.append(str(g.n))
    out.extend(f"{u} {v}" for u, v in sorted(g.arcs))
    return "\n".join(out) + "\n"


# -- spanning-cycle table ----------------------------------------------------


def spanning_cycle_orders(g: Digraph) -> dict[int, tuple[int, ...]]:
    """For every vertex subset traced by some simple cycle, one witness order.

    Keys are vertex bitmasks; values are open cycle tuples starting at the
    subset's smallest vertex (the closing arc back to the first vertex is
    implied).  Subset dynamic programming over Hamiltonian paths, so the cost
    is ~2^n * n^2 regardless of how many distinct cycles the digraph has.
    """
    n = g.n
    out_masks = g.out_masks
    in_masks = g.in_masks
    full = (1 << n) - 1
    # ends[mask] = bitmask of vertices v such that a simple path covering
    # exactly `mask` runs from lowest(mask) to v.
    ends: dict[int, int] = {}
    parent: dict[tuple[int, int], int] = {}
    result: dict[int, tuple[int, ...]] = {}
    for mask in range(1, full + 1):
        low = mask & -mask
        s = low.bit_length() - 1
        if mask == low:
            ends[mask] = low
            continue
        e = 0
        rest = mask ^ low
        m = rest
        while m:
            vb = m & -m
            m ^= vb
            v = vb.bit_length() - 1
            prev = ends.get(mask ^ vb, 0) & in_masks[v]
            if prev:
                e |= vb
                parent[(mask, v)] = (prev & -prev).bit_length() - 1
        ends[mask] = e
        closing = e & in_masks[s]
        if closing:
            v = (closing & -closing).bit_length() - 1
            order = [v]
            cur_mask, cur = mask, v
            while cur != s:
                nxt = parent[(cur_mask, cur)]
                cur_mask ^= 1 << cur
                cur = nxt
                order.append(cur)
            order.reverse()
            result[mask] = tuple(x + 1 for x in order)
    return result
