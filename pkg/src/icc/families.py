"""Deterministic generators for the bundled digraph families.

Each generator builds its instance directly from the family's defining rules,
so tests can check arc sets against those rules rather than against counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graphs import Arc, Digraph

FAMILIES = ("fig2a", "class-a", "example4", "fig8", "random")


@dataclass(frozen=True)
class FamilySpec:
    """A family id plus the parameters needed to realize one instance."""

    family: str
    k: int | None = None
    n: int | None = None
    seed: int = 0
    arc_prob: Fraction = Fraction(1, 2)

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")


def gen_fig2a() -> Digraph:
    """5-vertex instance whose cycles <1,2,1>, <2,3,2> and <1,4,3,5,1> interlink."""
    arcs = [(1, 2), (2, 1), (2, 3), (3, 2), (1, 4), (4, 3), (3, 5), (5, 1)]
    return Digraph(5, arcs)


def gen_class_a(k: int) -> Digraph:
    """Class-A instance: K/2 hub vertices feeding K/2 bidirectional pairs.

    For each i in 1..K/2: hub K+i has arcs to 2i-1 and 2i only; 2i-1 and 2i
    point at each other and at every hub except K+i.  N = 3K/2.
    """
    if k < 2 or k % 2:
        raise ValueError(f"class-a needs an even K >= 2, got {k}")
    n = 3 * k // 2
    arcs: list[Arc] = []
    hubs = range(k + 1, n + 1)
    for i in range(1, k // 2 + 1):
        hub = k + i
        a, b = 2 * i - 1, 2 * i
        arcs += [(hub, a), (hub, b), (a, b), (b, a)]
        arcs += [(v, h) for v in (a, b) for h in hubs if h != hub]
    return Digraph(n, arcs)


def gen_example4(n: int) -> Digraph:
    """Bidirection-free instance: vertex K+i points at i, and i at all other K+j.

    K = N/2.  Minimum out-degree is 1 and there are no bidirectional arcs.
    """
    if n < 4 or n % 2:
        raise ValueError(f"example4 needs an even N >= 4, got {n}")
    k = n // 2
    arcs: list[Arc] = []
    for i in range(1, k + 1):
        arcs.append((k + i, i))
        arcs += [(i, j) for j in range(k + 1, n + 1) if j != k + i]
    return Digraph(n, arcs)


def gen_fig8() -> Digraph:
    """Three 2-cliques {1,2}, {3,4}, {5,6} joined cyclically by complete arc sets."""
    cliques = [(1, 2), (3, 4), (5, 6)]
    arcs: list[Arc] = []
    for a, b in cliques:
        arcs += [(a, b), (b, a)]
    for src, dst in zip(cliques, cliques[1:] + cliques[:1]):
        arcs += [(u, v) for u in src for v in dst]
    return Digraph(6, arcs)


class _SplitMix64:
    """Self-contained deterministic PRNG (splitmix64), stable across platforms."""

    def __init__(self, seed: int) -> None:
        self._state = seed & 0xFFFFFFFFFFFFFFFF

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
        return z ^ (z >> 31)

    def next_u53(self) -> int:
        return self.next_u64() >> 11


def gen_random(n: int, arc_prob: Fraction | float, seed: int) -> Digraph:
    """Random digraph with independent arc inclusion; identical for equal seeds.

    arc_prob may be a Fraction for exact thresholds; endpoints 0 and 1 yield
    the empty-arc and complete symmetric digraphs exactly.
    """
    if not 1 <= n <= 30:
        raise ValueError(f"random family supports 1 <= n <= 30, got {n}")
    p = Fraction(arc_prob).limit_denominator(1 << 30) if isinstance(arc_prob, float) else Fraction(arc_prob)
    if not 0 <= p <= 1:
        raise ValueError(f"arc probability must be in [0, 1], got {p}")
    threshold = (p.numerator << 53) // p.denominator
    rng = _SplitMix64(seed)
    arcs = [
        (u, v)
        for u in range(1, n + 1)
        for v in range(1, n + 1)
        if u != v and rng.next_u53() < threshold
    ]
    return Digraph(n, arcs)


def generate(spec: FamilySpec) -> Digraph:
    """Realize a FamilySpec."""
    if spec.family == "fig2a":
        return gen_fig2a()
    if spec.family == "class-a":
        if spec.k is None:
            raise ValueError("class-a requires K")
        return gen_class_a(spec.k)
    if spec.family == "example4":
        if spec.n is None:
            raise ValueError("example4 requires N")
        return gen_example4(spec.n)
    if spec.family == "fig8":
        return gen_fig8()
    if spec.n is None:
        raise ValueError("random requires N")
    return gen_random(spec.n, spec.arc_prob, spec.seed)
