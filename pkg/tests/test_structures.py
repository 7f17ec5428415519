import pytest

from icc import (
    Digraph,
    ICStructure,
    IcViolation,
    collapse_super_vertices,
    enumerate_i_paths,
    extract_tree,
    find_ic_structures,
    find_super_vertices,
    gen_class_a,
    gen_fig2a,
    gen_fig8,
    gen_random,
    validate_ic,
)
from icc.structures import candidate_structures, structure_from_candidate

from oracles import (
    CASE2_SEVEN,
    CASE2_SEVEN_INNER,
    CASE2_SIX,
    CASE2_SIX_INNER,
    UNCOVERED_ARC_GRAPH,
    bidirected_triangle,
    complete_symmetric,
)

EXAMPLE3_FRAGMENT = Digraph(6, [(1, 5), (5, 3), (1, 6), (6, 3)])


class TestEnumerateIPaths:
    def test_fig2a_one_to_three(self):
        assert enumerate_i_paths(gen_fig2a(), {1, 2, 3}, 1, 3) == [(1, 4, 3)]

    def test_two_parallel_paths(self):
        got = enumerate_i_paths(EXAMPLE3_FRAGMENT, {1, 3}, 1, 3)
        assert got == [(1, 5, 3), (1, 6, 3)]

    def test_unconnected_pair_empty(self):
        assert enumerate_i_paths(Digraph(3, [(1, 2)]), {1, 3}, 3, 1) == []

    def test_i_cycles_when_endpoints_equal(self):
        g = Digraph(3, [(1, 2), (2, 1)])
        assert enumerate_i_paths(g, {1}, 1, 1) == [(1, 2, 1)]

    def test_non_inner_endpoint_rejected(self):
        with pytest.raises(ValueError):
            enumerate_i_paths(gen_fig2a(), {1, 2}, 1, 3)


class TestValidate:
    def test_fig2a_valid(self):
        ic = validate_ic(gen_fig2a(), {1, 2, 3})
        assert isinstance(ic, ICStructure)
        assert ic.k == 3 and ic.savings == 2 and ic.length == 3
        assert ic.vertex_ids == (1, 2, 3, 4, 5)

    def test_i_cycle_detected(self):
        got = validate_ic(Digraph(4, [(2, 4), (4, 2)]), {1, 2, 3})
        assert isinstance(got, IcViolation)
        assert got.kind == "i_cycle"
        assert got.witness == ((2, 4, 2),)

    def test_duplicate_i_path_detected(self):
        got = validate_ic(EXAMPLE3_FRAGMENT, {1, 3})
        assert isinstance(got, IcViolation)
        assert got.kind == "duplicate_i_path"
        assert set(got.witness) == {(1, 5, 3), (1, 6, 3)}

    def test_missing_i_path_detected(self):
        got = validate_ic(Digraph(2, [(1, 2)]), {1, 2})
        assert isinstance(got, IcViolation)
        assert got.kind == "missing_i_path"

    def test_single_vertex_is_one_ic(self):
        ic = validate_ic(Digraph(1), {1})
        assert isinstance(ic, ICStructure) and ic.k == 1 and ic.length == 1

    def test_uncovered_vertex(self):
        g6 = Digraph(6, gen_fig2a().arcs)
        got = validate_ic(g6, {1, 2, 3})
        assert isinstance(got, IcViolation)
        assert got.kind == "uncovered_vertex" and got.witness == (6,)

    def test_uncovered_arc(self):
        got = validate_ic(UNCOVERED_ARC_GRAPH, CASE2_SEVEN_INNER)
        assert isinstance(got, IcViolation)
        assert got.kind == "uncovered_arc" and got.witness == ((7, 6),)

    def test_empty_inner_rejected(self):
        with pytest.raises(ValueError):
            validate_ic(gen_fig2a(), set())

    def test_structures_with_non_inner_cycles(self):
        # non-inner cycles are allowed as long as no cycle holds exactly one inner vertex
        assert isinstance(validate_ic(CASE2_SIX, CASE2_SIX_INNER), ICStructure)
        assert isinstance(validate_ic(CASE2_SEVEN, CASE2_SEVEN_INNER), ICStructure)

    def test_every_two_cycle_is_a_two_ic(self):
        for seed in range(20):
            g = gen_random(6, 0.4, seed + 500)
            for u in g.vertices():
                for v in range(u + 1, g.n + 1):
                    if (u, v) in g.arcs and (v, u) in g.arcs:
                        sub, _ = g.induced({u, v})
                        assert isinstance(validate_ic(sub, {1, 2}), ICStructure)

    def test_every_clique_is_all_inner_ic(self):
        g = complete_symmetric(4)
        assert isinstance(validate_ic(g, {1, 2, 3, 4}), ICStructure)


class TestExtractTree:
    def test_fig2a_root_one(self):
        ic = validate_ic(gen_fig2a(), {1, 2, 3})
        tree = extract_tree(ic, 1)
        assert tree.root == 1
        assert tree.parent_of == {2: 1, 4: 1, 3: 4}

    def test_two_cycle_root(self):
        ic = validate_ic(Digraph(2, [(1, 2), (2, 1)]), {1, 2})
        assert extract_tree(ic, 1).parent_of == {2: 1}

    def test_clique_star(self):
        ic = validate_ic(complete_symmetric(4), {1, 2, 3, 4})
        tree = extract_tree(ic, 2)
        assert tree.parent_of == {1: 2, 3: 2, 4: 2}

    def test_shared_vertices_agree_across_trees_case1(self):
        # with an acyclic non-inner part, the out-neighborhood of a shared
        # non-inner vertex matches in every tree containing it
        for g, inner in [
            (gen_fig2a(), {1, 2, 3}),
            (gen_class_a(4), {1, 2, 3, 4}),
            (gen_class_a(6), frozenset(range(1, 7))),
        ]:
            ic = validate_ic(g, inner)
            sub, _ = g.induced(set(g.vertices()) - set(inner)) if set(g.vertices()) - set(inner) else (None, None)
            assert sub is None or sub.is_acyclic()
            trees = {i: extract_tree(ic, i) for i in sorted(ic.inner)}
            for v in set(g.vertices()) - set(inner):
                hoods = {
                    frozenset(t.out_neighbors(v))
                    for t in trees.values()
                    if v in t.vertices
                }
                assert len(hoods) == 1

    def test_trees_may_disagree_when_non_inner_cycles_exist(self):
        # counterexample: a valid structure (union of four rooted trees, no
        # I-cycle, unique I-paths, full coverage) whose non-inner 2-cycle
        # makes two trees see different out-neighborhoods for vertex 5
        ic = validate_ic(CASE2_SIX, CASE2_SIX_INNER)
        t1 = extract_tree(ic, 1)
        t3 = extract_tree(ic, 3)
        assert t1.out_neighbors(5) == {4, 6}
        assert t3.out_neighbors(5) == {4}

    def test_trees_cover_all_arcs(self):
        for g, inner in [(gen_fig2a(), {1, 2, 3}), (CASE2_SEVEN, CASE2_SEVEN_INNER)]:
            ic = validate_ic(g, inner)
            covered = set()
            for i in sorted(ic.inner):
                tree = extract_tree(ic, i)
                covered |= {(p, c) for c, p in tree.parent_of.items()}
            assert covered == set(g.arcs)

    def test_non_inner_root_rejected(self):
        ic = validate_ic(gen_fig2a(), {1, 2, 3})
        with pytest.raises(ValueError):
            extract_tree(ic, 4)


class TestSuperVertices:
    def test_fig8_three_pairs(self):
        assert find_super_vertices(gen_fig8()) == [
            frozenset({1, 2}),
            frozenset({3, 4}),
            frozenset({5, 6}),
        ]

    def test_no_bidirectional_arcs_means_none(self):
        assert find_super_vertices(Digraph(4, [(1, 2), (2, 3), (3, 1)])) == []

    def test_complete_three_single_class(self):
        assert find_super_vertices(bidirected_triangle()) == [frozenset({1, 2, 3})]

    def test_maximality(self):
        # adding any outside vertex to a reported class breaks the definition
        g = gen_fig8()
        for sv in find_super_vertices(g):
            for extra in set(g.vertices()) - sv:
                grown = sorted(sv | {extra})
                from icc.structures import _is_super_vertex

                assert not _is_super_vertex(g, frozenset(grown))


class TestCollapse:
    def test_fig8_collapse_pair(self):
        g = gen_fig8()
        q, mapping = collapse_super_vertices(g, [frozenset({5, 6})])
        assert q.n == 5
        assert mapping == ((1,), (2,), (3,), (4,), (5, 6))
        s = 5  # quotient label of the merged pair
        assert q.out_neighbors(s) == {1, 2}
        assert q.in_neighbors(s) == {3, 4}

    def test_no_super_vertices_identity(self):
        g = gen_fig2a()
        q, mapping = collapse_super_vertices(g, [])
        assert q == g and mapping == tuple((v,) for v in g.vertices())

    def test_complete_collapses_to_point(self):
        q, mapping = collapse_super_vertices(complete_symmetric(4), [frozenset({1, 2, 3, 4})])
        assert q.n == 1 and q.arcs == frozenset()
        assert mapping == ((1, 2, 3, 4),)

    def test_overlap_rejected(self):
        g = gen_fig8()
        with pytest.raises(ValueError):
            collapse_super_vertices(g, [frozenset({1, 2}), frozenset({2, 3})])

    def test_invalid_super_vertex_rejected(self):
        with pytest.raises(ValueError):
            collapse_super_vertices(gen_fig2a(), [frozenset({4, 5})])


class TestFindStructures:
    def test_fig2a_has_three_ic(self):
        search = find_ic_structures(gen_fig2a())
        assert search.complete
        best = search.structures[0]
        assert best.host_inner == {1, 2, 3} and best.savings == 2

    def test_class_a_whole_graph_structure(self):
        for k in (4, 6):
            g = gen_class_a(k)
            search = find_ic_structures(g)
            spanning = [s for s in search.structures if s.graph.n == g.n]
            assert spanning and spanning[0].host_inner == frozenset(range(1, k + 1))

    def test_acyclic_only_singletons(self):
        g = Digraph(4, [(1, 2), (2, 3), (3, 4)])
        search = find_ic_structures(g)
        assert all(s.k == 1 for s in search.structures)
        assert {s.host_vertices for s in search.structures} == {(v,) for v in g.vertices()}

    def test_budget_flags_incomplete(self):
        search = find_ic_structures(gen_class_a(6), budget=5)
        assert not search.complete

    def test_all_results_revalidate(self):
        for seed in range(15):
            g = gen_random(6, 0.5, seed + 900)
            for s in find_ic_structures(g).structures:
                assert isinstance(validate_ic(s.graph, s.inner), ICStructure)

    def test_fig8_candidate_supports(self):
        # induced realizations live on {1..4} plus exactly one of {5, 6}
        g = gen_fig8()
        cs = candidate_structures(g)
        best = {m: c for m, c in cs.merged().items() if c.k == 4}
        supports = {c.support_tuple() for c in best.values()}
        assert supports == {(1, 2, 3, 4, 5), (1, 2, 3, 4, 6)}

    def test_fig8_exact_mode_finds_arc_subset_structure(self):
        # a spanning 4-IC exists too, but only by dropping induced arcs
        from icc.structures import structures_for_inner

        g = gen_fig8()
        cands = structures_for_inner(g, 0b001111, (1 << 6) - 1, exact=True)
        spanning = [c for c in cands if c.support_tuple() == (1, 2, 3, 4, 5, 6)]
        assert spanning
        assert all(len(c.arcs) < len(g.arcs) for c in spanning)
        s = structure_from_candidate(g, spanning[0])
        assert isinstance(validate_ic(s.graph, s.inner), ICStructure)


class TestStructureFromCandidate:
    def test_cycle_candidate_keeps_cycle_arcs_only(self):
        g = bidirected_triangle()
        cs = candidate_structures(g)
        three_cycles = [c for c in cs.cycles.values() if c.support.bit_count() == 3]
        assert three_cycles
        s = structure_from_candidate(g, three_cycles[0])
        assert len(s.graph.arcs) == 3  # no chords
        assert isinstance(validate_ic(s.graph, s.inner), ICStructure)
