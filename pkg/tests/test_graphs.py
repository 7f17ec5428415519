import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icc import Digraph, GraphFormatError, format_graph_text, gen_class_a, gen_fig2a, gen_random, parse_graph_text
from icc.graphs import spanning_cycle_orders

from oracles import bidirected_triangle, brute_is_acyclic, brute_simple_cycles, complete_symmetric


@st.composite
def digraphs(draw, max_n=6):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    arcs = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Digraph(n, arcs)


class TestConstruction:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Digraph(2, [(1, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Digraph(2, [(1, 3)])

    def test_rejects_nonpositive_n(self):
        with pytest.raises(ValueError):
            Digraph(0)

    def test_value_semantics(self):
        a = Digraph(3, [(1, 2), (2, 3)])
        b = Digraph(3, [(2, 3), (1, 2)])
        assert a == b and hash(a) == hash(b)


class TestOutNeighbors:
    def test_fig2a_vertex_one(self):
        assert gen_fig2a().out_neighbors(1) == {2, 4}

    def test_empty_graph(self):
        g = Digraph(4)
        assert all(g.out_neighbors(v) == frozenset() for v in g.vertices())

    def test_bidirected_triangle(self):
        assert bidirected_triangle().out_neighbors(2) == {1, 3}

    def test_out_of_range_raises(self):
        with pytest.raises(ValueError):
            gen_fig2a().out_neighbors(6)


class TestInduced:
    def test_fig2a_pair(self):
        sub, ids = gen_fig2a().induced({1, 2})
        assert ids == (1, 2)
        assert sub.arcs == {(1, 2), (2, 1)}

    def test_identity(self):
        g = gen_fig2a()
        sub, ids = g.induced(g.vertices())
        assert sub == g and ids == (1, 2, 3, 4, 5)

    def test_fig2a_four_five(self):
        sub, ids = gen_fig2a().induced({4, 5})
        assert ids == (4, 5) and sub.arcs == frozenset()

    def test_membership_property_random(self):
        # arcs(induced) == arcs intersected with s x s, by exhaustive membership
        for seed in range(30):
            g = gen_random(6, 0.4, seed)
            members = [v for v in g.vertices() if (seed >> v) & 1] or [1]
            sub, ids = g.induced(members)
            back = dict(enumerate(ids, start=1))
            lifted = {(back[u], back[v]) for u, v in sub.arcs}
            expected = {
                (u, v) for u in members for v in members if (u, v) in g.arcs
            }
            assert lifted == expected


class TestAcyclic:
    def test_single_vertex(self):
        assert Digraph(1).is_acyclic()

    def test_two_cycle(self):
        assert not Digraph(2, [(1, 2), (2, 1)]).is_acyclic()

    def test_fig2a_minus_one_two(self):
        sub, _ = gen_fig2a().induced({3, 4, 5})
        assert sub.is_acyclic()

    @settings(max_examples=60, deadline=None)
    @given(digraphs())
    def test_matches_cycle_enumeration(self, g):
        assert g.is_acyclic() == (not g.simple_cycles(g.n) if g.n >= 2 else True)
        assert g.is_acyclic() == brute_is_acyclic(g)


class TestSimpleCycles:
    def test_fig2a_all_cycles(self):
        # brute-force permutation enumeration over the 8 arcs gives exactly these
        got = gen_fig2a().simple_cycles(5)
        expect = {(1, 2, 1), (2, 3, 2), (1, 4, 3, 5, 1), (1, 4, 3, 2, 1), (1, 2, 3, 5, 1)}
        assert set(got) == expect
        assert set(got) == brute_simple_cycles(gen_fig2a(), 5)

    def test_acyclic_graph_empty(self):
        assert Digraph(4, [(1, 2), (2, 3)]).simple_cycles(4) == []

    def test_bidirected_triangle_counts(self):
        got = bidirected_triangle().simple_cycles(3)
        assert len([c for c in got if len(c) == 3]) == 3  # three 2-cycles
        assert len([c for c in got if len(c) == 4]) == 2  # two 3-cycles
        assert set(got) == brute_simple_cycles(bidirected_triangle(), 3)

    def test_length_bound_respected(self):
        got = bidirected_triangle().simple_cycles(2)
        assert all(len(c) == 3 for c in got)

    def test_canonical_rotation_and_walks(self):
        g = gen_random(6, 0.5, 11)
        for cyc in g.simple_cycles(6):
            assert cyc[0] == min(cyc)
            assert all((a, b) in g.arcs for a, b in zip(cyc, cyc[1:]))

    @settings(max_examples=40, deadline=None)
    @given(digraphs(max_n=5))
    def test_matches_brute_force(self, g):
        assert set(g.simple_cycles(g.n)) == brute_simple_cycles(g, g.n) if g.n >= 2 else True


class TestComplement:
    def test_complete_becomes_empty(self):
        assert complete_symmetric(4).complement().arcs == frozenset()

    def test_empty_three_becomes_triangle(self):
        assert Digraph(3).complement() == bidirected_triangle()

    def test_fig2a_has_twelve(self):
        assert len(gen_fig2a().complement().arcs) == 12

    @settings(max_examples=40, deadline=None)
    @given(digraphs())
    def test_involution(self, g):
        assert g.complement().complement() == g


class TestMinOutDegree:
    def test_clique_of_four(self):
        assert complete_symmetric(4).min_out_degree() == 3

    def test_class_a_k4(self):
        assert gen_class_a(4).min_out_degree() == 2

    def test_single_vertex(self):
        assert Digraph(1).min_out_degree() == 0


class TestTextFormat:
    def test_round_trip(self):
        g = gen_fig2a()
        assert parse_graph_text(format_graph_text(g)) == g

    def test_comments_and_blanks(self):
        text = "# instance\n\n3\n# arc\n1 2\n2 3\n"
        assert parse_graph_text(text) == Digraph(3, [(1, 2), (2, 3)])

    def test_duplicate_line_rejected(self):
        with pytest.raises(GraphFormatError):
            parse_graph_text("3\n1 2\n1 2\n")

    def test_bad_header(self):
        with pytest.raises(GraphFormatError):
            parse_graph_text("x\n1 2\n")

    def test_bad_arc_line(self):
        with pytest.raises(GraphFormatError):
            parse_graph_text("3\n1 2 3\n")

    def test_self_loop_rejected(self):
        with pytest.raises(GraphFormatError):
            parse_graph_text("3\n2 2\n")


class TestSpanningCycleOrders:
    def test_matches_brute_cycle_vertex_sets(self):
        for seed in range(20):
            g = gen_random(6, 0.45, seed + 100)
            table = spanning_cycle_orders(g)
            brute = brute_simple_cycles(g, g.n)
            brute_sets = {frozenset(c[:-1]) for c in brute}
            got_sets = {
                frozenset(v for v in range(1, g.n + 1) if (m >> (v - 1)) & 1)
                for m in table
            }
            assert got_sets == brute_sets

    def test_witness_orders_are_cycles(self):
        g = gen_random(6, 0.5, 3)
        for mask, order in spanning_cycle_orders(g).items():
            closed = (*order, order[0])
            assert all((a, b) in g.arcs for a, b in zip(closed, closed[1:]))
            assert order[0] == min(order)
