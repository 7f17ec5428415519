import pytest

from icc import (
    CapExceededError,
    Digraph,
    ICStructure,
    certify_optimal,
    find_figure_of_eight,
    gen_example4,
    gen_fig2a,
    gen_random,
    mais,
    minimal_partial_clique_check,
    three_ic_from_figure_eight,
    validate_ic,
)
from icc.structures import candidate_structures, structure_from_candidate

from oracles import (
    CASE2_SEVEN,
    CASE2_SEVEN_INNER,
    CASE2_SIX,
    CASE2_SIX_INNER,
    ICYCLE_FIVE,
    complete_symmetric,
    directed_cycle,
)


class TestMais:
    def test_fig2a(self):
        value, witness = mais(gen_fig2a())
        assert value == 3
        sub, _ = gen_fig2a().induced(witness)
        assert len(witness) == 3 and sub.is_acyclic()

    def test_icycle_instance_is_four(self):
        # both 2-cycles share vertex 2, so one removal suffices
        value, witness = mais(ICYCLE_FIVE)
        assert value == 4
        sub, _ = ICYCLE_FIVE.induced(witness)
        assert sub.is_acyclic()

    def test_acyclic_gives_n(self):
        g = Digraph(5, [(1, 2), (2, 3), (4, 5)])
        assert mais(g) == (5, frozenset({1, 2, 3, 4, 5}))

    def test_complete_graph(self):
        assert mais(complete_symmetric(4))[0] == 1

    def test_witness_is_acyclic_and_maximal_randoms(self):
        for seed in range(25):
            g = gen_random(7, 0.4, seed + 40)
            value, witness = mais(g)
            sub, _ = g.induced(witness)
            assert sub.is_acyclic() and len(witness) == value

    def test_cap(self):
        with pytest.raises(CapExceededError):
            mais(Digraph(6), cap=5)


class TestCertify:
    def test_example4_case1(self):
        ic = validate_ic(gen_example4(6), {1, 2, 3})
        cert = certify_optimal(ic)
        assert cert.kind == "case1"
        assert len(cert.removed) == 2  # keeps an acyclic witness of size 4
        assert ic.length == 4 == mais(gen_example4(6))[0]

    def test_fig2a_case1(self):
        ic = validate_ic(gen_fig2a(), {1, 2, 3})
        assert certify_optimal(ic).kind == "case1"

    def test_case2_two_cycle(self):
        ic = validate_ic(CASE2_SIX, CASE2_SIX_INNER)
        cert = certify_optimal(ic)
        assert cert.kind == "case2"
        assert cert.cycles == ((5, 6),)
        assert {grp for grp, _ in cert.groups} == {(1, 3), (2, 4)}
        assert len(cert.removed) == ic.k - 1
        kept = set(CASE2_SIX.vertices()) - cert.removed
        sub, _ = CASE2_SIX.induced(kept)
        assert sub.is_acyclic()
        assert mais(CASE2_SIX)[0] == ic.length == 3

    def test_case2_three_cycle(self):
        ic = validate_ic(CASE2_SEVEN, CASE2_SEVEN_INNER)
        cert = certify_optimal(ic)
        assert cert.kind == "case2"
        assert cert.cycles == ((5, 6, 7),)
        assert mais(CASE2_SEVEN)[0] == ic.length == 4

    def test_exhausted_budget_reports_none(self):
        ic = validate_ic(CASE2_SIX, CASE2_SIX_INNER)
        assert certify_optimal(ic, budget=0).kind == "none"

    def test_k_le_3_always_case1_randoms(self):
        found = 0
        for seed in range(40):
            g = gen_random(6, 0.45, seed + 800)
            for cand in candidate_structures(g).merged().values():
                if cand.k > 3:
                    continue
                s = structure_from_candidate(g, cand)
                cert = certify_optimal(s)
                assert cert.kind == "case1"
                assert s.length == mais(s.graph)[0]
                found += 1
        assert found > 50


class TestFigureOfEight:
    def test_two_triangles_sharing_a_vertex(self):
        g = Digraph(5, [(1, 2), (2, 3), (3, 1), (1, 4), (4, 5), (5, 1)])
        f8 = find_figure_of_eight(g)
        assert f8 is not None
        c1, c2 = f8
        assert set(c1[:-1]) & set(c2[:-1]) == {1}

    def test_single_cycle_none(self):
        assert find_figure_of_eight(directed_cycle(5)) is None

    def test_fig2a_found_at_one(self):
        f8 = find_figure_of_eight(gen_fig2a())
        assert f8 is not None

    def test_malformed_pair_rejected(self):
        g = gen_fig2a()
        with pytest.raises(ValueError):
            three_ic_from_figure_eight(g, ((1, 2, 1), (1, 2, 1)))


class TestThreeIcExtraction:
    def test_fig2a_yields_valid_three_ic(self):
        g = gen_fig2a()
        f8 = find_figure_of_eight(g)
        s = three_ic_from_figure_eight(g, f8)
        assert isinstance(s, ICStructure) and s.k == 3
        assert isinstance(validate_ic(s.graph, s.inner), ICStructure)

    def test_minimal_cross_path_instance(self):
        # two 2-cycles at vertex 1 with return paths through 4 and 5
        g = Digraph(5, [(1, 2), (2, 1), (1, 3), (3, 1), (2, 4), (4, 3), (3, 5), (5, 2)])
        f8 = find_figure_of_eight(g)
        s = three_ic_from_figure_eight(g, f8)
        assert isinstance(s, ICStructure)
        assert s.host_inner == {1, 2, 3}

    def test_blocking_i_cycle_gives_none(self):
        # the only triple is {1, 2, 3}, and its forced return paths both run
        # through vertex 4, welding the unavoidable I-cycle <3, 4, 3>
        g = Digraph(
            4,
            [(1, 2), (2, 1), (1, 3), (3, 1), (2, 4), (4, 3), (3, 4), (4, 2)],
        )
        f8 = find_figure_of_eight(g)
        assert f8 is not None and set(f8[0][:-1]) | set(f8[1][:-1]) == {1, 2, 3}
        assert three_ic_from_figure_eight(g, f8) is None


class TestMinimalPartialClique:
    def test_directed_cycle_is_minimal(self):
        for n in (2, 3, 5, 7):
            assert minimal_partial_clique_check(directed_cycle(n))

    def test_two_linked_two_cycles_not_minimal(self):
        g = Digraph(4, [(1, 2), (2, 1), (3, 4), (4, 3), (2, 3)])
        assert not minimal_partial_clique_check(g)

    def test_clique_is_minimal(self):
        for n in (1, 2, 4, 6):
            assert minimal_partial_clique_check(complete_symmetric(n))

    def test_cap(self):
        with pytest.raises(CapExceededError):
            minimal_partial_clique_check(Digraph(6), cap=5)


def _minimal_deg2_instances(count: int):
    """Seeded random minimal partial cliques with min out-degree exactly 2."""
    out = []
    seed = 0
    while len(out) < count and seed < 30000:
        seed += 1
        g = gen_random(4 + seed % 5, [0.35, 0.45, 0.55, 0.65][seed % 4], seed * 7 + 3)
        if g.min_out_degree() == 2 and minimal_partial_clique_check(g):
            out.append(g)
    return out


class TestMinimalDeg2Properties:
    def test_figure_of_eight_always_exists(self):
        instances = _minimal_deg2_instances(12)
        assert len(instances) == 12
        for g in instances:
            assert find_figure_of_eight(g) is not None

    def test_three_ic_extraction_succeeds(self):
        for g in _minimal_deg2_instances(12):
            f8 = find_figure_of_eight(g)
            s = three_ic_from_figure_eight(g, f8)
            assert isinstance(s, ICStructure)
            assert isinstance(validate_ic(s.graph, s.inner), ICStructure)
