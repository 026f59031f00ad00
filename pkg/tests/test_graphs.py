import itertools

import pytest

from brokencircuits.algebra import BiPolynomial, IntPolynomial
from brokencircuits.errors import PreconditionError, SchemaError
from brokencircuits.graphs import (
    Graph,
    broken_neighbourhoods,
    chromatic_polynomial,
    cycles_edge_sets,
    cycles_vertex_sets,
    degree1_upset_order,
    domination_polynomial,
    is_cyclically_claw_free,
    q_at_minus_one,
    subgraph_component_polynomial,
    whitney_edge_counts,
)
from brokencircuits.oracles import oracle_colourings, oracle_dominating


def poly(*coeffs):
    return IntPolynomial(coeffs)


class TestGraphBasics:
    def test_rejects_loops_and_parallels(self):
        with pytest.raises(SchemaError):
            Graph([0, 1], [(0, 0)])
        with pytest.raises(SchemaError):
            Graph([0, 1], [(0, 1), (1, 0)])

    def test_spanning_components(self):
        k3 = Graph.complete(3)
        assert k3.spanning_component_count([]) == 3
        assert k3.spanning_component_count([0]) == 2
        assert k3.spanning_component_count([0, 1, 2]) == 1

    def test_closed_neighborhood(self):
        p3 = Graph.path(3)
        assert p3.closed_neighborhood(1) == {0, 1, 2}
        assert p3.closed_neighborhood([0, 2]) == {0, 1, 2}


class TestCycles:
    def test_tree_has_none(self):
        assert cycles_edge_sets(Graph.path(5)) == []

    def test_k3_has_one(self):
        assert cycles_edge_sets(Graph.complete(3)) == [frozenset({0, 1, 2})]

    def test_k4_has_seven(self):
        cycles = cycles_edge_sets(Graph.complete(4))
        assert len(cycles) == 7
        assert len({len(c) for c in cycles}) == 2  # triangles and squares
        assert sum(1 for c in cycles if len(c) == 3) == 4
        assert sum(1 for c in cycles if len(c) == 4) == 3

    def test_cycle_space_dimension_lower_bound(self):
        # at least 2^(|E|-|V|+c) - 1 cycles would be too many to list for
        # dense graphs, but for C5 there is exactly one
        assert len(cycles_edge_sets(Graph.cycle(5))) == 1

    def test_known_cycle_counts(self):
        assert len(cycles_edge_sets(Graph.complete(5))) == 37
        assert len(cycles_edge_sets(Graph.complete_bipartite(3, 3))) == 15
        petersen = Graph(
            range(10),
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
             (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
             (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        )
        by_len = {}
        for c in cycles_edge_sets(petersen):
            by_len[len(c)] = by_len.get(len(c), 0) + 1
        assert by_len == {5: 12, 6: 10, 8: 15, 9: 20}

    def test_vertex_sets(self):
        assert cycles_vertex_sets(Graph.complete(3)) == [frozenset({0, 1, 2})]


class TestChromatic:
    def test_k3(self):
        # brute force the defining sum first
        k3 = Graph.complete(3)
        coeffs = [0, 0, 0, 0]
        for r in range(4):
            for combo in itertools.combinations(range(3), r):
                coeffs[k3.spanning_component_count(combo)] += (-1) ** r
        assert IntPolynomial(coeffs) == poly(0, 2, -3, 1)
        assert chromatic_polynomial(k3, "full") == poly(0, 2, -3, 1)
        assert chromatic_polynomial(k3, "broken_circuit") == poly(0, 2, -3, 1)

    def test_k4(self):
        k4 = Graph.complete(4)
        expected = poly(0, -6, 11, -6, 1)
        assert chromatic_polynomial(k4, "full") == expected
        assert chromatic_polynomial(k4, "broken_circuit") == expected
        # falling factorial x(x-1)(x-2)(x-3)
        x = IntPolynomial.x()
        assert expected == x * (x - 1) * (x - 2) * (x - 3)

    def test_edgeless(self):
        g = Graph(range(2), [])
        assert chromatic_polynomial(g, "full") == poly(0, 0, 1)
        assert chromatic_polynomial(g, "broken_circuit") == poly(0, 0, 1)

    def test_counts_k3(self):
        assert whitney_edge_counts(Graph.complete(3)) == (1, 3, 2, 0)

    def test_coefficient_law(self, corpus):
        for name, g in corpus.items():
            if len(g.edges) > 10:
                continue
            p = chromatic_polynomial(g, "full")
            counts = whitney_edge_counts(g)
            n = len(g.vertices)
            for k, b in enumerate(counts):
                if k <= n:
                    assert p.coefficient(n - k) == (-1) ** k * b, (name, k)

    def test_petersen(self):
        petersen = Graph(
            range(10),
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
             (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
             (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        )
        full = chromatic_polynomial(petersen, "full")
        assert chromatic_polynomial(petersen, "broken_circuit") == full
        assert full.evaluate(3) == oracle_colourings(petersen, 3) == 120

    def test_matches_colouring_oracle(self, corpus):
        for name, g in corpus.items():
            if len(g.edges) > 10 or len(g.vertices) > 6:
                continue
            p = chromatic_polynomial(g, "full")
            for x in (1, 2, 3):
                assert p.evaluate(x) == oracle_colourings(g, x), (name, x)


class TestCyclicallyClawFree:
    def test_k3(self):
        assert is_cyclically_claw_free(Graph.complete(3))

    def test_star_has_claw_centre_off_cycle(self):
        assert is_cyclically_claw_free(Graph.star(3))

    def test_c4_with_pendant(self):
        g = Graph(range(5), [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
        assert not is_cyclically_claw_free(g)

    def test_bowtie_excluded(self):
        # the shared vertex has degree 4 and sits on both triangles;
        # removing it genuinely splits components, so the pruned sums
        # would diverge if this were allowed through
        g = Graph(range(5), [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
        assert not is_cyclically_claw_free(g)


class TestSubgraphComponents:
    def test_single_vertex(self):
        assert subgraph_component_polynomial(Graph([7], [])) == BiPolynomial(
            {(0, 0): 1, (1, 1): 1}
        )

    def test_k3(self):
        assert subgraph_component_polynomial(Graph.complete(3)) == BiPolynomial(
            {(0, 0): 1, (1, 1): 3, (2, 1): 3, (3, 1): 1}
        )

    def test_edgeless_two_is_square(self):
        one_plus_xy = BiPolynomial({(0, 0): 1, (1, 1): 1})
        assert subgraph_component_polynomial(Graph(range(2), [])) == one_plus_xy**2

    def test_q_at_minus_one_k3(self):
        k3 = Graph.complete(3)
        expected = poly(1, -1)
        for method in ("direct", "restricted", "acyclic"):
            assert q_at_minus_one(k3, method) == expected
        assert subgraph_component_polynomial(k3).substitute_x(-1) == expected

    def test_q_at_minus_one_edgeless(self):
        for n in range(1, 5):
            g = Graph(range(n), [])
            assert q_at_minus_one(g, "direct") == (poly(1, -1)) ** n

    def test_k3_at_minus_one_minus_one(self):
        # even-edge minus odd-edge broken-circuit-free induced subgraphs
        value = q_at_minus_one(Graph.complete(3), "acyclic").evaluate(-1)
        avoiding = [frozenset(), {0}, {1}, {2}, {0, 2}, {1, 2}]
        k3 = Graph.complete(3)
        direct = sum(
            1 if k3.induced_edge_count(a) % 2 == 0 else -1 for a in avoiding
        )
        assert value == direct == 2

    def test_methods_agree_on_ccf_corpus(self, corpus):
        for name, g in corpus.items():
            if not is_cyclically_claw_free(g):
                continue
            direct = q_at_minus_one(g, "direct")
            assert q_at_minus_one(g, "restricted") == direct, name
            assert q_at_minus_one(g, "acyclic") == direct, name

    def test_rejects_non_ccf(self):
        g = Graph(range(5), [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
        with pytest.raises(PreconditionError):
            q_at_minus_one(g, "restricted")


class TestDomination:
    def test_p2(self):
        assert domination_polynomial(Graph.path(2), "direct") == poly(0, 2, 1)

    def test_single_vertex(self):
        g = Graph([0], [])
        assert domination_polynomial(g, "direct") == poly(0, 1)
        assert domination_polynomial(g, "alternating") == poly(0, 1)
        with pytest.raises(PreconditionError):
            domination_polynomial(g, "pruned")

    def test_p3(self):
        expected = poly(0, 1, 3, 1)
        for method in ("direct", "alternating", "pruned"):
            assert domination_polynomial(Graph.path(3), method) == expected

    def test_matches_oracle(self, corpus):
        for name, g in corpus.items():
            if len(g.vertices) > 7:
                continue
            p = domination_polynomial(g, "direct")
            counts = oracle_dominating(g)
            assert all(
                p.coefficient(k) == c for k, c in enumerate(counts)
            ), name

    def test_three_methods_agree(self, corpus):
        for name, g in corpus.items():
            if len(g.vertices) > 8:
                continue
            direct = domination_polynomial(g, "direct")
            assert domination_polynomial(g, "alternating") == direct, name
            if all(g.degree(v) > 0 for v in g.vertices):
                assert domination_polynomial(g, "pruned") == direct, name

    def test_broken_neighbourhoods_p3(self):
        # vertex 2 is the maximum of N[1] = {0,1,2}? no: N[2] = {1,2}, and
        # 2 = max N[2], giving broken neighbourhood {1}
        out = broken_neighbourhoods(Graph.path(3))
        assert frozenset({1}) in out


class TestDegree1Upset:
    def test_p3(self):
        g, pendants = degree1_upset_order(Graph.path(3))
        assert pendants == [frozenset({1})]
        assert g.vertices[-2:] == (0, 2)  # both leaves pushed last
        assert domination_polynomial(g, "pruned", broken=pendants) == poly(0, 1, 3, 1)

    def test_c4_has_no_pendants(self):
        g, pendants = degree1_upset_order(Graph.cycle(4))
        assert pendants == []

    def test_star(self):
        star = Graph.star(3)
        g, pendants = degree1_upset_order(star)
        assert pendants == [frozenset({0})]
        direct = domination_polynomial(star, "direct")
        assert domination_polynomial(g, "pruned", broken=pendants) == direct

    def test_rejects_isolated_edge(self):
        with pytest.raises(PreconditionError):
            degree1_upset_order(Graph.path(2))
        with pytest.raises(PreconditionError):
            degree1_upset_order(Graph(range(2), []))

    def test_random_graphs_with_pendants(self):
        import random

        from brokencircuits.graphs import random_graph

        rng = random.Random(88)
        built = 0
        while built < 25:
            g = random_graph(rng, rng.randint(4, 7), 0.35)
            degs = [g.degree(v) for v in g.vertices]
            if 0 in degs or 1 not in degs:
                continue
            if any(degs[u] == 1 and degs[v] == 1 for u, v in g.edges):
                continue
            reordered, pendants = degree1_upset_order(g)
            assert pendants
            direct = domination_polynomial(reordered, "direct")
            assert domination_polynomial(reordered, "pruned", broken=pendants) == direct
            assert domination_polynomial(reordered, "pruned") == direct
            built += 1
