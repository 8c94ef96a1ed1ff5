import pytest

from tokengraph.exceptions import PreconditionError
from tokengraph.services import analysis, graph_core, kpg


class TestDegreeSets:
    def test_profile(self, c4_k2):
        profile = analysis.degree_profile(c4_k2)
        assert profile.degree_set == [2, 4]
        assert profile.total == 6
        assert profile.to_dict()["level_counts"] == {"2": 4, "4": 2}

    def test_profile_needs_regular(self, star3_k2):
        with pytest.raises(PreconditionError):
            analysis.degree_profile(star3_k2)

    @pytest.mark.parametrize("spec,k", [("petersen", 3), ("cubic8", 4), ("cycle:8", 3), ("cube", 4)])
    def test_level_set_identity(self, spec, k):
        assert analysis.level_set_identity(kpg.build(graph_core.from_spec(spec), k))

    def test_cubic8_degree_sets_are_disjoint(self):
        graph = graph_core.from_spec("cubic8")
        assert analysis.degree_set(graph, 3) == [3, 5, 7, 9]
        assert analysis.degree_set(graph, 4) == [4, 6, 8, 10]

    def test_monotone_on_c6(self):
        assert analysis.degree_set_monotonicity(graph_core.generate("cycle", [6]), 3)

    def test_monotonicity_range(self, c4):
        with pytest.raises(PreconditionError):
            analysis.degree_set_monotonicity(c4, 3)


class TestCliques:
    def test_octahedron_triangles(self, k4, octahedron):
        assert analysis.clique_count_formula(k4, 2, 3) == 8
        assert analysis.count_token_graph_cliques(octahedron, 3) == 8
        assert analysis.count_token_graph_cliques(octahedron, 4) == 0
        assert analysis.clique_count_formula(k4, 2, 4) == 0

    def test_edges_are_counted_twice(self, k4, octahedron):
        assert analysis.clique_count_formula(k4, 2, 2) == 2 * octahedron.size

    @pytest.mark.parametrize("spec,k", [("cubic8", 3), ("complete:5", 2), ("circulant:7,1,2", 3)])
    def test_formula_matches_oracle(self, spec, k):
        graph = graph_core.from_spec(spec)
        tg = kpg.build(graph, k)
        for c in (3, 4):
            assert analysis.clique_count_formula(graph, k, c) == analysis.count_token_graph_cliques(tg, c)

    def test_triangle_free_stays_triangle_free(self, petersen):
        assert analysis.count_token_graph_cliques(kpg.build(petersen, 2), 3) == 0

    def test_regular_clique_presence(self, k4, petersen):
        assert analysis.regular_clique_presence(graph_core.from_spec("cubic8"), 3, 3)
        assert analysis.regular_clique_presence(petersen, 2, 3).data == {"formula": 0}

    def test_regular_clique_presence_skips_complete_graphs(self, k4):
        result = analysis.regular_clique_presence(k4, 2, 4)
        assert result.ok
        assert result.detail == "complete graph"
        assert result.data == {"formula": 0}


class TestJohnsonSubgraphs:
    def test_range(self):
        assert analysis.johnson_subgraph_range(4, 2, 3) == (1, 2)
        assert analysis.johnson_subgraph_range(8, 3, 3) == (1, 2)

    def test_octahedron(self, k4, octahedron):
        assert analysis.johnson_subgraph_count(k4, 2, 3, 1) == 4
        result = analysis.johnson_subgraph_oracle(octahedron, 3, 1)
        assert result.ok
        assert result.data["pairs"] == 4

    def test_cubic8(self):
        graph = graph_core.from_spec("cubic8")
        tg = kpg.build(graph, 3)
        assert analysis.johnson_subgraph_count(graph, 3, 3, 2) == 10
        result = analysis.johnson_subgraph_oracle(tg, 3, 2)
        assert result.ok
        assert result.data["pairs"] == 10

    def test_out_of_range(self, k4):
        with pytest.raises(PreconditionError):
            analysis.johnson_subgraph_count(k4, 2, 3, 3)


class TestDiameterAndConnectivity:
    def test_petersen_diameter_inputs(self, petersen):
        report = analysis.diameter_report(petersen, 2)
        assert report.min_outer_boundary == 4
        assert report.witness == 0b11
        assert report.delta2k == 2
        assert report.formula_diameter == 4
        assert report.bfs_diameter >= 2

    def test_diameter_needs_diameter_two(self):
        with pytest.raises(PreconditionError):
            analysis.diameter_report(graph_core.generate("cycle", [6]), 2)

    def test_c4_pairs_form_k24(self, c4_k2):
        report = analysis.kpg_vertex_connectivity(c4_k2)
        assert report.claimed == 2
        assert report.exact == 2
        assert report.agree

    def test_oracle_cap(self, petersen):
        report = analysis.kpg_vertex_connectivity(kpg.build(petersen, 2), oracle_cap=10)
        assert report.exact is None
        assert report.agree is None


class TestAutomorphismLift:
    def test_c4_pairs(self, c4_k2):
        result = analysis.automorphism_lift_check(c4_k2)
        assert result.ok, result.detail
        assert result.data["aut_order"] == 8
        assert result.data["injective"]
        assert result.data["token_aut_order"] == 48

    def test_lift_and_compose(self, c4_k2):
        rotation = (1, 2, 3, 0)
        lifted = analysis.lift_automorphism(c4_k2, rotation)
        assert analysis.preserves_adjacency(c4_k2, lifted)
        assert analysis.lift_automorphism(c4_k2, analysis.compose(rotation, rotation)) == analysis.compose(lifted, lifted)

    def test_rejects_non_automorphism(self, c4_k2):
        with pytest.raises(PreconditionError):
            analysis.lift_automorphism(c4_k2, (0, 2, 1, 3))

    def test_petersen_group(self, petersen):
        result = analysis.automorphism_lift_check(kpg.build(petersen, 2))
        assert result.ok
        assert result.data["aut_order"] == 120
        assert "token_aut_order" not in result.data

    def test_lift_table_rows_match_single_lifts(self):
        tg = kpg.build(graph_core.from_spec("cocktail_party:3"), 2)
        group = graph_core.automorphisms(tg.underlying)
        table = analysis.lift_table(tg, group)
        assert table.shape == (48, 15)
        for row, perm in zip(table, group):
            assert tuple(int(x) for x in row) == analysis.lift_automorphism(tg, perm)
        assert analysis.lift_table(tg, []).shape == (0, 15)


class TestDensest:
    @pytest.mark.parametrize("spec,k", [("petersen", 3), ("cubic8", 4), ("cycle:7", 3)])
    def test_duality_and_exchange(self, spec, k):
        graph = graph_core.from_spec(spec)
        assert analysis.density_duality(graph, k)
        assert analysis.least_dense_exchange(graph, k)
        assert analysis.densest_degree_bounds(kpg.build(graph, k))

    def test_c4_bounds(self, c4_k2):
        assert analysis.densest_degree_bounds(c4_k2).ok


class TestGlobalStructure:
    def test_bipartite_equivalence(self, c4_k2, octahedron):
        assert analysis.bipartite_equivalence(c4_k2).data == {"token_bipartite": True, "odd_girth": None}
        result = analysis.bipartite_equivalence(octahedron)
        assert result.ok
        assert not result.data["token_bipartite"]

    def test_average_degree(self, c4_k2, octahedron):
        assert analysis.average_degree_identity(c4_k2).data == {"ratio": "2/3"}
        assert analysis.average_degree_identity(octahedron).data == {"ratio": "1"}
