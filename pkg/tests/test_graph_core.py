import networkx as nx
import pytest

from tokengraph.exceptions import CapExceededError, GraphFormatError, PreconditionError
from tokengraph.models.graph import SimpleGraph
from tokengraph.services import canonical, graph_core, kpg
from tokengraph.utils import adjacency


class TestGenerators:
    @pytest.mark.parametrize(
        "spec,n,edges",
        [
            ("cycle:5", 5, 5),
            ("path:4", 4, 3),
            ("star:3", 4, 3),
            ("complete:5", 5, 10),
            ("empty:3", 3, 0),
            ("circulant:8,1,3", 8, 16),
            ("cocktail_party:3", 6, 12),
            ("petersen", 10, 15),
            ("cube", 8, 12),
            ("cubic8", 8, 12),
        ],
    )
    def test_sizes(self, spec, n, edges):
        graph = graph_core.from_spec(spec)
        assert graph.n == n
        assert graph.edge_count == edges
        assert graph.name == spec

    def test_regular_families(self):
        assert graph_core.from_spec("petersen").regular_degree == 3
        assert graph_core.from_spec("cubic8").regular_degree == 3
        assert graph_core.from_spec("cocktail_party:3").regular_degree == 4
        assert graph_core.from_spec("star:3").regular_degree is None

    def test_cube_of_dimension_two_is_c4(self, c4):
        assert canonical.is_isomorphic(graph_core.generate("cube", [2]), c4)

    @pytest.mark.parametrize(
        "kind,params",
        [("torus", [3]), ("cycle", [2]), ("complete", [65]), ("circulant", [6, 6]), ("petersen", [1])],
    )
    def test_rejects_bad_generators(self, kind, params):
        with pytest.raises(PreconditionError):
            graph_core.generate(kind, params)


class TestParseSpec:
    def test_splits_name_and_params(self):
        assert graph_core.parse_spec("circulant:8,1,3") == ("circulant", [8, 1, 3])
        assert graph_core.parse_spec(" petersen ") == ("petersen", [])

    @pytest.mark.parametrize("spec", ["", ":4", "cycle:x", "cycle:4,"])
    def test_rejects_malformed(self, spec):
        with pytest.raises(GraphFormatError):
            graph_core.parse_spec(spec)


class TestSimpleGraph:
    def test_from_edges_rejects_self_loop(self):
        with pytest.raises(PreconditionError):
            SimpleGraph.from_edges(3, [(1, 1)])

    def test_from_edges_rejects_out_of_range(self):
        with pytest.raises(PreconditionError):
            SimpleGraph.from_edges(3, [(0, 3)])

    def test_asymmetric_adjacency(self):
        with pytest.raises(PreconditionError):
            SimpleGraph(2, (0b10, 0))


class TestSubgraphs:
    def test_complement_of_c4(self, c4):
        assert graph_core.complement(c4).edges() == [(0, 2), (1, 3)]

    def test_induced_subgraph_relabels(self, c4):
        sub = graph_core.induced_subgraph(c4, 0b1011)
        assert sub.n == 3
        assert sub.edges() == [(0, 1), (0, 2)]

    def test_boundary_bipartite(self, c4):
        boundary = graph_core.boundary_bipartite(c4, 0b0011)
        assert boundary.cross_edges == ((0, 3), (1, 2))
        assert boundary.right == 0b1100
        with pytest.raises(PreconditionError):
            graph_core.boundary_bipartite(c4, 0b1111)

    def test_outer_boundary(self, star3):
        assert graph_core.outer_boundary(star3, 0b0010) == 0b0001
        assert graph_core.outer_boundary(star3, 0b0001) == 0b1110


class TestTraversal:
    def test_components_and_connectivity(self):
        graph = SimpleGraph.from_edges(5, [(0, 1), (2, 3)])
        assert graph_core.components(graph) == [0b00011, 0b01100, 0b10000]
        assert not graph_core.is_connected(graph)
        assert graph_core.diameter(graph) is None

    def test_bipartite_and_odd_girth(self, c4, k4, petersen):
        assert graph_core.is_bipartite(c4)
        assert graph_core.odd_girth(c4) is None
        assert graph_core.odd_girth(k4) == 3
        assert graph_core.odd_girth(petersen) == 5
        assert graph_core.odd_girth(graph_core.generate("cycle", [7])) == 7

    def test_structure_profile(self, petersen):
        profile = graph_core.structure_profile(petersen)
        assert profile.to_dict() == {"connected": True, "bipartite": False, "regular_degree": 3, "diameter": 2}


class TestFamilyDetection:
    def test_star_centre(self, star3, c4):
        assert graph_core.star_centre(star3) == 0
        relabelled = SimpleGraph.from_edges(5, [(3, 0), (3, 1), (3, 2), (3, 4)])
        assert graph_core.star_centre(relabelled) == 3
        assert graph_core.star_centre(graph_core.from_spec("path:4")) is None
        assert graph_core.star_centre(c4) is None

    def test_is_cycle(self, c4, petersen):
        shuffled = SimpleGraph.from_edges(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)])
        assert graph_core.is_cycle(shuffled)
        assert graph_core.is_cycle(c4)
        assert not graph_core.is_cycle(petersen)
        two_triangles = SimpleGraph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
        assert not graph_core.is_cycle(two_triangles)

    def test_is_cocktail_party(self, k4):
        assert graph_core.is_cocktail_party(graph_core.from_spec("cocktail_party:3"))
        assert not graph_core.is_cocktail_party(k4)
        assert not graph_core.is_cocktail_party(graph_core.from_spec("cube"))


class TestCliques:
    def test_counts(self, k4, petersen):
        assert graph_core.count_cliques(k4, 3) == 4
        assert graph_core.count_cliques(k4, 4) == 1
        assert graph_core.count_cliques(petersen, 2) == 15
        assert graph_core.count_cliques(petersen, 3) == 0

    def test_iter_cliques_matches_count(self):
        graph = graph_core.from_spec("cubic8")
        triangles = list(graph_core.iter_cliques(graph, 3))
        assert triangles == [0b000111, 0b111000]
        assert len(triangles) == graph_core.count_cliques(graph, 3)


class TestVertexConnectivity:
    @pytest.mark.parametrize(
        "spec,kappa",
        [("cycle:6", 2), ("star:4", 1), ("complete:5", 4), ("petersen", 3), ("cube", 3), ("path:4", 1)],
    )
    def test_known_values(self, spec, kappa):
        assert graph_core.vertex_connectivity(graph_core.from_spec(spec)) == kappa

    def test_disconnected_rejected(self):
        with pytest.raises(PreconditionError):
            graph_core.vertex_connectivity(graph_core.generate("empty", [3]))

    @pytest.mark.parametrize("k", [2, 3])
    def test_petersen_token_graphs(self, petersen, k):
        tg = kpg.build(petersen, k)
        kappa = graph_core.adjacency_vertex_connectivity(tg.adjacency)
        assert kappa == nx.node_connectivity(adjacency.to_graph(tg.adjacency))
        assert kappa <= min(tg.degrees)
        if k == 3:
            assert kappa == 5

    def test_adjacency_lists(self):
        assert graph_core.adjacency_vertex_connectivity([[1, 2], [0, 2], [0, 1]]) == 2
        with pytest.raises(PreconditionError):
            graph_core.adjacency_vertex_connectivity([[]])
        with pytest.raises(PreconditionError):
            graph_core.adjacency_vertex_connectivity([[1], [0], []])


class TestAutomorphisms:
    @pytest.mark.parametrize("spec,order", [("cycle:4", 8), ("complete:4", 24), ("star:3", 6), ("petersen", 120)])
    def test_group_orders(self, spec, order):
        group = graph_core.automorphisms(graph_core.from_spec(spec))
        assert len(group) == order
        assert group[0] == tuple(range(len(group[0])))

    def test_every_element_is_an_automorphism(self, c4):
        assert all(graph_core.is_automorphism(c4, p) for p in graph_core.automorphisms(c4))
        assert not graph_core.is_automorphism(c4, (0, 2, 1, 3))

    def test_caps(self, c4):
        with pytest.raises(CapExceededError):
            graph_core.automorphisms(graph_core.generate("cycle", [12]))
        with pytest.raises(CapExceededError):
            graph_core.automorphisms(c4, limit=4)


class TestExtremeSubgraphs:
    def test_c4_pairs(self, c4):
        assert graph_core.extreme_k_subgraph(c4, 2, "densest") == (0b0011, 1)
        assert graph_core.extreme_k_subgraph(c4, 2, "least_dense") == (0b0101, 0)
        assert graph_core.all_extreme_k_subgraphs(c4, 2, "least_dense") == [0b0101, 0b1010]

    def test_bad_mode(self, c4):
        with pytest.raises(PreconditionError):
            graph_core.extreme_k_subgraph(c4, 2, "sparsest")
