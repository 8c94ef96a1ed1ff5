import itertools

import pytest

from tokengraph.models.graph import SimpleGraph
from tokengraph.services import canonical, graph_core
from tokengraph.utils.bitset import iter_k_subsets


def _relabel(graph: SimpleGraph, perm) -> SimpleGraph:
    return SimpleGraph.from_edges(graph.n, [(perm[u], perm[v]) for u, v in graph.edges()])


class TestCanonicalForm:
    def test_invariant_under_relabelling(self, petersen):
        perm = [3, 7, 1, 9, 0, 5, 2, 8, 6, 4]
        assert canonical.canonical_form(petersen) == canonical.canonical_form(_relabel(petersen, perm))

    def test_refinement_blind_pairs_are_separated(self):
        hexagon = graph_core.generate("cycle", [6])
        triangles = SimpleGraph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert not canonical.is_isomorphic(hexagon, triangles)

    def test_prism_vs_k33(self):
        prism = SimpleGraph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
        k33 = SimpleGraph.from_edges(6, [(u, v) for u in range(3) for v in range(3, 6)])
        assert not canonical.is_isomorphic(prism, k33)
        assert canonical.is_isomorphic(k33, _relabel(k33, [5, 0, 4, 1, 3, 2]))

    def test_colours_matter(self, c4):
        assert canonical.canonical_form(c4, [0, 1, 0, 1]) != canonical.canonical_form(c4, [0, 0, 1, 1])
        assert canonical.canonical_form(c4, [0, 1, 0, 1]) == canonical.canonical_form(c4, [1, 0, 1, 0])

    def test_colour_length_mismatch(self, c4):
        with pytest.raises(ValueError):
            canonical.canonical_form(c4, [0, 1])


class TestBoundaryCertificate:
    @pytest.mark.parametrize("spec,k", [("cycle:6", 2), ("cycle:6", 3), ("cube", 2), ("star:4", 2), ("cubic8", 3)])
    def test_matches_brute_force_isomorphism(self, spec, k):
        graph = graph_core.from_spec(spec)
        boundaries = [graph_core.boundary_bipartite(graph, m) for m in iter_k_subsets(graph.n, k)]
        certs = [canonical.certificate(b) for b in boundaries]
        # sample pairs so the factorial oracle stays cheap
        for i, j in itertools.islice(itertools.combinations(range(len(boundaries)), 2), 0, None, 7):
            same = canonical.boundary_isomorphism(boundaries[i], boundaries[j]) is not None
            assert (certs[i] == certs[j]) == same

    def test_sides_are_kept_apart(self, star3):
        with_centre = graph_core.boundary_bipartite(star3, 0b0011)
        two_leaves = graph_core.boundary_bipartite(star3, 0b1100)
        # same cross edges, the centre sits on the occupied side only in the first
        assert sorted(map(sorted, with_centre.cross_edges)) == sorted(map(sorted, two_leaves.cross_edges))
        assert canonical.certificate(with_centre) != canonical.certificate(two_leaves)
        assert canonical.boundary_isomorphism(with_centre, two_leaves) is None

    def test_c4_adjacent_vs_diagonal(self, c4):
        adjacent = graph_core.certificate(graph_core.boundary_bipartite(c4, 0b0011))
        diagonal = graph_core.certificate(graph_core.boundary_bipartite(c4, 0b0101))
        other_adjacent = graph_core.certificate(graph_core.boundary_bipartite(c4, 0b1100))
        assert adjacent != diagonal
        assert adjacent == other_adjacent
