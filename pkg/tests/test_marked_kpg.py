import pytest

from tokengraph.exceptions import CapExceededError, PreconditionError
from tokengraph.models.marked import MarkedConfig
from tokengraph.services import graph_core, marked_kpg


class TestCounts:
    @pytest.mark.parametrize("n,k,expected", [(4, 2, 12), (5, 0, 1), (3, 4, 0), (6, 3, 120)])
    def test_falling_factorial(self, n, k, expected):
        assert marked_kpg.marked_vertex_count(n, k) == expected

    def test_negative(self):
        with pytest.raises(PreconditionError):
            marked_kpg.marked_vertex_count(-1, 2)


class TestBuild:
    def test_c4_pairs(self, c4):
        marked = marked_kpg.build_marked(c4, 2)
        assert marked.order == 12
        assert marked.size == 16
        assert marked.configs[0] == (0, 1)

    def test_degrees(self, c4):
        assert marked_kpg.marked_degree(c4, (0, 1)) == 2
        assert marked_kpg.marked_degree(c4, MarkedConfig((0, 2))) == 4
        assert marked_kpg.marked_degree(c4, (2, 0)) == 4

    def test_full_and_overfull(self, c4):
        full = marked_kpg.build_marked(c4, 4)
        assert full.order == 24
        assert full.size == 0
        assert marked_kpg.build_marked(c4, 5).order == 0

    def test_rejects(self, c4):
        with pytest.raises(PreconditionError):
            marked_kpg.build_marked(c4, 0)
        with pytest.raises(CapExceededError):
            marked_kpg.build_marked(c4, 3, max_configs=10)
        with pytest.raises(PreconditionError):
            MarkedConfig((1, 1))

    def test_to_dict(self, c4):
        data = marked_kpg.build_marked(c4, 2).to_dict()
        assert data["configs"][:2] == [[0, 1], [0, 2]]
        assert len(data["edges"]) == 16


class TestProjection:
    @pytest.mark.parametrize("spec,k", [("cycle:4", 2), ("cycle:4", 3), ("star:3", 2), ("complete:4", 3), ("path:4", 2)])
    def test_projection(self, spec, k):
        marked = marked_kpg.build_marked(graph_core.from_spec(spec), k)
        result = marked_kpg.projection_check(marked)
        assert result.ok, result.detail

    def test_data(self, c4):
        result = marked_kpg.projection_check(marked_kpg.build_marked(c4, 2))
        assert result.data == {"fibre_size": 2, "unmarked": 6}

    def test_needs_proper_k(self, c4):
        with pytest.raises(PreconditionError):
            marked_kpg.projection_check(marked_kpg.build_marked(c4, 4))


class TestConnectivityProfile:
    def test_cycle_loses_connectivity(self, c4):
        assert marked_kpg.marked_connectivity_profile(c4, 3) == [True, True, False]

    def test_star(self, star3):
        assert marked_kpg.marked_connectivity_profile(star3, 3) == [True, True, False]

    def test_complete(self, k4):
        assert marked_kpg.marked_connectivity_profile(k4, 3) == [True, True, True]

    def test_monotone_implication(self):
        assert marked_kpg.monotone_implication([True, True, True], 4)
        assert marked_kpg.monotone_implication([True, True, False], 4)
        assert not marked_kpg.monotone_implication([True, False, True], 4)
        assert marked_kpg.monotone_implication([True], 4)
