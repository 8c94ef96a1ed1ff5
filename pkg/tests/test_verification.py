import pytest

from tokengraph.cli import parse_graph
from tokengraph.config import Settings
from tokengraph.exceptions import PreconditionError
from tokengraph.models.report import FAIL, PASS, REPORTED
from tokengraph.services import graph_core
from tokengraph.services.verification import VerificationService


def _by_check(findings, check):
    return [f for f in findings if f.check == check]


@pytest.fixture
def service():
    return VerificationService(Settings())


class TestVerifyGraph:
    def test_c4_all_k(self, service):
        findings = service.verify_graph(graph_core.from_spec("cycle:4"))
        assert service.exit_code == 0
        assert [f.seq for f in findings] == list(range(1, len(findings) + 1))
        assert {f.inputs["k"] for f in _by_check(findings, "kpg.vertex_count")} == {1, 2, 3}
        aperiodic = _by_check(findings, "exclusion_chain.aperiodic")
        assert {f.inputs["k"] for f in aperiodic} == {1, 2, 3}
        for f in aperiodic:
            # bipartite C4 is periodic for k = 1, 2; k = 3 has a self-loop
            assert f.status == (PASS if f.inputs["k"] == 3 else REPORTED), f.inputs
        assert all(f.status == PASS for f in _by_check(findings, "special_cases.necklace_levels"))
        assert all(f.status == PASS for f in _by_check(findings, "special_cases.necklace_rational_form"))

    def test_complete_graph(self, service):
        findings = service.verify_graph(graph_core.from_spec("complete:4"))
        assert service.exit_code == 0
        assert all(f.status == PASS for f in _by_check(findings, "kpg.johnson_degree"))
        assert all(f.status == PASS for f in _by_check(findings, "analysis.johnson_subgraphs"))
        assert _by_check(findings, "exclusion_chain.boundary.strong_lumpability")[0].status == PASS

    def test_star_single_k(self, service):
        findings = service.verify_graph(graph_core.from_spec("star:5"), k=2)
        assert service.exit_code == 0
        for check in ("special_cases.star_diameter", "special_cases.star_connectivity",
                      "special_cases.star_profile", "exclusion_chain.orbit.strong_lumpability"):
            matched = _by_check(findings, check)
            assert len(matched) == 1 and matched[0].status == PASS, check
        assert not _by_check(findings, "exclusion_chain.boundary.strong_lumpability")

    def test_zero_k_is_rejected(self, service):
        with pytest.raises(PreconditionError):
            service.verify_graph(graph_core.from_spec("cycle:4"), k=0)
        assert not _by_check(service.findings, "kpg.vertex_count")

    def test_star_from_edge_list(self, service):
        claw = parse_graph("6 5\n4 0\n4 1\n4 2\n4 3\n4 5\n", "claw")
        findings = service.verify_graph(claw, k=2)
        assert service.exit_code == 0
        for check in ("special_cases.star_diameter", "special_cases.star_connectivity", "special_cases.star_profile"):
            matched = _by_check(findings, check)
            assert len(matched) == 1 and matched[0].status == PASS, check

    def test_cycle_from_edge_list(self, service):
        pentagon = parse_graph("5 5\n0 2\n2 4\n4 1\n1 3\n3 0\n", "pentagon")
        findings = service.verify_graph(pentagon, k=2)
        assert service.exit_code == 0
        for check in ("special_cases.necklace_levels", "special_cases.necklace_rational_form"):
            matched = _by_check(findings, check)
            assert len(matched) == 1 and matched[0].status == PASS, check

    def test_petersen_pairs(self, service):
        findings = service.verify_graph(graph_core.from_spec("petersen"), k=2)
        assert service.exit_code == 0
        assert _by_check(findings, "special_cases.weighted_subset_corrected")[0].status == PASS
        assert _by_check(findings, "exclusion_chain.boundary_classes_are_orbits")[0].status == PASS

    def test_cap_hits_are_reported(self):
        service = VerificationService(Settings(max_configs=5))
        findings = service.verify_graph(graph_core.from_spec("cycle:4"), k=2)
        skipped = _by_check(findings, "kpg.build")
        assert len(skipped) == 1
        assert skipped[0].status == REPORTED
        assert skipped[0].actual.startswith("skipped:")
        assert service.exit_code == 0

    def test_oracle_cap_skips_connectivity_and_chain(self):
        service = VerificationService(Settings(oracle_cap=3))
        findings = service.verify_graph(graph_core.from_spec("cycle:4"), k=2)
        for check in ("analysis.vertex_connectivity", "exclusion_chain"):
            matched = _by_check(findings, check)
            assert len(matched) == 1 and matched[0].status == REPORTED, check
            assert matched[0].actual.startswith("skipped:")
        assert service.exit_code == 0

    def test_failures_set_exit_code(self, service):
        service._record("demo.identity", {"n": 1}, 1, 2)
        assert service.findings[-1].status == FAIL
        assert service.exit_code == 1


class TestCorpusRun:
    def test_sequence_numbers_span_graphs(self, service):
        graphs = [graph_core.from_spec("path:3"), graph_core.from_spec("cycle:3")]
        findings = service.verify_corpus(graphs)
        assert [f.seq for f in findings] == list(range(1, len(findings) + 1))
        assert {f.inputs.get("graph") for f in findings} >= {"path:3", "cycle:3"}
        counts = service.summary()
        assert sum(counts.values()) == len(findings)
        assert counts[FAIL] == 0
