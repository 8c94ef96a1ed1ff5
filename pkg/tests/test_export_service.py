import json

import pytest

from tokengraph.exceptions import CapExceededError, PreconditionError
from tokengraph.models.report import Finding
from tokengraph.services import exclusion_chain, marked_kpg
from tokengraph.services.export_service import (
    ExportService,
    config_table,
    render_csv,
    render_dot,
    render_findings,
    render_json,
)


@pytest.fixture
def findings():
    return [
        Finding(seq=1, check="kpg.handshake", inputs={"n": 4, "k": 2}, expected=True, actual=True, status="pass"),
        Finding(seq=2, check="exclusion_chain.aperiodic", inputs={"n": 4, "k": 2}, expected=1, actual=2,
                status="reported"),
    ]


class TestRenderers:
    def test_dot(self, c4_k2):
        lines = render_dot(c4_k2).splitlines()
        assert lines[0] == "graph kpg_n4_k2 {"
        assert lines[1] == '  0 [label="{0,1}"];'
        assert lines[-1] == "}"
        assert sum("label=" in line for line in lines) == 6
        assert sum(" -- " in line for line in lines) == 8
        assert "  0 -- 1;" in lines

    def test_dot_is_stable(self, c4_k2):
        assert render_dot(c4_k2) == render_dot(c4_k2)

    def test_dot_cap(self, c4_k2):
        with pytest.raises(CapExceededError):
            render_dot(c4_k2, render_cap=5)

    def test_marked_dot_labels(self, c4):
        text = render_dot(marked_kpg.build_marked(c4, 2))
        assert '  0 [label="(0,1)"];' in text

    def test_json(self, c4_k2):
        data = json.loads(render_json(c4_k2))
        assert data["n"] == 4
        assert data["degrees"] == [2, 4, 2, 2, 4, 2]

    def test_csv(self, c4_k2):
        lines = render_csv(c4_k2).splitlines()
        assert lines[0] == "index,config,degree"
        assert lines[1] == '0,"{0,1}",2'
        assert len(lines) == 7

    def test_table_with_classes_and_stationary(self, c4_k2):
        P = exclusion_chain.transition_matrix(c4_k2)
        table = config_table(c4_k2, exclusion_chain.boundary_partition(c4_k2), exclusion_chain.stationary(P))
        assert list(table.columns) == ["index", "config", "degree", "class", "stationary"]
        assert list(table["class"]) == [0, 1, 0, 0, 1, 0]
        assert table["stationary"][1] == "0.25"

    def test_table_rejects_mismatch(self, c4_k2):
        with pytest.raises(PreconditionError):
            config_table(c4_k2, stationary=[1.0])


class TestFindings:
    def test_json_lines(self, findings):
        lines = render_findings(findings).splitlines()
        assert len(lines) == 2
        assert json.loads(lines[1])["status"] == "reported"
        assert lines[0].startswith('{"actual": true, "check": "kpg.handshake"')

    def test_csv(self, findings):
        lines = render_findings(findings, "csv").splitlines()
        assert lines[0] == "seq,check,status,inputs,expected,actual"
        assert lines[1].startswith("1,kpg.handshake,pass,")

    def test_unknown_format(self, findings):
        with pytest.raises(PreconditionError):
            render_findings(findings, "xml")


class TestExportService:
    def test_export_writes_default_names(self, tmp_path, c4_k2):
        service = ExportService(tmp_path)
        path = service.export(c4_k2, "dot")
        assert path == tmp_path / "kpg_cycle_4_k2.dot"
        assert path.read_text(encoding="utf-8") == render_dot(c4_k2)
        assert service.export(c4_k2, "JSON").suffix == ".json"
        assert service.export(c4_k2, "csv", "pairs.csv").name == "pairs.csv"

    def test_marked_name(self, tmp_path, c4):
        path = ExportService(tmp_path).export_to_json(marked_kpg.build_marked(c4, 2))
        assert path.name == "marked_cycle_4_k2.json"

    def test_findings_file(self, tmp_path, findings):
        path = ExportService(tmp_path).export_findings(findings)
        assert path.name == "findings.jsonl"
        assert len(path.read_text(encoding="utf-8").splitlines()) == 2

    def test_unsupported_format(self, tmp_path, c4_k2):
        with pytest.raises(PreconditionError):
            ExportService(tmp_path).export(c4_k2, "yaml")

    def test_render_cap_applies(self, tmp_path, c4_k2):
        with pytest.raises(CapExceededError):
            ExportService(tmp_path, render_cap=3).export_to_dot(c4_k2)

    def test_write_failure_propagates(self, tmp_path):
        with pytest.raises(OSError):
            ExportService(tmp_path).write("x", "missing/dir/out.txt")
