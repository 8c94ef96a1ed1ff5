"""数据导出服务模块

支持将 token graph 导出为多种格式：JSON, DOT, CSV
Rendering is byte-stable: the same graph always gives the same text.
"""

import json
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Union

import pandas as pd

from ..exceptions import CapExceededError, PreconditionError
from ..models.chain import Partition
from ..models.marked import MarkedConfig, MarkedTokenGraph
from ..models.report import Finding
from ..models.token_graph import TokenGraph
from ..utils.logger import setup_logger

DEFAULT_RENDER_CAP = 2000
FORMATS = ("json", "dot", "csv")

AnyTokenGraph = Union[TokenGraph, MarkedTokenGraph]


def _labels(graph: AnyTokenGraph) -> List[str]:
    if isinstance(graph, MarkedTokenGraph):
        return [str(MarkedConfig(c)) for c in graph.configs]
    return [str(c) for c in graph.configs]


def render_json(graph: AnyTokenGraph) -> str:
    return json.dumps(graph.to_dict(), separators=(",", ":")) + "\n"


def render_dot(graph: AnyTokenGraph, render_cap: int = DEFAULT_RENDER_CAP) -> str:
    """Undirected DOT with nodes labelled by their config and edges in lexicographic order."""
    if graph.order > render_cap:
        raise CapExceededError("DOT render vertex count", graph.order, render_cap)
    lines = [f"graph kpg_n{graph.underlying.n}_k{graph.k} {{"]
    for i, label in enumerate(_labels(graph)):
        lines.append(f'  {i} [label="{label}"];')
    for i, j in graph.edges():
        lines.append(f"  {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def config_table(
    graph: AnyTokenGraph,
    partition: Optional[Partition] = None,
    stationary: Optional[Sequence[float]] = None,
) -> pd.DataFrame:
    """One row per config: index, label, degree, and optionally class and stationary mass."""
    data: Dict[str, list] = {
        "index": list(range(graph.order)),
        "config": _labels(graph),
        "degree": list(graph.degrees),
    }
    if partition is not None:
        if len(partition.class_of) != graph.order:
            raise PreconditionError("partition does not match the graph")
        data["class"] = list(partition.class_of)
    if stationary is not None:
        if len(stationary) != graph.order:
            raise PreconditionError("stationary vector does not match the graph")
        data["stationary"] = [f"{p:.12g}" for p in stationary]
    return pd.DataFrame(data)


def render_csv(
    graph: AnyTokenGraph,
    partition: Optional[Partition] = None,
    stationary: Optional[Sequence[float]] = None,
) -> str:
    return config_table(graph, partition, stationary).to_csv(index=False, lineterminator="\n")


def findings_table(findings: Iterable[Finding]) -> pd.DataFrame:
    rows = [
        {
            "seq": f.seq,
            "check": f.check,
            "status": f.status,
            "inputs": json.dumps(f.inputs, sort_keys=True, default=str),
            "expected": json.dumps(f.expected, sort_keys=True, default=str),
            "actual": json.dumps(f.actual, sort_keys=True, default=str),
        }
        for f in findings
    ]
    return pd.DataFrame(rows, columns=["seq", "check", "status", "inputs", "expected", "actual"])


def render_findings(findings: Iterable[Finding], format: str = "json") -> str:
    """Findings as JSON lines or as a CSV table."""
    findings = list(findings)
    format = format.lower()
    if format == "json":
        return "".join(json.dumps(f.to_dict(), sort_keys=True, default=str) + "\n" for f in findings)
    if format == "csv":
        return findings_table(findings).to_csv(index=False, lineterminator="\n")
    raise PreconditionError(f"findings cannot be rendered as {format!r}")


class ExportService:
    """数据导出服务类"""

    def __init__(self, output_dir: Union[str, Path] = "data", render_cap: int = DEFAULT_RENDER_CAP):
        """初始化导出服务

        Args:
            output_dir: 输出目录
            render_cap: DOT 导出的最大顶点数
        """
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.render_cap = render_cap
        self.logger = setup_logger("export_service")

    def _default_name(self, graph: AnyTokenGraph, suffix: str) -> str:
        kind = "marked" if isinstance(graph, MarkedTokenGraph) else "kpg"
        name = graph.underlying.name or f"n{graph.underlying.n}"
        return f"{kind}_{name.replace(':', '_').replace(',', '_')}_k{graph.k}.{suffix}"

    def write(self, text: str, filename: str, what: str = "report") -> Path:
        """写入文本文件到输出目录"""
        filepath = self.output_dir / filename
        try:
            filepath.write_text(text, encoding="utf-8")
        except OSError as e:
            self.logger.error(f"导出 {what} 失败: {e}")
            raise
        self.logger.info(f"成功导出 {what} 文件: {filepath}")
        return filepath

    def export_to_json(self, graph: AnyTokenGraph, filename: Optional[str] = None) -> Path:
        """导出为 JSON 格式

        Args:
            graph: token graph 或 marked token graph
            filename: 输出文件名，如果为 None 则按图名生成

        Returns:
            导出文件的路径
        """
        return self.write(render_json(graph), filename or self._default_name(graph, "json"), "JSON")

    def export_to_dot(self, graph: AnyTokenGraph, filename: Optional[str] = None) -> Path:
        return self.write(render_dot(graph, self.render_cap), filename or self._default_name(graph, "dot"), "DOT")

    def export_to_csv(
        self,
        graph: AnyTokenGraph,
        filename: Optional[str] = None,
        partition: Optional[Partition] = None,
        stationary: Optional[Sequence[float]] = None,
    ) -> Path:
        """导出每个 config 一行的 CSV 表"""
        text = render_csv(graph, partition, stationary)
        return self.write(text, filename or self._default_name(graph, "csv"), "CSV")

    def export_findings(self, findings: Iterable[Finding], format: str = "json",
                        filename: Optional[str] = None) -> Path:
        suffix = "jsonl" if format == "json" else format
        return self.write(render_findings(findings, format), filename or f"findings.{suffix}", "findings")

    def export(self, graph: AnyTokenGraph, format: str = "json", filename: Optional[str] = None) -> Path:
        """通用导出方法

        Args:
            graph: token graph 或 marked token graph
            format: 导出格式 (json, dot, csv)
            filename: 输出文件名

        Returns:
            导出文件的路径
        """
        format = format.lower()

        if format == "json":
            return self.export_to_json(graph, filename)
        elif format == "dot":
            return self.export_to_dot(graph, filename)
        elif format == "csv":
            return self.export_to_csv(graph, filename)
        else:
            raise PreconditionError(f"不支持的导出格式: {format}")
