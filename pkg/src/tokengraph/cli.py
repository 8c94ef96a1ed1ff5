"""Command-line front end.

Usage:
    tokengraph --gen cycle:4 -k 2 stats
    tokengraph --graph edges.txt -k 3 verify --format csv
    tokengraph --gen complete:4 -k 2 export --format dot
    tokengraph --corpus verify

Reports go to stdout and are byte-identical for identical arguments; logs go
to stderr.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Sequence

from .config import Settings
from .exceptions import (
    EXIT_FAIL,
    EXIT_OK,
    GraphFormatError,
    PreconditionError,
    TokenGraphError,
    exit_code_for,
)
from .models.graph import SimpleGraph
from .services import analysis, corpus, exclusion_chain, graph_core, kpg, marked_kpg, special_cases
from .services.export_service import (
    DEFAULT_RENDER_CAP,
    ExportService,
    render_csv,
    render_dot,
    render_findings,
    render_json,
)
from .services.verification import VerificationService
from .utils.logger import setup_logger

COMMANDS = ("build", "stats", "verify", "chain", "export")
DEFAULT_FORMAT = {"build": "json", "stats": "json", "verify": "json", "chain": "json", "export": "dot"}


@dataclass
class RunConfig:
    command: str
    k: Optional[int] = None
    graph_file: Optional[Path] = None
    generator: Optional[str] = None
    use_corpus: bool = False
    format: Optional[str] = None
    marked: bool = False
    output: Optional[str] = None
    allow_disconnected: bool = False
    settings: Settings = field(default_factory=Settings)

    @property
    def output_format(self) -> str:
        return self.format or DEFAULT_FORMAT[self.command]


def parse_graph(text: str, name: str = "") -> SimpleGraph:
    """Parse the edge-list format: a header ``n m`` followed by m lines ``u v``."""
    lines = [line.split() for line in text.splitlines() if line.strip()]
    if not lines or len(lines[0]) != 2:
        raise GraphFormatError("header must be 'n m'")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
    except ValueError:
        raise GraphFormatError(f"header must hold two integers, got {' '.join(lines[0])!r}") from None
    if n < 1 or m < 0:
        raise GraphFormatError(f"header needs n >= 1 and m >= 0, got n={n} m={m}")
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(body)} lines")

    seen = set()
    edges = []
    for lineno, parts in enumerate(body, start=2):
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: labels must be integers") from None
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {lineno}: label outside 0..{n - 1}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(key)
        edges.append(key)
    return SimpleGraph.from_edges(n, edges, name)


def export_dot(graph, render_cap: int = DEFAULT_RENDER_CAP) -> str:
    """DOT text for a token graph or its marked variant; byte-stable."""
    return render_dot(graph, render_cap)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tokengraph", description="Token graphs and their exclusion process")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph", type=Path, help="edge-list file ('n m' header, then 'u v' lines)")
    source.add_argument("--gen", type=str, help="generator spec name:p1,p2 (e.g. cycle:6, circulant:8,1,3)")
    source.add_argument("--corpus", action="store_true", help="run on the shipped corpus (verify only)")
    parser.add_argument("-k", type=int, default=None, help="number of particles (verify: all k when omitted)")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--format", choices=("json", "dot", "csv"), default=None)
    parser.add_argument("--marked", action="store_true", help="build/export the marked (ordered) variant")
    parser.add_argument("--output", type=str, default=None, help="write to this file in the data directory")
    parser.add_argument("--max-configs", type=int, default=None, help="cap on C(n,k) (default 200000)")
    parser.add_argument("--oracle-cap", type=int, default=None, help="cap for exact oracles (default 500)")
    parser.add_argument("--tol", type=float, default=None, help="stationary tolerance (default 1e-10)")
    parser.add_argument("--seed", type=int, default=None, help="shuffle corpus order")
    parser.add_argument("--allow-disconnected", action="store_true")
    parser.add_argument("--log-level", type=str, default=None)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    settings = Settings.from_env().with_overrides(
        max_configs=args.max_configs,
        oracle_cap=args.oracle_cap,
        tol=args.tol,
        seed=args.seed,
        log_level=args.log_level,
    ).validate()
    return RunConfig(
        command=args.command,
        k=args.k,
        graph_file=args.graph,
        generator=args.gen,
        use_corpus=args.corpus,
        format=args.format,
        marked=args.marked,
        output=args.output,
        allow_disconnected=args.allow_disconnected,
        settings=settings,
    )


def _load_graph(cfg: RunConfig) -> SimpleGraph:
    if cfg.generator:
        return graph_core.from_spec(cfg.generator)
    return parse_graph(cfg.graph_file.read_text(encoding="utf-8"), cfg.graph_file.stem)


def _require_k(cfg: RunConfig) -> int:
    if cfg.k is None:
        raise PreconditionError(f"{cfg.command} needs -k")
    return cfg.k


def _stats(graph: SimpleGraph, cfg: RunConfig) -> Dict:
    k = _require_k(cfg)
    tg = kpg.build(graph, k, cfg.settings.max_configs, cfg.allow_disconnected)
    levels = kpg.degree_levels(tg)
    report: Dict = {
        "graph": graph.name,
        "n": graph.n,
        "k": k,
        "underlying": graph_core.structure_profile(graph).to_dict(),
        "vertices": tg.order,
        "edges": tg.size,
        "degree_set": sorted(levels),
        "level_counts": {str(d): c for d, c in levels.items()},
        "edges_vs_underlying": kpg.edge_count_closed_form(graph.n, k, graph.regular_degree).to_dict()
        if graph.regular_degree else None,
    }
    if graph.regular_degree and graph_core.is_connected(graph):
        report["connectivity"] = analysis.kpg_vertex_connectivity(tg, cfg.settings.oracle_cap).to_dict()
        if graph_core.diameter(graph) == 2 and k <= graph.n // 2:
            report["diameter"] = analysis.diameter_report(graph, k, cfg.settings.max_configs).to_dict()
    if graph_core.is_cycle(graph) and k <= graph.n // 2:
        report["necklace_levels"] = {str(d): c for d, c in special_cases.cycle_degree_profile(graph.n, k).items()}
    if graph_core.star_centre(graph) is not None:
        report["star_profile"] = special_cases.star_kpg_profile(graph.n - 1, k)
    return report


def _chain(graph: SimpleGraph, cfg: RunConfig) -> Dict:
    tg = kpg.build(graph, _require_k(cfg), cfg.settings.max_configs, cfg.allow_disconnected)
    report = exclusion_chain.chain_report(tg, cfg.settings.tol, automorphism_cap=cfg.settings.automorphism_cap)
    data = report.to_dict()
    data["stationary"] = [f"{p:.12g}" for p in report.stationary]
    if report.exact_stationary is not None:
        data["exact_stationary"] = [str(p) for p in report.exact_stationary]
    return data


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output:
        ExportService(cfg.settings.data_dir, cfg.settings.render_cap).write(text, cfg.output, cfg.output_format)
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> int:
    """Execute one command; returns the process exit code."""
    fmt = cfg.output_format
    if cfg.use_corpus:
        if cfg.command != "verify":
            raise PreconditionError("--corpus works with verify only")
        service = VerificationService(cfg.settings)
        service.verify_corpus(corpus.load_corpus(cfg.settings.seed))
        _emit(render_findings(service.findings, fmt), cfg)
        return service.exit_code

    graph = _load_graph(cfg)
    if cfg.command == "verify":
        if not cfg.allow_disconnected and not graph_core.is_connected(graph):
            raise PreconditionError("underlying graph is disconnected")
        service = VerificationService(cfg.settings)
        service.verify_graph(graph, cfg.k)
        _emit(render_findings(service.findings, fmt), cfg)
        return service.exit_code

    if cfg.command in ("stats", "chain"):
        if fmt != "json":
            raise PreconditionError(f"{cfg.command} reports are JSON only")
        data = _stats(graph, cfg) if cfg.command == "stats" else _chain(graph, cfg)
        _emit(json.dumps(data, sort_keys=True, indent=2) + "\n", cfg)
        return EXIT_OK

    k = _require_k(cfg)
    if cfg.marked:
        target = marked_kpg.build_marked(graph, k, cfg.settings.max_configs)
    else:
        target = kpg.build(graph, k, cfg.settings.max_configs, cfg.allow_disconnected)
    if fmt == "json":
        text = render_json(target)
    elif fmt == "dot":
        text = export_dot(target, cfg.settings.render_cap)
    else:
        text = render_csv(target)
    _emit(text, cfg)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except TokenGraphError as e:
        setup_logger("tokengraph").error(str(e))
        return exit_code_for(e)

    logger = setup_logger("tokengraph", cfg.settings.log_level, cfg.settings.log_dir)
    try:
        return run(cfg)
    except Exception as e:
        code = exit_code_for(e)
        if code == EXIT_FAIL:
            logger.exception(f"unexpected error: {e}")
        else:
            logger.error(str(e))
        return code


if __name__ == "__main__":
    sys.exit(main())
