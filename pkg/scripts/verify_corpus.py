#!/usr/bin/env python3
"""Verify the shipped corpus

Runs every applicable check on every corpus graph and every k, writes the
findings to the data directory, and prints a pass/fail/reported summary.

Usage:
    python scripts/verify_corpus.py [--format json|csv] [--seed SEED] [--only NAME ...]
"""

import argparse
import sys
import time
from pathlib import Path

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root / "src"))

from tokengraph.config.settings import Settings  # noqa: E402
from tokengraph.services import corpus, graph_core  # noqa: E402
from tokengraph.services.export_service import ExportService  # noqa: E402
from tokengraph.services.verification import VerificationService  # noqa: E402
from tokengraph.utils.logger import setup_logger  # noqa: E402


def main():
    """Main function"""
    parser = argparse.ArgumentParser(description="Verify token-graph identities on the shipped corpus")
    parser.add_argument("--format", choices=("json", "csv"), default="json",
                        help="findings file format (default: json lines)")
    parser.add_argument("--seed", type=int, default=None, help="shuffle the corpus order")
    parser.add_argument("--only", nargs="*", default=None,
                        help="generator specs to run instead of the whole corpus")
    args = parser.parse_args()

    settings = Settings.from_env().with_overrides(seed=args.seed).validate()
    settings.ensure_dirs()
    logger = setup_logger("verify_corpus", settings.log_level, settings.log_dir)

    specs = args.only or corpus.default_corpus(settings.seed)
    logger.info("=" * 60)
    logger.info(f"Verifying {len(specs)} graphs")
    logger.info("=" * 60)

    service = VerificationService(settings)
    started = time.perf_counter()
    try:
        for idx, spec in enumerate(specs, start=1):
            logger.info(f"[{idx}/{len(specs)}] {spec}")
            service.verify_graph(graph_core.from_spec(spec))
    except KeyboardInterrupt:
        logger.warning("Interrupted, writing partial findings")

    exporter = ExportService(settings.data_dir, settings.render_cap)
    path = exporter.export_findings(service.findings, args.format)

    counts = service.summary()
    logger.info("=" * 60)
    logger.info(f"pass={counts['pass']} fail={counts['fail']} reported={counts['reported']} "
                f"in {time.perf_counter() - started:.1f}s")
    logger.info(f"Findings: {path}")
    logger.info("=" * 60)
    return service.exit_code


if __name__ == "__main__":
    sys.exit(main())
