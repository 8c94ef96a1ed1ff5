"""验证服务模块

Runs every identity that applies to an underlying graph and its token
graphs, and records one sequence-numbered finding per check.

A "fail" is a violated identity. A "reported" finding is a comparison whose
outcome is informative rather than guaranteed (diameter formula outside its
proven cases, aperiodicity, boundary classes that are not orbits) or a
check skipped because a cap was hit.
"""

from fractions import Fraction
from math import comb, perm
from typing import Any, Callable, Dict, Iterable, List, Optional

from ..config import Settings
from ..exceptions import EXIT_FAIL, EXIT_OK, CapExceededError, TokenGraphError
from ..models.graph import SimpleGraph
from ..models.report import FAIL, PASS, REPORTED, Finding
from ..models.token_graph import TokenGraph
from ..utils import adjacency as adjacency_utils
from ..utils.logger import setup_logger
from . import analysis, exclusion_chain, graph_core, kpg, marked_kpg, special_cases

MARKED_CHECK_CAP = 5040
WEIGHTED_SUBSET_MAX_N = 12


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


class VerificationService:
    """验证服务类"""

    def __init__(self, settings: Optional[Settings] = None):
        """初始化验证服务

        Args:
            settings: 配置，None 则使用默认值
        """
        self.settings = settings or Settings()
        self.logger = setup_logger("verification", self.settings.log_level, self.settings.log_dir)
        self.findings: List[Finding] = []

    # ------------------------------------------------------------------
    # recording
    # ------------------------------------------------------------------

    def _record(self, check: str, inputs: Dict, expected: Any, actual: Any,
                status: Optional[str] = None) -> Finding:
        if status is None:
            status = PASS if expected == actual else FAIL
        finding = Finding(
            seq=len(self.findings) + 1,
            check=check,
            inputs=_jsonable(inputs),
            expected=_jsonable(expected),
            actual=_jsonable(actual),
            status=status,
        )
        self.findings.append(finding)
        if status == FAIL:
            self.logger.error(f"[{finding.seq}] {check} failed for {inputs}: expected {expected}, got {actual}")
        return finding

    def _soft(self, check: str, inputs: Dict, expected: Any, actual: Any) -> Finding:
        return self._record(check, inputs, expected, actual, PASS if expected == actual else REPORTED)

    def _guarded(self, check: str, inputs: Dict, body: Callable[[], None]) -> None:
        """Run ``body``; a cap hit becomes a reported finding instead of an error."""
        try:
            body()
        except CapExceededError as e:
            self._record(check, inputs, "run", f"skipped: {e}", REPORTED)

    # ------------------------------------------------------------------
    # entry points
    # ------------------------------------------------------------------

    def verify_corpus(self, graphs: Iterable[SimpleGraph]) -> List[Finding]:
        for graph in graphs:
            self.verify_graph(graph)
        return self.findings

    def verify_graph(self, graph: SimpleGraph, k: Optional[int] = None) -> List[Finding]:
        """All checks for ``graph``, for one k or for every k in 1..n-1."""
        name = graph.name or f"n={graph.n}"
        self.logger.info(f"验证 {name}" + (f" k={k}" if k is not None else ""))
        self._graph_checks(graph, k)
        for kk in ([k] if k is not None else range(1, graph.n)):
            try:
                tg = kpg.build(graph, kk, self.settings.max_configs, allow_disconnected=True)
            except CapExceededError as e:
                self._record("kpg.build", {"graph": name, "k": kk}, "built", f"skipped: {e}", REPORTED)
                continue
            self._token_graph_checks(tg)
        return self.findings

    @property
    def exit_code(self) -> int:
        return EXIT_FAIL if any(f.status == FAIL for f in self.findings) else EXIT_OK

    def summary(self) -> Dict[str, int]:
        counts = {PASS: 0, FAIL: 0, REPORTED: 0}
        for f in self.findings:
            counts[f.status] += 1
        return counts

    # ------------------------------------------------------------------
    # per underlying graph
    # ------------------------------------------------------------------

    def _graph_checks(self, graph: SimpleGraph, k: Optional[int]) -> None:
        name = graph.name or f"n={graph.n}"
        d = graph.regular_degree
        connected = graph_core.is_connected(graph)

        if d is not None and connected and graph.n >= 2:
            upto = graph.n // 2
            self._guarded("analysis.degree_set_monotonicity", {"graph": name}, lambda: self._soft(
                "analysis.degree_set_monotonicity", {"graph": name, "upto": upto}, True,
                analysis.degree_set_monotonicity(graph, upto, self.settings.max_configs)))

        if d is not None and graph.n >= 3 and (k is None or k == 2) and graph.n <= WEIGHTED_SUBSET_MAX_N:
            result = special_cases.weighted_subset_max(graph.n, d)
            inputs = {"n": graph.n, "d": d}
            self._record("special_cases.weighted_subset_corrected", inputs, result.max_size, result.corrected_form)
            self._soft("special_cases.weighted_subset_closed_form", inputs, result.max_size, result.closed_form)

        self._guarded("marked_kpg.connectivity_profile", {"graph": name},
                      lambda: self._marked_profile_checks(graph, name, connected))

    def _marked_profile_checks(self, graph: SimpleGraph, name: str, connected: bool) -> None:
        if connected and perm(graph.n, graph.n - 1) <= MARKED_CHECK_CAP and graph.n >= 2:
            profile = marked_kpg.marked_connectivity_profile(graph, graph.n - 1, self.settings.max_configs)
            self._record("marked_kpg.monotone_implication", {"graph": name, "profile": profile}, True,
                         marked_kpg.monotone_implication(profile, graph.n))
            self._soft("marked_kpg.connected_at_n_minus_1", {"graph": name}, True, profile[-1])
        if perm(graph.n, graph.n) <= MARKED_CHECK_CAP:
            full = marked_kpg.build_marked(graph, graph.n, self.settings.max_configs)
            self._record("marked_kpg.full_occupation_edgeless", {"graph": name, "k": graph.n},
                         [perm(graph.n, graph.n), 0], [full.order, full.size])
            over = marked_kpg.build_marked(graph, graph.n + 1, self.settings.max_configs)
            self._record("marked_kpg.overfull_empty", {"graph": name, "k": graph.n + 1}, 0, over.order)

    # ------------------------------------------------------------------
    # per token graph
    # ------------------------------------------------------------------

    def _token_graph_checks(self, tg: TokenGraph) -> None:
        graph = tg.underlying
        inputs = {"graph": graph.name or f"n={graph.n}", "k": tg.k}
        connected = graph_core.is_connected(graph)
        regular = bool(graph.regular_degree)

        self._kpg_checks(tg, inputs, regular)
        self._guarded("marked_kpg.projection", inputs, lambda: self._marked_checks(tg, inputs))
        if not connected:
            self._record("kpg.token_graph_disconnected", inputs, False,
                         adjacency_utils.is_connected(tg.adjacency))
            return
        self._record("kpg.token_graph_connected", inputs, True, adjacency_utils.is_connected(tg.adjacency))
        self._record("analysis.bipartite_equivalence", inputs, True, analysis.bipartite_equivalence(tg).ok)
        self._guarded("analysis.clique_formula", inputs, lambda: self._clique_checks(tg, inputs, regular))
        self._diameter_checks(tg, inputs)
        self._connectivity_checks(tg, inputs, regular)
        if regular:
            self._regular_analysis_checks(tg, inputs)
        self._special_case_checks(tg, inputs)
        self._guarded("analysis.automorphism_lift", inputs, lambda: self._record(
            "analysis.automorphism_lift", inputs, True,
            analysis.automorphism_lift_check(tg, self.settings.automorphism_cap,
                                             exclusion_chain.DEFAULT_GROUP_LIMIT).ok))
        if tg.order <= self.settings.oracle_cap:
            self._chain_checks(tg, inputs, regular)
        else:
            self._record("exclusion_chain", inputs, "run",
                         f"skipped: {tg.order} states over oracle cap {self.settings.oracle_cap}", REPORTED)

    def _kpg_checks(self, tg: TokenGraph, inputs: Dict, regular: bool) -> None:
        graph = tg.underlying
        n, k = graph.n, tg.k
        self._record("kpg.vertex_count", inputs, comb(n, k), tg.order)
        self._record("kpg.handshake", inputs, True, kpg.handshake(tg))
        self._record("kpg.edge_count_vs_underlying", inputs, comb(n - 2, k - 1) * graph.edge_count, tg.size)
        try:
            kpg.reconstruct_underlying(tg)
            self._record("kpg.reconstruct_underlying", inputs, True, True)
        except TokenGraphError as e:
            self._record("kpg.reconstruct_underlying", inputs, True, str(e))
        self._record("kpg.dual_map", inputs, True, kpg.dual_map(tg, self.settings.max_configs).verified)
        part = kpg.complement_partition(graph, k, self.settings.max_configs)
        self._record("kpg.complement_partition", inputs, True, part.ok)
        if graph.edge_count == n * (n - 1) // 2:
            self._record("kpg.johnson_degree", inputs, {k * (n - k)}, set(tg.degrees))
        if regular:
            d = graph.regular_degree
            forms = kpg.edge_count_closed_form(n, k, d)
            self._record("kpg.edge_count_closed_forms", inputs, [tg.size, tg.size, tg.size],
                         [forms.short_form, forms.sum_form, forms.vs_underlying * graph.edge_count])
            for key, result in kpg.regular_identities(tg).items():
                self._record(f"kpg.{key}", inputs, True, result.ok)

    def _marked_checks(self, tg: TokenGraph, inputs: Dict) -> None:
        graph, k = tg.underlying, tg.k
        if marked_kpg.marked_vertex_count(graph.n, k) > MARKED_CHECK_CAP:
            return
        marked = marked_kpg.build_marked(graph, k, self.settings.max_configs)
        self._record("marked_kpg.vertex_count", inputs, perm(graph.n, k), marked.order)
        self._record("marked_kpg.projection", inputs, True, marked_kpg.projection_check(marked).ok)
        formula = [marked_kpg.marked_degree(graph, c) for c in marked.configs]
        self._record("marked_kpg.degree_formula", inputs, marked.degrees, formula)

    def _clique_checks(self, tg: TokenGraph, inputs: Dict, regular: bool) -> None:
        graph = tg.underlying
        for c in range(2, min(4, graph.n) + 1):
            formula = analysis.clique_count_formula(graph, tg.k, c)
            expected = 2 * tg.size if c == 2 else analysis.count_token_graph_cliques(
                tg, c, self.settings.clique_oracle_cap)
            self._record("analysis.clique_formula", {**inputs, "c": c}, expected, formula)
            if regular and c >= 3:
                self._record("analysis.regular_clique_presence", {**inputs, "c": c}, True,
                             analysis.regular_clique_presence(graph, tg.k, c).ok)
        c = 3
        if graph.n >= c and graph_core.count_cliques(graph, c):
            low, high = analysis.johnson_subgraph_range(graph.n, tg.k, c)
            for kprime in range(low, high + 1):
                oracle = analysis.johnson_subgraph_oracle(tg, c, kprime)
                self._record("analysis.johnson_subgraphs", {**inputs, "c": c, "k'": kprime},
                             [True, analysis.johnson_subgraph_count(graph, tg.k, c, kprime)],
                             [oracle.ok, oracle.data["pairs"]])

    def _diameter_checks(self, tg: TokenGraph, inputs: Dict) -> None:
        graph = tg.underlying
        n, k = graph.n, tg.k
        bfs = adjacency_utils.diameter(tg.adjacency)
        if graph_core.star_centre(graph) is not None and 2 * k <= n - 2:
            self._record("special_cases.star_diameter", inputs, special_cases.star_kpg_diameter(n - 1, k), bfs)
        if graph.edge_count == n * (n - 1) // 2 and k <= n // 2:
            self._record("analysis.johnson_diameter", inputs, k, bfs)
        if graph_core.diameter(graph) == 2 and k <= n // 2:
            report = analysis.diameter_report(graph, k, self.settings.max_configs)
            self._soft("analysis.diameter_formula", inputs, report.formula_diameter, report.bfs_diameter)

    def _connectivity_checks(self, tg: TokenGraph, inputs: Dict, regular: bool) -> None:
        graph = tg.underlying
        star = graph_core.star_centre(graph) is not None
        if tg.order > self.settings.oracle_cap:
            if regular or star:
                self._record("analysis.vertex_connectivity", inputs, "run",
                             f"skipped: {tg.order} states over oracle cap {self.settings.oracle_cap}", REPORTED)
            return
        if regular:
            report = analysis.kpg_vertex_connectivity(tg, self.settings.oracle_cap)
            self._soft("analysis.vertex_connectivity", inputs, report.claimed, report.exact)
        if star:
            exact = graph_core.adjacency_vertex_connectivity(tg.adjacency)
            self._record("special_cases.star_connectivity", inputs,
                         special_cases.star_kpg_connectivity(graph.n - 1, tg.k), exact)

    def _regular_analysis_checks(self, tg: TokenGraph, inputs: Dict) -> None:
        graph = tg.underlying
        self._record("analysis.level_set_identity", inputs, True, analysis.level_set_identity(tg).ok)
        self._record("analysis.average_degree", inputs, True, analysis.average_degree_identity(tg).ok)
        self._record("analysis.densest_degree_bounds", inputs, True, analysis.densest_degree_bounds(tg).ok)
        self._record("analysis.density_duality", inputs, True,
                     analysis.density_duality(graph, tg.k, self.settings.max_configs).ok)
        self._record("analysis.least_dense_exchange", inputs, True,
                     analysis.least_dense_exchange(graph, tg.k, self.settings.max_configs).ok)

    def _special_case_checks(self, tg: TokenGraph, inputs: Dict) -> None:
        graph = tg.underlying
        n, k = graph.n, tg.k
        levels = kpg.degree_levels(tg)
        if graph_core.is_cycle(graph) and k <= n // 2:
            self._record("special_cases.necklace_levels", inputs,
                         special_cases.cycle_degree_profile(n, k), levels)
            rational = {l: special_cases.necklace_level_count_rational(n, k, l) for l in range(1, k + 1)}
            self._record("special_cases.necklace_rational_form", inputs,
                         {l: special_cases.necklace_level_count(n, k, l) for l in rational},
                         {l: int(q) if q.denominator == 1 else str(q) for l, q in rational.items()})
        if graph_core.is_cocktail_party(graph) and k <= n // 2:
            degrees = special_cases.nm2_degree_set(n, k)
            expected = {
                deg: special_cases.nm2_level_count(n, k, j)
                for j, deg in enumerate(degrees)
                if special_cases.nm2_level_count(n, k, j)
            }
            closed = {
                deg: special_cases.nm2_level_count_closed(n, k, j)
                for j, deg in enumerate(degrees)
                if special_cases.nm2_level_count_closed(n, k, j)
            }
            self._record("special_cases.nm2_levels", inputs, [expected, expected], [levels, closed])
        if graph_core.star_centre(graph) is not None:
            profile = special_cases.star_kpg_profile(n - 1, k)
            expected: Dict[int, int] = {}
            for entry in profile.values():
                if entry["count"]:
                    expected[entry["degree"]] = expected.get(entry["degree"], 0) + entry["count"]
            self._record("special_cases.star_profile", inputs, dict(sorted(expected.items())), levels)

    # ------------------------------------------------------------------
    # exclusion chain
    # ------------------------------------------------------------------

    def _chain_checks(self, tg: TokenGraph, inputs: Dict, regular: bool) -> None:
        tol = self.settings.tol
        P = exclusion_chain.transition_matrix(tg)
        self._record("exclusion_chain.row_sums", inputs, True,
                     all(P.row_sum(i) == 1 for i in range(P.size)))
        support = [tuple(j for j in P.support(i) if j != i) for i in range(P.size)]
        self._record("exclusion_chain.support", inputs, True, tuple(support) == tg.adjacency)

        structure = exclusion_chain.chain_structure(P)
        self._record("exclusion_chain.irreducible", inputs, True, structure.irreducible)
        self._soft("exclusion_chain.aperiodic", inputs, 1, structure.period)
        if not structure.irreducible:
            return

        pi = exclusion_chain.stationary(P)
        self._record("exclusion_chain.stationary_residual", inputs, True,
                     exclusion_chain.residual(P, pi) <= exclusion_chain.RESIDUAL_TOL
                     and abs(sum(pi) - 1) <= exclusion_chain.RESIDUAL_TOL)
        self._record("exclusion_chain.proportional_to_degree", inputs, None,
                     exclusion_chain.proportional_to_degree(tg, pi, tol), REPORTED)

        lmax = min(self.settings.walk_lmax, exclusion_chain.MAX_WALK_LENGTH)
        walks = exclusion_chain.closed_walk_profile(tg, lmax)
        self._record("exclusion_chain.closed_walks_length_1", inputs, True, all(w[0] == 0 for w in walks))

        boundary = None
        if regular:
            boundary = exclusion_chain.boundary_partition(tg)
            self._partition_checks("boundary", P, pi, walks, boundary, tg, inputs, hard=False)
        try:
            orbits = exclusion_chain.orbit_partition(tg, self.settings.automorphism_cap)
        except CapExceededError as e:
            self._record("exclusion_chain.orbit_partition", inputs, "run", f"skipped: {e}", REPORTED)
            return
        self._partition_checks("orbit", P, pi, walks, orbits, tg, inputs, hard=True)
        if boundary is not None:
            self._soft("exclusion_chain.boundary_classes_are_orbits", inputs,
                       orbits.class_count, boundary.class_count)

    def _partition_checks(self, kind: str, P, pi, walks, part, tg: TokenGraph, inputs: Dict, hard: bool) -> None:
        check = self._record if hard else self._soft
        prefix = f"exclusion_chain.{kind}"
        self._record(f"{prefix}.degree_constant", inputs, True,
                     all(len({tg.degrees[i] for i in m}) == 1 for m in part.members()))
        self._record(f"{prefix}.transition_vectors", inputs, True,
                     exclusion_chain.transition_vector_identity(P, part).ok)
        lump = exclusion_chain.check_strong_lumpability(P, part)
        check(f"{prefix}.strong_lumpability", {**inputs, "classes": part.class_count}, "0", str(lump.max_dev))
        spread = exclusion_chain.class_constancy(pi, part, self.settings.tol)
        check(f"{prefix}.class_constancy", inputs, True, spread.ok)
        check(f"{prefix}.closed_walks", {**inputs, "lmax": len(walks[0]) if walks else 0}, True,
              exclusion_chain.closed_walk_class_check(walks, part).ok)
        if lump.ok:
            lumped = exclusion_chain.lumped_matrix(P, part)
            self._record(f"{prefix}.lumped_rows", inputs, True,
                         all(lumped.row_sum(i) == 1 for i in range(lumped.size)))
