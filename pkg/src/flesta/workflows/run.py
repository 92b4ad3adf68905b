"""Run workflow: one RunConfig in, one CommandReport (and exit status) out."""

import logging
from typing import Any, Callable, Dict, List, Optional

from pydantic import ValidationError
from rich.console import Console
from rich.status import Status

from ..ainfty import (
    AInftyData,
    BimoduleData,
    BoundingCochain,
    Obstructed,
    ainfty_relation_check,
    bimodule_relation_check,
    deform,
    flatness_residuals,
    mc_solve,
)
from ..ainfty.models import element_to_json
from ..complexes import FilteredComplex, check_complex
from ..config import Command, RunConfig
from ..dehn import TwistProfile, run_dehn_checks
from ..exceptions import (
    FlestaError,
    InputError,
    NonGapped,
    NotAComplex,
    NotStabilized,
    WorkflowError,
)
from ..expressions import evaluate_expressions
from ..index_lab import run_index_query
from ..novikov import format_fraction
from ..reporting import CommandReport, ReportConfig, generate_complete_report, rank_grid, residual_table
from ..serialization import read_json_file
from ..spectral import FiltrationScheme, compute_pages, default_scheme, euler_characteristic, stabilization
from ..spectral.vanishing import vanishing_criterion
from ..triangle import TriangleData, check_seidel_hypotheses, extract_les

logger = logging.getLogger(__name__)

TRIANGLE_PARTS = ("Cprime", "C", "Cdoubleprime")


def override_cap(data: Any, config: RunConfig, keys: Optional[tuple] = None) -> Any:
    """Replace the cap of a document (or of its named sub-documents) by ``--cap``."""
    if config.cap is None or not isinstance(data, dict):
        return data
    data = dict(data)
    cap = format_fraction(config.cap)
    if keys is None:
        data["cap"] = cap
    else:
        for key in keys:
            if isinstance(data.get(key), dict):
                data[key] = dict(data[key], cap=cap)
    return data


class RunWorkflow:
    """Orchestrates one command: read inputs, compute, report."""

    def __init__(self, config: RunConfig, cli_flags: Optional[Dict[str, Any]] = None):
        self.config = config
        self.cli_flags = cli_flags or {}
        self.quiet = self.cli_flags.get("quiet", False)
        self.no_color = self.cli_flags.get("no_color", False)
        self.console = Console(stderr=True, color_system=None if self.no_color else "auto")
        self._handlers: Dict[Command, Callable[[], CommandReport]] = {
            Command.SPECTRAL: self._spectral,
            Command.TRIANGLE: self._triangle,
            Command.AINFTY_CHECK: self._ainfty_check,
            Command.MC_SOLVE: self._mc_solve,
            Command.DEFORM: self._deform,
            Command.INDEX: self._index,
            Command.DEHN: self._dehn,
            Command.NOVIKOV_EVAL: self._novikov_eval,
        }

    def execute(self) -> CommandReport:
        """Execute the command and write its reports."""
        with Status(f"Running {self.config.command.value}...", console=self.console) as status:
            try:
                report = self.compute()
                status.update("Writing report...")
                self._generate_reports(report)
                return report
            except FlestaError:
                # Known errors carry their own exit codes
                raise
            except Exception as e:
                logger.error(f"Run workflow failed with an unexpected error: {e}", exc_info=True)
                raise WorkflowError(f"Run workflow execution failed: {e}") from e

    def compute(self) -> CommandReport:
        """The report without writing it."""
        handler = self._handlers[self.config.command]
        logger.debug(f"Dispatching '{self.config.command.value}' with seed {self.config.seed}")
        return handler()

    def _generate_reports(self, report: CommandReport) -> None:
        generate_complete_report(
            report,
            ReportConfig(output=self.config.output, quiet=self.quiet, color_output=not self.no_color),
        )

    def _input(self, position: int = 0) -> Any:
        if position >= len(self.config.inputs):
            raise InputError(f"command '{self.config.command.value}' needs input file #{position + 1}")
        return read_json_file(self.config.inputs[position])

    # commands

    def _spectral(self) -> CommandReport:
        c = FilteredComplex.from_json(override_cap(self._input(), self.config))
        check = check_complex(c)
        if not check.passed:
            return CommandReport(
                command="spectral",
                verdict="negative",
                title="Spectral sequence",
                payload={"complex_check": check.model_dump()},
                summary=[("Complex check", "failed"), ("First violation", check.violations[0].detail)],
            )
        scheme = default_scheme(c)
        if self.config.lambda0 is not None:
            try:
                scheme = FiltrationScheme(lambda0=self.config.lambda0, gap=scheme.gap)
            except ValidationError as e:
                raise NonGapped(e.errors()[0]["msg"]) from e
        pages = compute_pages(c, scheme, self.config.r_max)
        payload: Dict[str, Any] = {
            "cap": format_fraction(c.cap),
            "pages": [dict(page.to_json(), euler=euler_characteristic(page)) for page in pages],
        }
        summary = [("Generators", str(len(c.generators))), ("λ₀", format_fraction(scheme.lambda0)),
                   ("Pages computed", str(len(pages)))]
        tables = [rank_grid("E_1 ranks", pages[0].ranks())]
        try:
            result = stabilization(pages)
        except NotStabilized as e:
            payload["stabilized_at"] = None
            return CommandReport(command="spectral", verdict="negative", title="Spectral sequence",
                                 payload=payload, summary=summary + [("Stabilized", "no")], tables=tables,
                                 notes=[str(e)])
        payload.update(result.to_json())
        try:
            payload["vanishes"] = vanishing_criterion(c, self.config.epsilon)
        except NotAComplex as e:
            payload["vanishes"] = None
            logger.warning(f"Vanishing criterion not applicable: {e}")
        summary += [("Stabilized at", f"E_{result.r0}"), ("Vanishing criterion", str(payload["vanishes"]))]
        tables.append(rank_grid(f"E_{result.r0} = E_∞ ranks", result.limit_ranks))
        return CommandReport(command="spectral", title="Spectral sequence", payload=payload,
                             summary=summary, tables=tables)

    def _triangle(self) -> CommandReport:
        data = override_cap(self._input(), self.config, TRIANGLE_PARTS)
        if self.config.epsilon is not None and isinstance(data, dict):
            data = dict(data, epsilon=format_fraction(self.config.epsilon))
        t = TriangleData.from_json(data)
        hypotheses = check_seidel_hypotheses(t)
        les = extract_les(t, strict=False)
        verdict = "ok" if hypotheses.passed and les.exact else "negative"
        notes = [f"condition {item.condition} ({item.name}) fails: {item.witness}" for item in hypotheses.failures]
        return CommandReport(
            command="triangle",
            verdict=verdict,
            title="Exact triangle",
            payload={"hypotheses": hypotheses.to_json(), "les": les.to_json()},
            summary=[("Hypotheses", "hold" if hypotheses.passed else "fail"),
                     ("Long exact sequence", "exact" if les.exact else "not exact"),
                     ("Ranks", " → ".join(str(r) for r in les.rank_profile()))],
            notes=notes,
        )

    def _ainfty_check(self) -> CommandReport:
        data = override_cap(self._input(), self.config)
        if isinstance(data, dict) and "module" in data:
            report = bimodule_relation_check(BimoduleData.from_json(data))
            kind = "bimodule"
        else:
            report = ainfty_relation_check(AInftyData.from_json(data), self.config.k_max)
            kind = "algebra"
        return CommandReport(
            command="ainfty-check",
            verdict="ok" if report.passed else "negative",
            title=f"A∞ relations ({kind})",
            payload=dict(report.to_json(), kind=kind),
            summary=[("Tuples checked", str(report.checked)), ("Nonzero residual terms", str(len(report.residuals))),
                     ("Direct and bar paths agree", str(report.paths_agree))],
        )

    def _solve(self, a: AInftyData) -> Any:
        return mc_solve(a, self.config.cap)

    def _mc_solve(self) -> CommandReport:
        a = AInftyData.from_json(override_cap(self._input(), self.config))
        result = self._solve(a)
        if isinstance(result, Obstructed):
            return CommandReport(
                command="mc-solve", verdict="negative", title="Maurer-Cartan",
                payload=dict(result.to_json(), partial=result.partial.to_json()["b"]),
                summary=[("Solved", "no"), ("Obstructed at level", format_fraction(result.level))],
            )
        return CommandReport(
            command="mc-solve", title="Maurer-Cartan",
            payload=dict(result.to_json(), obstructed=False),
            summary=[("Solved", "yes"), ("Terms in b", str(len(result.terms)))],
        )

    def _deform(self) -> CommandReport:
        a = AInftyData.from_json(override_cap(self._input(), self.config))
        if len(self.config.inputs) > 1:
            b = BoundingCochain.from_json(self._input(1))
        else:
            solved = self._solve(a)
            if isinstance(solved, Obstructed):
                return CommandReport(
                    command="deform", verdict="negative", title="Deformation",
                    payload={"obstructed": True, "level": format_fraction(solved.level)},
                    summary=[("Bounding cochain", f"obstructed at {format_fraction(solved.level)}")],
                )
            b = solved
        deformed = deform(a, b)
        curvature, squares = flatness_residuals(deformed)
        flat = not curvature and not squares
        return CommandReport(
            command="deform",
            verdict="ok" if flat else "negative",
            title="Deformation",
            payload={
                "b": b.to_json()["b"],
                "deformed": deformed.to_json(),
                "m0": element_to_json(curvature),
                "m1_squared": [{"input": name, "value": element_to_json(v)} for name, v in squares],
                "flat": flat,
            },
            summary=[("m₀ᵇ = 0", str(not curvature)), ("(m₁ᵇ)² = 0", str(not squares))],
        )

    def _index(self) -> CommandReport:
        result = run_index_query(self.config.mode, self._input(), self.config.tolerances)
        summary = [("Mode", result.mode), ("Index", str(result.value))]
        if result.doubled is not None:
            summary.append(("Doubled", str(result.doubled)))
        return CommandReport(command="index", title="Index", payload={"index": result.to_json()}, summary=summary)

    def _dehn(self) -> CommandReport:
        cfg = self.config
        profile = TwistProfile.build(cfg.profile, cfg.twist_lambda, cfg.delta, **cfg.profile_params)
        report = run_dehn_checks(cfg.n, profile, cfg.samples, cfg.seed, cfg.tolerances)
        table = residual_table("Residuals", [
            (c.name, c.residual, c.tolerance, c.passed, c.informational) for c in report.checks
        ])
        return CommandReport(
            command="dehn",
            verdict="ok" if report.passed else "negative",
            title="Model Dehn twist",
            payload={"dehn": report.to_json(), "tolerance_profile": cfg.tolerance_profile},
            summary=[("n", str(cfg.n)), ("λ", f"{cfg.twist_lambda:g}"), ("Profile", profile.name),
                     ("δ-wobbly", str(report.wobbly)), ("Failed checks", str(len(report.failures)))],
            tables=[table],
        )

    def _novikov_eval(self) -> CommandReport:
        result = evaluate_expressions(self._input(), self.config.cap)
        rows: List = [(name, v["text"]) for name, v in result["values"].items()]
        return CommandReport(command="novikov-eval", title="Novikov expressions", payload=result,
                             summary=[("Cap", result["cap"])] + rows)


def run_config(config: RunConfig, cli_flags: Optional[Dict[str, Any]] = None) -> CommandReport:
    """Convenience wrapper used by the CLI commands."""
    return RunWorkflow(config, cli_flags).execute()
