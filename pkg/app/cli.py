import math
import pathlib
from typing import Optional

import typer  # type: ignore

from scripts.codec.roundtrip import exhaustive_roundtrip
from scripts.core.experiment import ExperimentFile
from scripts.core.models import ConfigurationError, OACError
from scripts.core.plans import validate_plan
from scripts.sim.analysis import pe_cell_edge, pe_theory, rate_for
from scripts.sim.estimate import empirical_epsilon_rate, estimate_pe
from scripts.sim.experiment import run_experiment
from scripts.sim.sweep import sweep as run_sweep
from scripts.theory.bounds import PropagationModel, pe_unshielded_floor, q_function
from scripts.utils.logger import LoggerManager
from scripts.utils.results_io import write_csv

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

THEORY_HEADER = ["scheme", "snr_db", "epsilon", "R", "quantity", "value"]
SIMULATE_HEADER = [
    "scheme", "snr_db", "R", "trials", "p_hat", "ci_lo", "ci_hi",
    "pe_theory", "pe_cell_edge", "guard_flag_rate",
]
SWEEP_HEADER = [
    "axis", "value", "scheme", "snr_db", "K", "beta_bar", "epsilon", "r_hat",
    "rate_theory", "gap_theory", "pe_hat_1", "pe_theory_1", "error",
]

app = typer.Typer(help="Over-the-air computation with hierarchical constellations.")
logger = LoggerManager.get_logger("cli")

CONFIG_OPTION = typer.Option(..., "--config", help="Path to the JSON experiment file.")
OUT_OPTION = typer.Option(None, "--out", help="CSV output path (defaults to the file's 'output').")
WORKERS_OPTION = typer.Option(
    1, "--workers", envvar="OAC_WORKERS", help="Worker processes for the Monte Carlo trials."
)


def _fail(code: int, message: str) -> None:
    logger.error(message)
    typer.echo(message, err=True)
    raise typer.Exit(code=code)


def _load(config: pathlib.Path) -> ExperimentFile:
    try:
        return ExperimentFile.from_path(config)
    except ConfigurationError as e:
        _fail(EXIT_CONFIG, f"Configuration error: {e}")


def _output_path(out: Optional[pathlib.Path], experiment: ExperimentFile) -> pathlib.Path:
    if out is not None:
        return out
    if experiment.output:
        return pathlib.Path(experiment.output)
    _fail(EXIT_CONFIG, "Configuration error: no --out given and the file has no 'output'")


def theory_rows(experiment: ExperimentFile) -> list[list]:
    plan = experiment.plan
    alphabets = experiment.alphabets
    validate_plan(plan, alphabets).raise_for_violation()
    R_max = plan.information_count
    rows = []
    for snr_db, snr in zip(experiment.snr_db, experiment.snr_values):
        pe_values = [pe_theory(plan, alphabets, snr, R) for R in range(1, R_max + 1)]
        for eps in experiment.epsilon:
            for R, pe in enumerate(pe_values, start=1):
                rows.append([experiment.scheme, snr_db, eps, R, "pe_theory", pe])
            if experiment.scheme == "unshielded" and not math.isinf(snr):
                model = PropagationModel.from_alphabets(alphabets, experiment.base)
                for R in range(1, R_max + 1):
                    floor, _ = pe_unshielded_floor(R, snr, experiment.base, model)
                    rows.append([experiment.scheme, snr_db, eps, R, "pe_unshielded_floor", floor])
            rate_from_pe = max((R for R, pe in enumerate(pe_values, start=1) if pe <= eps), default=0)
            rows.append([experiment.scheme, snr_db, eps, None, "rate_from_pe", rate_from_pe])
            report = rate_for(experiment, eps, snr)
            if report is not None:
                rows.append([experiment.scheme, snr_db, eps, None, report.name, report.rate])
                rows.append([experiment.scheme, snr_db, eps, None, "gap", report.gap])
                if report.mu is not None:
                    rows.append([experiment.scheme, snr_db, eps, None, "mu", report.mu])
    if rows:
        rows.insert(0, [experiment.scheme, None, None, None, "q_function(0)", q_function(0.0)])
    return rows


def simulate_rows(experiment: ExperimentFile, workers: int) -> list[list]:
    plan = experiment.plan
    alphabets = experiment.alphabets
    rows = []
    for snr_db, snr in zip(experiment.snr_db, experiment.snr_values):
        stats = run_experiment(experiment.system_config(snr), workers, experiment.width)
        r_hats = [empirical_epsilon_rate(stats, eps) for eps in experiment.epsilon]
        for R in range(1, stats.information_count + 1):
            ci = estimate_pe(stats, R)
            rows.append([
                experiment.scheme, snr_db, R, stats.trials, ci.p_hat, ci.lo, ci.hi,
                pe_theory(plan, alphabets, snr, R),
                pe_cell_edge(plan, alphabets, snr, R),
                stats.guard_flag_rate(R),
                *r_hats,
            ])
    return rows


@app.command()
def roundtrip(
    config: pathlib.Path = CONFIG_OPTION,
    out: Optional[pathlib.Path] = typer.Option(None, "--out", help="Optional CSV summary path."),
):
    """
    Encode, superimpose and decode every possible source block without noise.
    Exits 1 on any mismatch, guard flag or power violation.
    """
    experiment = _load(config)
    try:
        report = exhaustive_roundtrip(experiment.alphabets, experiment.plan, experiment.width)
    except ConfigurationError as e:
        _fail(EXIT_CONFIG, f"Configuration error: {e}")

    typer.echo(
        f"blocks={report.blocks} mismatches={report.mismatches} "
        f"guard_flags={report.guard_flags} max_power={report.max_power!r}"
    )
    if out is not None:
        write_csv(
            out,
            ["scheme", "blocks", "mismatches", "guard_flags", "max_power"],
            [[experiment.scheme, report.blocks, report.mismatches, report.guard_flags,
              report.max_power]],
        )
    if not report.ok:
        _fail(EXIT_FAILED, f"Round-trip failed; first mismatching block: {report.first_mismatch}")


@app.command()
def theory(config: pathlib.Path = CONFIG_OPTION, out: Optional[pathlib.Path] = OUT_OPTION):
    """
    Analytic error probabilities and rate bounds for every (snr_db, epsilon) pair.
    """
    experiment = _load(config)
    path = _output_path(out, experiment)
    try:
        rows = theory_rows(experiment)
    except ConfigurationError as e:
        _fail(EXIT_CONFIG, f"Configuration error: {e}")
    except OACError as e:
        _fail(EXIT_FAILED, str(e))
    count = write_csv(path, THEORY_HEADER, rows)
    logger.info(f"Wrote {count} theory rows to {path}")


@app.command()
def simulate(
    config: pathlib.Path = CONFIG_OPTION,
    out: Optional[pathlib.Path] = OUT_OPTION,
    workers: int = WORKERS_OPTION,
):
    """
    Monte Carlo prefix-error estimates with Wilson intervals next to the theory.
    """
    experiment = _load(config)
    path = _output_path(out, experiment)
    try:
        rows = simulate_rows(experiment, workers)
    except ConfigurationError as e:
        _fail(EXIT_CONFIG, f"Configuration error: {e}")
    except OACError as e:
        _fail(EXIT_FAILED, str(e))
    header = SIMULATE_HEADER + [f"r_hat@{eps!r}" for eps in experiment.epsilon]
    count = write_csv(path, header, rows)
    logger.info(f"Wrote {count} simulation rows to {path}")


def _parse_value(text: str) -> float:
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        _fail(EXIT_CONFIG, f"Configuration error: cannot parse sweep value {text!r}")


@app.command()
def sweep(
    config: pathlib.Path = CONFIG_OPTION,
    axis: str = typer.Option(..., "--axis", help="One of snr, K, beta_bar, epsilon."),
    values: str = typer.Option("", "--values", help="Comma-separated axis values."),
    out: Optional[pathlib.Path] = OUT_OPTION,
    workers: int = WORKERS_OPTION,
):
    """
    Re-run the experiment along one axis and pair empirical and analytic rates.
    """
    experiment = _load(config)
    path = _output_path(out, experiment)
    points = [_parse_value(v) for v in values.split(",") if v.strip()]
    try:
        results = run_sweep(experiment, axis, points, workers)
    except ConfigurationError as e:
        _fail(EXIT_CONFIG, f"Configuration error: {e}")
    rows = [
        [r.axis, r.value, r.scheme, r.snr_db, r.K, r.beta_bar, r.epsilon, r.r_hat,
         r.rate_theory, r.gap_theory, r.pe_hat_1, r.pe_theory_1, r.error]
        for r in results
    ]
    count = write_csv(path, SWEEP_HEADER, rows)
    logger.info(f"Wrote {count} sweep rows to {path}")


if __name__ == "__main__":
    app()
