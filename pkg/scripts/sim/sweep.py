"""Parameter sweeps: one Monte Carlo run plus theory per axis value and SNR."""
from typing import Optional, Sequence

from scripts.core.experiment import AXES, ExperimentFile
from scripts.core.models import ConfigurationError, OACError
from scripts.sim.analysis import pe_theory, rate_for
from scripts.sim.estimate import empirical_epsilon_rate
from scripts.sim.experiment import run_experiment
from scripts.sim.models import SweepRow
from scripts.utils.logger import LoggerManager

logger = LoggerManager.get_logger("sim")


def _evaluate(
    experiment: ExperimentFile, axis: str, value: float, snr_db: float, snr: float,
    workers: Optional[int],
) -> list[SweepRow]:
    stats = run_experiment(experiment.system_config(snr), workers, experiment.width)
    has_digits = stats.information_count > 0
    pe_hat_1 = stats.pe_hat(1) if has_digits else None
    pe_theory_1 = pe_theory(experiment.plan, experiment.alphabets, snr, 1) if has_digits else None

    rows = []
    for eps in experiment.epsilon or (None,):
        report = rate_for(experiment, eps, snr) if eps is not None else None
        rows.append(SweepRow(
            axis=axis,
            value=value,
            scheme=experiment.scheme,
            snr_db=snr_db,
            K=experiment.K,
            beta_bar=experiment.beta_bar,
            epsilon=eps,
            stats=stats,
            r_hat=empirical_epsilon_rate(stats, eps) if eps is not None else None,
            rate_theory=report.rate if report else None,
            gap_theory=report.gap if report else None,
            pe_hat_1=pe_hat_1,
            pe_theory_1=pe_theory_1,
        ))
    return rows


def sweep(
    template: ExperimentFile,
    axis: str,
    values: Sequence[float],
    workers: Optional[int] = None,
) -> list[SweepRow]:
    """
    Evaluate the template at every axis value.

    A point that fails with a library error is kept as a row carrying the
    message; the remaining points still run.
    """
    if axis not in AXES:
        raise ConfigurationError(f"unknown sweep axis {axis!r}; expected one of {AXES}")

    rows: list[SweepRow] = []
    for value in values:
        try:
            experiment = template.with_axis(axis, value)
        except OACError as e:
            logger.warning(f"Sweep point {axis}={value!r} skipped: {e}")
            rows.append(SweepRow(axis, value, template.scheme, None, template.K,
                                 template.beta_bar, error=str(e)))
            continue
        for snr_db, snr in zip(experiment.snr_db, experiment.snr_values):
            try:
                rows.extend(_evaluate(experiment, axis, value, snr_db, snr, workers))
            except OACError as e:
                logger.warning(
                    f"Sweep point {axis}={value!r} at {snr_db!r} dB failed: {e}",
                    extra={"extra_data": {"axis": axis, "value": value, "snr_db": snr_db}},
                )
                rows.append(SweepRow(axis, value, experiment.scheme, snr_db, experiment.K,
                                     experiment.beta_bar, error=str(e)))
    logger.info(f"Sweep over {axis}: {len(values)} values, {len(rows)} rows")
    return rows
