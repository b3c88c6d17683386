"""
Monte Carlo trial loop.

Every trial draws a K x R source block and one noise sample from its own
rng stream, runs the grid-domain pipeline (encode, superpose, decode) and
records the first wrong information index and the first guard flag.
Trials are partitioned into contiguous chunks; each chunk yields a
PrefixErrorStats and the chunks are merged in order, so the histograms do
not depend on the number of workers.
"""
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from scripts.channel.gaussian_mac import NoiseSpec, derive_trial_rng, sample_noise, transmit
from scripts.codec.decoder import extract_digits
from scripts.codec.encoder import block_statistics, encode_source_block, power_scale
from scripts.codec.grid import WorkingGrid
from scripts.codec.models import SourceBlock
from scripts.core.models import AlphabetSpec, ConfigurationError, DigitPlan, SystemConfig
from scripts.core.plans import output_alphabet_size, validate_plan
from scripts.sim.models import PrefixErrorStats, TrialOutcome
from scripts.utils.logger import LoggerManager

MIN_CHUNK = 1_000

logger = LoggerManager.get_logger("sim")


@dataclass(frozen=True)
class TrialContext:
    """Per-run constants shared by every trial; picklable for worker processes."""
    plan: DigitPlan
    alphabets: tuple[AlphabetSpec, ...]
    grid: WorkingGrid
    eta: float
    gamma_grid: tuple[int, ...]
    L: int
    sigma: float
    detection_width: int
    master_seed: int
    cumulative_pmfs: tuple[tuple[float, ...], ...]

    @property
    def K(self) -> int:
        return len(self.alphabets)

    @property
    def gamma_bar(self) -> int:
        return sum(self.gamma_grid)


def build_context(config: SystemConfig, detection_width: Optional[int] = None) -> TrialContext:
    """Validate a configuration and precompute everything a trial needs."""
    validate_plan(config.plan, config).raise_for_violation()
    K = config.K
    L = output_alphabet_size(config.alphabets)
    width = L if detection_width is None else detection_width
    if width < 1:
        raise ConfigurationError(f"detection width must be >= 1, got {width}")
    gammas, variances = block_statistics(config.plan, config.alphabets, K)
    eta = power_scale(variances)
    grid = WorkingGrid.for_plan(config.plan, K)
    return TrialContext(
        plan=config.plan,
        alphabets=config.alphabets,
        grid=grid,
        eta=eta,
        gamma_grid=tuple(grid.from_fraction(g) for g in gammas),
        L=L,
        sigma=NoiseSpec.from_snr(eta, config.snr).sigma,
        detection_width=width,
        master_seed=config.master_seed,
        cumulative_pmfs=tuple(tuple(np.cumsum(a.pmf).tolist()) for a in config.alphabets),
    )


def sample_block(context: TrialContext, rng: np.random.Generator) -> SourceBlock:
    """Inverse-cdf draw of one row per transmitter; the clip covers cdf round-off below 1."""
    R = context.plan.information_count
    rows = []
    for alphabet, cdf in zip(context.alphabets, context.cumulative_pmfs):
        idx = np.searchsorted(cdf, rng.random(R), side="right")
        rows.append(tuple(int(s) for s in np.clip(idx, 0, alphabet.size - 1)))
    return SourceBlock(tuple(rows))


def run_trial(context: TrialContext, trial_index: int) -> TrialOutcome:
    rng = derive_trial_rng(context.master_seed, trial_index)
    block = sample_block(context, rng)
    z = sample_noise(context.sigma, rng)

    grid = context.grid
    numerators = encode_source_block(block, context.plan, context.alphabets)
    inputs = [grid.from_numerator(n) - g for n, g in zip(numerators, context.gamma_grid)]
    noise = grid.from_fraction(Fraction(z) / Fraction(context.eta)) if z else 0
    y = transmit(inputs, noise)
    result = extract_digits(
        context.gamma_bar + y, grid, context.plan, context.L, context.detection_width
    )

    truth = block.sums()
    first_error = next(
        (m for m, (u, u_hat) in enumerate(zip(truth, result.estimates), start=1) if u != u_hat),
        None,
    )
    return TrialOutcome(
        trial_index=trial_index,
        truth=truth,
        estimates=result.estimates,
        raw_digits=result.raw_digits,
        first_error=first_error,
        guard_flag=result.guard_violation,
        noise=noise,
    )


def run_chunk(context: TrialContext, start: int, stop: int) -> PrefixErrorStats:
    R = context.plan.information_count
    first_errors = [0] * (R + 1)
    guard_flags = [0] * (R + 1)
    for index in range(start, stop):
        outcome = run_trial(context, index)
        first_errors[R if outcome.first_error is None else outcome.first_error - 1] += 1
        guard_flags[R if outcome.guard_flag is None else outcome.guard_flag - 1] += 1
    return PrefixErrorStats.from_counts(R, first_errors, guard_flags)


def partition_trials(trials: int, workers: int) -> list[tuple[int, int]]:
    """Contiguous [start, stop) chunks, a few per worker."""
    n_chunks = max(1, min(workers * 4, trials // MIN_CHUNK))
    bounds = np.linspace(0, trials, n_chunks + 1).astype(int).tolist()
    return [(a, b) for a, b in zip(bounds, bounds[1:]) if b > a]


def run_experiment(
    config: SystemConfig,
    workers: Optional[int] = None,
    detection_width: Optional[int] = None,
) -> PrefixErrorStats:
    """
    Run config.trials trials and return the merged first-error histograms.

    Configuration problems raise before the first trial. Results are
    identical for any worker count.
    """
    context = build_context(config, detection_width)
    workers = max(1, workers or 1)
    chunks = partition_trials(config.trials, workers)
    started = time.perf_counter()

    stats = PrefixErrorStats.empty(config.plan.information_count)
    if workers == 1 or len(chunks) == 1:
        for start, stop in chunks:
            stats = stats.merge(run_chunk(context, start, stop))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_chunk, context, start, stop) for start, stop in chunks]
            for future in futures:
                stats = stats.merge(future.result())

    elapsed = time.perf_counter() - started
    logger.info(
        f"{config.trials} trials on a {config.plan.kind} plan at SNR {config.snr!r} "
        f"in {elapsed:.2f}s with {workers} worker(s)",
        extra={"extra_data": {
            "trials": config.trials,
            "snr": config.snr,
            "workers": workers,
            "elapsed": elapsed,
            "errors_at_1": stats.errors(1) if stats.information_count else 0,
        }},
    )
    return stats
