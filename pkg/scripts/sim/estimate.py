"""Point estimates, Wilson intervals and the empirical epsilon-computation rate."""
import math

from scipy.stats import norm

from scripts.core.models import DomainError
from scripts.sim.models import EstimateCI, PrefixErrorStats

CONFIDENCE = 0.95


def wilson_interval(errors: int, trials: int, confidence: float = CONFIDENCE) -> tuple[float, float]:
    if trials <= 0:
        return 0.0, 1.0
    z = norm.ppf(0.5 + confidence / 2)
    p = errors / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    # round-off can push an endpoint across p at zero or full counts
    lo = min(max(center - half, 0.0), p)
    hi = max(min(center + half, 1.0), p)
    return lo, hi


def estimate_pe(stats: PrefixErrorStats, R: int) -> EstimateCI:
    if not 1 <= R <= stats.information_count:
        raise DomainError(f"R={R} outside 1..{stats.information_count}")
    errors = stats.errors(R)
    lo, hi = wilson_interval(errors, stats.trials)
    return EstimateCI(p_hat=stats.pe_hat(R), lo=lo, hi=hi, errors=errors, trials=stats.trials)


def empirical_epsilon_rate(stats: PrefixErrorStats, eps: float) -> int:
    """Largest R with p_hat(R) <= eps, 0 if even the first digit misses the target."""
    if not 0 < eps <= 1:
        raise DomainError(f"epsilon must lie in (0, 1], got {eps!r}")
    rate = 0
    for R in range(1, stats.information_count + 1):
        if stats.pe_hat(R) > eps:
            break
        rate = R
    return rate
