"""
Closed-form error probabilities and computation-rate bounds.

Notation: SNR is linear, B the base, p_tilde the reciprocal probability of
an extreme superimposed digit and c0 = 2 (1 - 1/p_tilde).
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.special import erfc

from scripts.core.models import AlphabetSpec, DigitPlan, DomainError

SQRT2 = math.sqrt(2.0)


def q_function(x):
    """Gaussian tail Q(x) = erfc(x / sqrt(2)) / 2; accepts scalars or arrays."""
    if np.ndim(x) == 0:
        return 0.5 * float(erfc(float(x) / SQRT2))
    return 0.5 * erfc(np.asarray(x, dtype=float) / SQRT2)


def _amplitude(snr: float, denominator: int) -> float:
    """sqrt(SNR) / denominator without overflowing for huge integer denominators."""
    if math.isinf(snr):
        return math.inf
    if denominator.bit_length() < 1000:
        return math.sqrt(snr) / denominator
    return math.exp(0.5 * math.log(snr) - math.log(denominator))


def _clamp(p: float) -> float:
    return min(max(p, 0.0), 1.0)


def _validate_epsilon(eps: float) -> None:
    if not 0 < eps < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {eps!r}")


@dataclass(frozen=True)
class PropagationModel:
    """Carry-propagation attenuation; p_tilde may be inf (no propagation)."""
    p_tilde: float

    def __post_init__(self):
        if not self.p_tilde > 1:
            raise DomainError(f"p_tilde must exceed 1, got {self.p_tilde!r}")

    @property
    def c0(self) -> float:
        return 2.0 * (1.0 - 1.0 / self.p_tilde)

    @classmethod
    def uniform(cls, q: int, K: int) -> "PropagationModel":
        return cls(float(q) ** K)

    @classmethod
    def from_alphabets(cls, alphabets: Sequence[AlphabetSpec], B: int) -> "PropagationModel":
        """Conservative rule 1/p_tilde = min(Pr(u=0), Pr(u=B-1))."""
        from scripts.theory.exact import superposed_pmf

        pmf = superposed_pmf(alphabets)
        low = float(pmf[0])
        high = float(pmf[B - 1]) if B - 1 < len(pmf) else 0.0
        extreme = min(low, high)
        return cls(math.inf if extreme <= 0 else 1.0 / extreme)


@dataclass(frozen=True)
class RateReport:
    name: str
    epsilon: float
    snr: float
    rate: float
    gap: float
    mu: Optional[int] = None


def first_nonzero_digit_prob(m: int, snr: float, B: int) -> float:
    """Probability that the first nonzero base-B digit of the normalised noise is at m."""
    if m < 1:
        raise DomainError(f"digit index must be >= 1, got {m}")
    return 2 * q_function(_amplitude(snr, B**m)) - 2 * q_function(_amplitude(snr, B ** (m - 1)))


def pe_unshielded_series(R: int, M: int, snr: float, B: int, model: PropagationModel) -> float:
    """c0 * sum_{m=R}^{M+1} Q(sqrt(SNR)/B^m) * p_tilde^-(m-R), clamped to [0, 1]."""
    if R > M:
        raise DomainError(f"R={R} exceeds the block length M={M}")
    return pe_carry_series(R, [B**m for m in range(1, M + 2)], snr, model)


def pe_carry_series(
    R: int, denominators: Sequence[int], snr: float, model: PropagationModel
) -> float:
    """
    The carry-propagation series over arbitrary cell denominators
    D_1..D_{M+1}: c0 * sum_{m=R}^{M+1} Q(sqrt(SNR)/D_m) * p_tilde^-(m-R).
    """
    if R < 1:
        raise DomainError(f"R must be >= 1, got {R}")
    if R >= len(denominators):
        raise DomainError(f"R={R} exceeds the block length M={len(denominators) - 1}")
    total = math.fsum(
        q_function(_amplitude(snr, denominators[m - 1])) * model.p_tilde ** -(m - R)
        for m in range(R, len(denominators) + 1)
    )
    return _clamp(model.c0 * total)


def critical_depth(snr: float, B: int) -> int:
    """
    m* = floor(log_B sqrt(SNR)), computed exactly as the largest m with
    B^(2m) <= SNR. Negative below SNR 1.
    """
    if math.isinf(snr):
        raise DomainError("the critical depth needs a finite SNR")
    if not snr > 0:
        raise DomainError(f"SNR must be positive, got {snr!r}")
    m = 0
    while Fraction(B) ** (2 * m) > snr:
        m -= 1
    while Fraction(B) ** (2 * (m + 1)) <= snr:
        m += 1
    return m


def pe_unshielded_floor(R: int, snr: float, B: int, model: PropagationModel) -> tuple[float, int]:
    if R < 1:
        raise DomainError(f"R must be >= 1, got {R}")
    m_star = critical_depth(snr, B)
    value = model.c0 * q_function(1.0) * model.p_tilde ** (m_star - R)
    return _clamp(value), m_star


def unshielded_gap(eps: float, q: int, K: int) -> float:
    c0 = PropagationModel.uniform(q, K).c0
    return math.log2(c0 * q_function(1.0) / eps) / K


def rate_unshielded_upper(eps: float, snr: float, q: int, K: int) -> float:
    """Upper bound on the unshielded rate with B = Kq and p_tilde = q^K."""
    _validate_epsilon(eps)
    return 0.5 * math.log2(snr) / (math.log2(q) + math.log2(K)) - unshielded_gap(eps, q, K)


def pe_shielded(R: int, snr: float, plan: DigitPlan) -> float:
    """
    2 Q(sqrt(SNR) / D) with D the cumulative denominator up to the R-th
    information slot; R = 0 reads as threshold 1.
    """
    if R < 0 or R > plan.information_count:
        raise DomainError(f"R={R} outside 0..{plan.information_count}")
    denominator = 1 if R == 0 else plan.denominators[plan.information_positions[R - 1] - 1]
    return _clamp(2 * q_function(_amplitude(snr, denominator)))


def _log_term(eps: float) -> float:
    return math.log2(2 * -math.log(eps))


def rate_shielded_lower(eps: float, snr: float, B: int, beta_bar: int) -> tuple[float, float]:
    _validate_epsilon(eps)
    radix_bits = math.log2(B + 2 * beta_bar)
    gap = _log_term(eps) / (2 * radix_bits)
    rate = (0.5 * math.log2(snr) - 0.5 * _log_term(eps)) / radix_bits
    return rate, gap


def rate_variable_lower(eps: float, snr: float, B: int) -> tuple[int, int, float]:
    """
    (mu, R, gap): the smallest block depth mu meeting the target, the
    information digits R = mu - ceil(sqrt(2 mu)) it carries, and G3.
    """
    _validate_epsilon(eps)
    base_bits = math.log2(B)
    gap = 0.5 * _log_term(eps) / base_bits
    depth = 0.5 * math.log2(snr) / base_bits - gap
    mu = max(math.ceil(depth - 1e-12), 0)
    guards = math.isqrt(2 * mu - 1) + 1 if mu > 0 else 0
    return mu, max(mu - guards, 0), gap


def rate_report(name: str, eps: float, snr: float, **params) -> RateReport:
    """Evaluate one of the three rate bounds into a RateReport."""
    if name == "unshielded":
        rate = rate_unshielded_upper(eps, snr, params["q"], params["K"])
        return RateReport("rate_unshielded_upper", eps, snr, rate,
                          unshielded_gap(eps, params["q"], params["K"]))
    if name == "fixed_guard":
        rate, gap = rate_shielded_lower(eps, snr, params["B"], params["beta_bar"])
        return RateReport("rate_shielded_lower", eps, snr, rate, gap)
    if name == "variable_length":
        mu, R, gap = rate_variable_lower(eps, snr, params["B"])
        return RateReport("rate_variable_lower", eps, snr, float(R), gap, mu=mu)
    raise DomainError(f"unknown scheme {name!r}")
