"""
Exact prefix-error probability under floor decoding.

For a noiseless point x, the depth-R prefix read from x + z is the cell of
the depth-R lattice holding x + z (d is clamped into [0, 1), so the end
cells reach to infinity). Some cells decode to the same estimates as x's
own cell, because estimate clamping hides moves into guard levels; the
prefix is wrong exactly when x + z lands in a cell whose estimates
differ. Grouping those cells into runs gives intervals [lo, hi) of z, and
with z ~ N(0, 1/SNR)

    P_e(R) = sum_u Pr(u) * sum_runs [Q(sqrt(SNR) lo) - Q(sqrt(SNR) hi)].
"""
import itertools
import math
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from scripts.codec.encoder import slot_weights
from scripts.core.models import AlphabetSpec, DigitPlan, DomainError
from scripts.core.plans import output_alphabet_size
from scripts.theory.bounds import q_function

MAX_STATES = 200_000

Interval = tuple[Optional[Fraction], Optional[Fraction]]


def superposed_pmf(alphabets: Sequence[AlphabetSpec]) -> np.ndarray:
    """pmf of u = sum_k s_k over 0..L-1."""
    pmf = np.array([1.0])
    for alphabet in alphabets:
        pmf = np.convolve(pmf, np.asarray(alphabet.pmf, dtype=float))
    return pmf


def _prefix_estimates(prefix: int, plan: DigitPlan, depth: int, L: int) -> tuple[int, ...]:
    digits = []
    for slot in reversed(plan.slots[:depth]):
        prefix, r = divmod(prefix, slot.radix)
        digits.append((slot, r))
    return tuple(
        min(max(r - slot.guard_low, 0), L - 1)
        for slot, r in reversed(digits)
        if slot.is_information
    )


def _depth(plan: DigitPlan, R: int) -> int:
    if not 1 <= R <= plan.information_count:
        raise DomainError(f"R={R} outside 1..{plan.information_count}")
    return plan.information_positions[R - 1]


def cell_estimates(plan: DigitPlan, L: int, R: int) -> list[tuple[int, ...]]:
    """Estimates u_hat[1..R] decoded from every cell of the depth of the R-th information slot."""
    depth = _depth(plan, R)
    return [_prefix_estimates(c, plan, depth, L) for c in range(plan.denominators[depth - 1])]


def noiseless_numerator(digits: Sequence[int], plan: DigitPlan) -> int:
    """Sum of b_k over transmitters as a numerator over D_M."""
    values = iter(digits)
    total = 0
    for slot, weight in zip(plan.slots, slot_weights(plan)):
        r = slot.guard_low + next(values) if slot.is_information else slot.guard_fill
        total += r * weight
    return total


def prefix_error_intervals(
    digits: Sequence[int],
    plan: DigitPlan,
    L: int,
    R: int,
    estimates: Optional[list[tuple[int, ...]]] = None,
) -> list[Interval]:
    """
    Noise ranges [lo, hi) that corrupt u_hat[1..R], as offsets from the
    noiseless point; None stands for an infinite end.

    `digits` are the superimposed information digits u. `estimates` may
    carry a precomputed cell_estimates(plan, L, R).
    """
    depth = _depth(plan, R)
    if estimates is None:
        estimates = cell_estimates(plan, L, R)
    total = plan.total_denominator
    unit = total // plan.denominators[depth - 1]
    x = noiseless_numerator(digits, plan)
    target = tuple(digits[:R])
    last = len(estimates) - 1

    intervals = []
    start = None
    for c, est in enumerate(estimates + [target]):
        wrong = est != target and c <= last
        if wrong and start is None:
            start = c
        elif not wrong and start is not None:
            lo = None if start == 0 else Fraction(start * unit - x, total)
            hi = None if c - 1 == last else Fraction(c * unit - x, total)
            intervals.append((lo, hi))
            start = None
    return intervals


def prefix_error_thresholds(
    digits: Sequence[int], plan: DigitPlan, L: int, R: int
) -> tuple[Optional[Fraction], Optional[Fraction]]:
    """
    Distances (t_up, t_down) from the noiseless point to the nearest
    boundaries whose crossing corrupts u_hat[1..R]; None means no crossing
    in that direction can.
    """
    t_up = None
    t_down = None
    for lo, hi in prefix_error_intervals(digits, plan, L, R):
        if lo is not None and lo >= 0:
            t_up = lo if t_up is None else min(t_up, lo)
        elif hi is not None:
            t_down = -hi if t_down is None else min(t_down, -hi)
    return t_up, t_down


def prefix_is_wrong(z: Fraction, intervals: Sequence[Interval]) -> bool:
    return any(
        (lo is None or z >= lo) and (hi is None or z < hi)
        for lo, hi in intervals
    )


def _interval_probability(lo: Optional[Fraction], hi: Optional[Fraction], sqrt_snr: float) -> float:
    a = -math.inf if lo is None else sqrt_snr * float(lo)
    b = math.inf if hi is None else sqrt_snr * float(hi)
    if b <= 0:
        # mirror below zero to keep the difference of small tails accurate
        return q_function(-b) - q_function(-a)
    return q_function(a) - q_function(b)


def pe_prefix_exact(
    R: int,
    snr: float,
    plan: DigitPlan,
    alphabets: Sequence[AlphabetSpec],
    max_states: int = MAX_STATES,
) -> float:
    """Exact P_e(R) for i.i.d. digits, by enumerating superimposed digit vectors."""
    L = output_alphabet_size(alphabets)
    _depth(plan, R)
    if math.isinf(snr):
        return 0.0
    pmf = superposed_pmf(alphabets)
    support = [u for u in range(L) if pmf[u] > 0]
    n_states = len(support) ** plan.information_count
    if n_states > max_states:
        raise DomainError(f"{n_states} digit vectors exceed the enumeration limit {max_states}")

    estimates = cell_estimates(plan, L, R)
    sqrt_snr = math.sqrt(snr)
    total = 0.0
    for digits in itertools.product(support, repeat=plan.information_count):
        intervals = prefix_error_intervals(digits, plan, L, R, estimates)
        if intervals:
            prob = math.prod(float(pmf[u]) for u in digits)
            total += prob * math.fsum(_interval_probability(lo, hi, sqrt_snr) for lo, hi in intervals)
    return min(max(total, 0.0), 1.0)
