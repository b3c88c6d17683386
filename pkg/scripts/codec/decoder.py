"""
Receiver side: long-division digit extraction over the mixed-radix plan
and guard-based error localisation.
"""
from fractions import Fraction
from typing import Optional, Union

from scripts.codec.grid import WorkingGrid
from scripts.codec.models import DecodeResult
from scripts.core.models import DigitPlan


def extract_digits(
    d_numerator: int,
    grid: WorkingGrid,
    plan: DigitPlan,
    L: int,
    detection_width: Optional[int] = None,
) -> DecodeResult:
    """
    Expand d = d_numerator / grid.scale digit by digit.

    d is clamped into [0, 1 - 1/scale] first. Information digits become
    estimates clamp(r - beta, 0, L - 1); guard slots are skipped.
    """
    scale = grid.scale
    rem = min(max(d_numerator, 0), scale - 1)
    raw = []
    estimates = []
    for slot in plan.slots:
        r, rem = divmod(rem * slot.radix, scale)
        raw.append(r)
        if slot.is_information:
            estimates.append(min(max(r - slot.guard_low, 0), L - 1))
    result = DecodeResult(raw_digits=tuple(raw), estimates=tuple(estimates))
    flag = detect_guard_violation(result, plan, L if detection_width is None else detection_width)
    return DecodeResult(result.raw_digits, result.estimates, flag)


def decode_digits(
    y: Union[float, Fraction],
    eta: float,
    gamma_bar: Fraction,
    plan: DigitPlan,
    K: int,
    L: int,
    detection_width: Optional[int] = None,
) -> DecodeResult:
    """Decode a received sample: d = gamma_bar + y / eta, then extract digits."""
    grid = WorkingGrid.for_plan(plan, K)
    d = Fraction(gamma_bar) + Fraction(y) / Fraction(eta)
    return extract_digits(grid.from_fraction(d), grid, plan, L, detection_width)


def detect_guard_violation(result: DecodeResult, plan: DigitPlan, width: int) -> Optional[int]:
    """
    Smallest information index (1-based, counting information slots only)
    whose raw digit falls outside [beta_m, beta_m + width - 1].
    """
    index = 0
    for slot, r in zip(plan.slots, result.raw_digits):
        if not slot.is_information:
            continue
        index += 1
        if not slot.guard_low <= r <= slot.guard_low + width - 1:
            return index
    return None
