"""
Digit-plan constructors and validation.

Four schedules are supported:

- unshielded: every slot (B, 0, 0), D_m = B^m.
- fixed guard: slot 1 (B, 0, 0), later slots (B, beta, 2*beta).
- variable length: progressive bases B + m - 1 with guard slots at the
  triangular positions j(j+3)/2.
- progressive: every slot carries information with base B + m - 1, optionally
  with fixed guards after the first slot.
"""
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from scripts.core.models import (
    AlphabetSpec,
    ConfigurationError,
    DigitPlan,
    DigitSlot,
    PlanError,
    SlotRole,
    SystemConfig,
)


@dataclass(frozen=True)
class PlanReport:
    ok: bool
    slot: Optional[int] = None
    message: str = "ok"

    def raise_for_violation(self) -> None:
        if not self.ok:
            raise PlanError(f"slot {self.slot}: {self.message}")


def output_alphabet_size(alphabets: Sequence[AlphabetSpec]) -> int:
    """L = sum_k (q_k - 1) + 1, the size of the Minkowski sum of the alphabets."""
    if not alphabets:
        raise ConfigurationError("at least one alphabet is required")
    return sum(a.size - 1 for a in alphabets) + 1


def guard_positions(mu: int) -> list[int]:
    """Triangular guard positions j(j+3)/2 not exceeding mu."""
    positions = []
    j = 1
    while j * (j + 3) // 2 <= mu:
        positions.append(j * (j + 3) // 2)
        j += 1
    return positions


def guard_count(mu: int) -> int:
    return len(guard_positions(mu))


def make_unshielded_plan(B: int, M: int) -> DigitPlan:
    if B < 2:
        raise PlanError(f"base must be >= 2 for a positional system, got {B}")
    if M < 1:
        raise PlanError(f"block length must be >= 1, got {M}")
    return DigitPlan(slots=tuple(DigitSlot(B) for _ in range(M)), kind="unshielded")


def make_fixed_guard_plan(B: int, M: int, beta_bar: int) -> DigitPlan:
    if beta_bar < 1:
        raise PlanError("beta_bar must be >= 1; use the unshielded plan for no guards")
    if B < 2:
        raise PlanError(f"base must be >= 2, got {B}")
    if M < 1:
        raise PlanError(f"block length must be >= 1, got {M}")
    slots = [DigitSlot(B)]
    slots += [DigitSlot(B, beta_bar, 2 * beta_bar) for _ in range(M - 1)]
    return DigitPlan(slots=tuple(slots), kind="fixed_guard")


def make_variable_length_plan(B: int, mu: int) -> DigitPlan:
    if B < 2:
        raise PlanError(f"base must be >= 2, got {B}")
    if mu < 1:
        raise PlanError(f"mu must be >= 1, got {mu}")
    guards = set(guard_positions(mu))
    slots = tuple(
        DigitSlot(B + m - 1, role=SlotRole.GUARD if m in guards else SlotRole.INFORMATION)
        for m in range(1, mu + 1)
    )
    return DigitPlan(slots=slots, kind="variable_length")


def make_progressive_plan(B: int, M: int, beta_bar: int = 0) -> DigitPlan:
    """
    Information slots with growing bases B + m - 1. Without guards
    D_m = (B+m-1)!/(B-1)!; with beta_bar > 0 every slot after the first
    also gets (beta_bar, 2*beta_bar) guards.
    """
    if beta_bar < 0:
        raise PlanError(f"beta_bar must be >= 0, got {beta_bar}")
    if B < 2:
        raise PlanError(f"base must be >= 2, got {B}")
    if M < 1:
        raise PlanError(f"block length must be >= 1, got {M}")
    slots = [DigitSlot(B)]
    slots += [DigitSlot(B + m - 1, beta_bar, 2 * beta_bar) for m in range(2, M + 1)]
    return DigitPlan(slots=tuple(slots), kind="progressive")


def validate_plan(
    plan: DigitPlan, config: SystemConfig | Sequence[AlphabetSpec]
) -> PlanReport:
    """
    Check a plan against the output alphabet of a configuration, given
    either as a SystemConfig or as its alphabets.

    Returns the first violation found (scanning slots in order) or an ok
    report. Never raises.
    """
    alphabets = config.alphabets if isinstance(config, SystemConfig) else config
    try:
        L = output_alphabet_size(alphabets)
    except ConfigurationError as e:
        return PlanReport(ok=False, slot=None, message=str(e))

    previous = 1
    for m, slot in enumerate(plan.slots, start=1):
        if slot.radix < 2:
            return PlanReport(False, m, f"radix {slot.radix} < 2")
        if slot.guard_low > slot.guard_span + 1:
            return PlanReport(
                False, m,
                f"aliasing: beta={slot.guard_low} > alpha+1={slot.guard_span + 1}",
            )
        if slot.is_information:
            if slot.base < L:
                return PlanReport(False, m, f"B < L (B={slot.base}, L={L})")
            if slot.guard_low + L > slot.radix:
                return PlanReport(
                    False, m,
                    f"guard overflow: beta+L={slot.guard_low + L} > radix {slot.radix}",
                )
        if plan.denominators[m - 1] <= previous:
            return PlanReport(False, m, "denominators not strictly increasing")
        previous = plan.denominators[m - 1]
    return PlanReport(ok=True)


def variable_length_bound(mu: int) -> int:
    """Upper bound ceil(sqrt(2 mu)) on the number of guard slots among mu positions."""
    return math.isqrt(2 * mu - 1) + 1 if mu > 0 else 0
