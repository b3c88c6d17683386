"""Analytic columns paired with the simulated estimates."""
import math
from typing import Optional, Sequence

from scripts.core.experiment import ExperimentFile
from scripts.core.models import AlphabetSpec, DigitPlan, DomainError
from scripts.theory.bounds import (
    PropagationModel,
    RateReport,
    pe_carry_series,
    pe_shielded,
    pe_unshielded_series,
    rate_report,
)
from scripts.theory.exact import MAX_STATES, pe_prefix_exact


def _is_unguarded(plan: DigitPlan) -> bool:
    return not any(slot.guard_span for slot in plan.slots)


def pe_theory(plan: DigitPlan, alphabets: Sequence[AlphabetSpec], snr: float, R: int) -> float:
    """
    Closed-form P_e(R) for the plan's scheme: the carry-propagation series
    for plans without guards, 2Q(sqrt(SNR)/D) for every shielded plan.
    """
    if plan.kind == "unshielded":
        B = plan.slots[0].base
        model = PropagationModel.from_alphabets(alphabets, B)
        return pe_unshielded_series(R, plan.length, snr, B, model)
    if plan.kind == "progressive" and _is_unguarded(plan):
        B = plan.slots[0].base
        model = PropagationModel.from_alphabets(alphabets, B)
        # the term past the last slot continues the factorial growth
        denominators = plan.denominators + (plan.total_denominator * (B + plan.length),)
        return pe_carry_series(R, denominators, snr, model)
    return pe_shielded(R, snr, plan)
def pe_cell_edge(
    plan: DigitPlan,
    alphabets: Sequence[AlphabetSpec],
    snr: float,
    R: int,
    max_states: int = MAX_STATES,
) -> Optional[float]:
    """Exact floor-decoding P_e(R), or None when the digit space is too large to enumerate."""
    try:
        return pe_prefix_exact(R, snr, plan, alphabets, max_states)
    except DomainError:
        return None


def rate_for(experiment: ExperimentFile, eps: float, snr: float) -> Optional[RateReport]:
    """
    The scheme's rate bound at (eps, SNR), or None where it is undefined:
    infinite SNR, a progressive plan, or an unshielded run whose sources
    are not all uniform over one alphabet.
    """
    if math.isinf(snr) or experiment.scheme == "progressive":
        return None
    if experiment.scheme == "unshielded":
        q = experiment.uniform_q
        if q is None:
            return None
        return rate_report("unshielded", eps, snr, q=q, K=experiment.K)
    return rate_report(
        experiment.scheme, eps, snr, B=experiment.base, beta_bar=experiment.beta_bar
    )
