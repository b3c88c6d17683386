"""
Transmitter side of the hierarchical constellation.

Each transmitter packs its information symbols into one exact rational
b_k = N_k / (K * D_M): information slot m contributes (K*s + beta_m) units
of 1 / (K * D_m), a guard slot contributes the slot's mid fill. The channel
input is x_k = eta * (b_k - gamma_k).
"""
import math
from fractions import Fraction
from typing import Any, Callable, Mapping, Optional, Sequence

from scripts.codec.models import EncodedSignal, SourceBlock
from scripts.core.models import (
    AlphabetSpec,
    DegenerateConfigurationError,
    DigitPlan,
    DomainError,
)
from scripts.core.plans import output_alphabet_size


def preprocess(symbol: int, alphabet: AlphabetSpec) -> int:
    """Affine pre-processing a_k + c_k * s."""
    if not 0 <= symbol < alphabet.size:
        raise DomainError(f"symbol {symbol} outside 0..{alphabet.size - 1}")
    return alphabet.pre_offset + alphabet.pre_spacing * symbol


def slot_weights(plan: DigitPlan) -> tuple[int, ...]:
    """D_M / D_m for every slot."""
    total = plan.total_denominator
    return tuple(total // d for d in plan.denominators)


def encode_block(row: Sequence[int], plan: DigitPlan, K: int) -> int:
    """
    Exact numerator N_k of one transmitter's block.

    `row` holds one symbol per information slot. The result satisfies
    0 <= N_k < K * D_M whenever the plan is valid for the configuration.
    """
    if len(row) != plan.information_count:
        raise DomainError(
            f"block row has {len(row)} symbols, plan has {plan.information_count} information slots"
        )
    symbols = iter(row)
    numerator = 0
    for slot, weight in zip(plan.slots, slot_weights(plan)):
        if slot.is_information:
            s = next(symbols)
            if s < 0:
                raise DomainError(f"negative symbol {s}")
            numerator += (K * s + slot.guard_low) * weight
        else:
            numerator += slot.guard_fill * weight
    return numerator


def encode_source_block(
    block: SourceBlock, plan: DigitPlan, alphabets: Sequence[AlphabetSpec]
) -> tuple[int, ...]:
    """Numerators N_k of every row of a source block, after checking it against the alphabets."""
    block.check(alphabets)
    return tuple(encode_block(row, plan, block.K) for row in block.symbols)


def block_statistics(
    plan: DigitPlan, alphabets: Sequence[AlphabetSpec], K: int
) -> tuple[tuple[Fraction, ...], tuple[float, ...]]:
    """
    Mean gamma_k (exact) and variance of b_k for every transmitter.

    Symbols are independent across slots, so variances add with weight
    1 / D_m^2.
    """
    gammas = []
    variances = []
    for alphabet in alphabets:
        mean = sum((i * Fraction(p) for i, p in enumerate(alphabet.pmf)), Fraction(0))
        gamma = Fraction(0)
        var = 0.0
        for slot, d in zip(plan.slots, plan.denominators):
            if slot.is_information:
                gamma += (mean + Fraction(slot.guard_low, K)) / d
                var += alphabet.variance / d**2
            else:
                gamma += Fraction(slot.guard_fill, K * d)
        gammas.append(gamma)
        variances.append(var)
    return tuple(gammas), tuple(variances)


def power_scale(variances: Sequence[float]) -> float:
    """Common eta = 1 / sqrt(max_k Var(b_k))."""
    peak = max(variances, default=0.0)
    if not peak > 0:
        raise DegenerateConfigurationError(
            "all transmitter variances are zero; the power scale is undefined"
        )
    return 1.0 / math.sqrt(peak)


def modulate(numerator: int, gamma: Fraction, eta: float, plan: DigitPlan, K: int) -> EncodedSignal:
    denominator = K * plan.total_denominator
    b = Fraction(numerator, denominator)
    x = float(Fraction(eta) * (b - gamma))
    return EncodedSignal(numerator=numerator, denominator=denominator, gamma=gamma, eta=eta, x=x)


def postprocess(estimates: Sequence[int], psi: Optional[Mapping[int, Any]] = None) -> list:
    if psi is None:
        return list(estimates)
    try:
        return [psi[u] for u in estimates]
    except KeyError as e:
        raise DomainError(f"post-processing lookup undefined at {e.args[0]!r}") from None


def make_postprocessor(
    alphabets: Sequence[AlphabetSpec], fn: Callable[[int], Any]
) -> dict[int, Any]:
    """
    Lookup psi(u) = fn(sum_k a_k + c * u) over the whole output alphabet.

    The superimposed index u only determines the intermediate sum of the
    pre-processed levels when all transmitters share the spacing c.
    """
    spacings = {a.pre_spacing for a in alphabets}
    if len(spacings) != 1:
        raise DomainError(f"nomographic post-processing needs a common spacing, got {sorted(spacings)}")
    (c,) = spacings
    offset = sum(a.pre_offset for a in alphabets)
    return {u: fn(offset + c * u) for u in range(output_alphabet_size(alphabets))}
