"""Fixed-point working grid for the received signal."""
from dataclasses import dataclass
from fractions import Fraction

from scripts.core.models import DigitPlan

GUARD_BITS = 64


@dataclass(frozen=True)
class WorkingGrid:
    """
    Values are integers n standing for n / scale.

    The scale is K * D_M * 2**GUARD_BITS, so every transmitted numerator
    N_k / (K * D_M) sits on the grid exactly and noise is rounded 64 bits
    below the finest digit cell.
    """
    scale: int

    @classmethod
    def for_plan(cls, plan: DigitPlan, K: int) -> "WorkingGrid":
        return cls(scale=K * plan.total_denominator << GUARD_BITS)

    def from_numerator(self, numerator: int) -> int:
        """Place an exact encoder numerator N_k (over K * D_M) on the grid."""
        return numerator << GUARD_BITS

    def from_fraction(self, value: Fraction) -> int:
        # round half up
        num = value.numerator * self.scale
        return (2 * num + value.denominator) // (2 * value.denominator)

    def from_float(self, value: float) -> int:
        num, den = float(value).as_integer_ratio()
        return (2 * num * self.scale + den) // (2 * den)

    def to_fraction(self, n: int) -> Fraction:
        return Fraction(n, self.scale)

    def to_float(self, n: int) -> float:
        return n / self.scale
