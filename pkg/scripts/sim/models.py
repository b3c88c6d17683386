from dataclasses import dataclass
from typing import Optional

from scripts.core.models import DomainError


@dataclass(frozen=True)
class PrefixErrorStats:
    """
    First-error histograms of a Monte Carlo run.

    Bucket m-1 counts trials whose first wrong estimate is at information
    index m; the last bucket counts error-free trials. The guard histogram
    uses the same layout for the first flagged index.
    """
    trials: int
    information_count: int
    first_error_histogram: tuple[int, ...]
    guard_flag_histogram: tuple[int, ...]

    def __post_init__(self):
        size = self.information_count + 1
        if len(self.first_error_histogram) != size or len(self.guard_flag_histogram) != size:
            raise DomainError("histograms must have information_count + 1 buckets")
        if sum(self.first_error_histogram) != self.trials or sum(self.guard_flag_histogram) != self.trials:
            raise DomainError("histogram counts must sum to the number of trials")

    @classmethod
    def empty(cls, information_count: int) -> "PrefixErrorStats":
        zeros = (0,) * (information_count + 1)
        return cls(0, information_count, zeros, zeros)

    @classmethod
    def from_counts(cls, information_count: int, first_errors, guard_flags) -> "PrefixErrorStats":
        first = tuple(int(c) for c in first_errors)
        guard = tuple(int(c) for c in guard_flags)
        return cls(sum(first), information_count, first, guard)

    def merge(self, other: "PrefixErrorStats") -> "PrefixErrorStats":
        if other.information_count != self.information_count:
            raise DomainError("cannot merge runs with different information counts")
        return PrefixErrorStats(
            trials=self.trials + other.trials,
            information_count=self.information_count,
            first_error_histogram=tuple(
                a + b for a, b in zip(self.first_error_histogram, other.first_error_histogram)
            ),
            guard_flag_histogram=tuple(
                a + b for a, b in zip(self.guard_flag_histogram, other.guard_flag_histogram)
            ),
        )

    def errors(self, R: int) -> int:
        """Trials with at least one wrong estimate among the first R."""
        if not 0 <= R <= self.information_count:
            raise DomainError(f"R={R} outside 0..{self.information_count}")
        return sum(self.first_error_histogram[:R])

    def pe_hat(self, R: int) -> float:
        return self.errors(R) / self.trials if self.trials else 0.0

    def guard_flags(self, R: int) -> int:
        if not 0 <= R <= self.information_count:
            raise DomainError(f"R={R} outside 0..{self.information_count}")
        return sum(self.guard_flag_histogram[:R])

    def guard_flag_rate(self, R: int) -> float:
        return self.guard_flags(R) / self.trials if self.trials else 0.0


@dataclass(frozen=True)
class EstimateCI:
    p_hat: float
    lo: float
    hi: float
    errors: int = 0
    trials: int = 0

    @property
    def standard_error(self) -> float:
        if not self.trials:
            return 0.0
        return (self.p_hat * (1 - self.p_hat) / self.trials) ** 0.5


@dataclass(frozen=True)
class TrialOutcome:
    """Everything one trial observed; `noise` is the grid numerator of z / eta."""
    trial_index: int
    truth: tuple[int, ...]
    estimates: tuple[int, ...]
    raw_digits: tuple[int, ...]
    first_error: Optional[int]
    guard_flag: Optional[int]
    noise: int


@dataclass
class SweepRow:
    """One (axis value, SNR, epsilon) point of a sweep; `error` is set when the point failed."""
    axis: str
    value: float
    scheme: str
    snr_db: Optional[float]
    K: int
    beta_bar: int
    epsilon: Optional[float] = None
    stats: Optional[PrefixErrorStats] = None
    r_hat: Optional[int] = None
    rate_theory: Optional[float] = None
    gap_theory: Optional[float] = None
    pe_hat_1: Optional[float] = None
    pe_theory_1: Optional[float] = None
    error: Optional[str] = None
