"""
Domain types shared by every other package: source alphabets, digit slots,
digit plans and the system configuration, plus the exception hierarchy.

All types are frozen dataclasses so they can be handed to worker processes
and shared between threads without copying.
"""
import math
import operator
from dataclasses import dataclass, field
from enum import Enum
from itertools import accumulate
from typing import Optional, Sequence

PMF_TOLERANCE = 1e-12
MAX_SEED = 2**64 - 1


class OACError(Exception):
    """Base class for every error raised by the library."""
    pass


class ConfigurationError(OACError, ValueError):
    """Invalid user configuration (alphabets, K, SNR, seed, scheme...)."""
    pass


class PlanError(ConfigurationError):
    """A digit plan that cannot be built or is unusable for a configuration."""
    pass


class DegenerateConfigurationError(ConfigurationError):
    """Every transmitter has zero variance, so the power scale is undefined."""
    pass


class DomainError(OACError, ValueError):
    """An operation input outside its domain."""
    pass


@dataclass(frozen=True)
class AlphabetSpec:
    """
    Source alphabet of one transmitter.

    Symbols are the integers 0..size-1. The optional affine pre-processing
    maps symbol s to the level pre_offset + pre_spacing * s.
    """
    size: int
    pmf: Optional[tuple[float, ...]] = None
    pre_offset: int = 0
    pre_spacing: int = 1

    def __post_init__(self):
        if isinstance(self.size, bool) or not isinstance(self.size, int) or self.size < 2:
            raise ConfigurationError(f"alphabet size must be an integer >= 2, got {self.size!r}")
        if self.pre_spacing == 0:
            raise ConfigurationError("pre_spacing must be nonzero")
        if self.pmf is None:
            object.__setattr__(self, "pmf", tuple([1.0 / self.size] * self.size))
        else:
            object.__setattr__(self, "pmf", tuple(float(p) for p in self.pmf))
        if len(self.pmf) != self.size:
            raise ConfigurationError(
                f"pmf has {len(self.pmf)} entries for an alphabet of size {self.size}"
            )
        if any(p < 0 or not math.isfinite(p) for p in self.pmf):
            raise ConfigurationError(f"pmf entries must be finite and nonnegative: {self.pmf}")
        if abs(math.fsum(self.pmf) - 1.0) > PMF_TOLERANCE:
            raise ConfigurationError(f"pmf must sum to 1 (got {math.fsum(self.pmf)!r})")

    @classmethod
    def uniform(cls, size: int) -> "AlphabetSpec":
        return cls(size=size)

    @property
    def mean(self) -> float:
        return math.fsum(i * p for i, p in enumerate(self.pmf))

    @property
    def variance(self) -> float:
        mu = self.mean
        return math.fsum(p * (i - mu) ** 2 for i, p in enumerate(self.pmf))

    @property
    def levels(self) -> tuple[int, ...]:
        """Pre-processed levels, one per symbol."""
        return tuple(self.pre_offset + self.pre_spacing * s for s in range(self.size))


class SlotRole(str, Enum):
    INFORMATION = "information"
    GUARD = "guard"


@dataclass(frozen=True)
class DigitSlot:
    """
    One position of the mixed-radix constellation.

    base is the information-bearing width B_m, guard_low the offset beta_m
    added to the summed digit, guard_span the extra levels alpha_m. The
    slot's radix is base + guard_span. Aliasing constraints are checked by
    validate_plan, not here, so malformed slots can still be reported.
    """
    base: int
    guard_low: int = 0
    guard_span: int = 0
    role: SlotRole = SlotRole.INFORMATION

    def __post_init__(self):
        for name in ("base", "guard_low", "guard_span"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise PlanError(f"{name} must be an integer, got {value!r}")
        if self.base < 1:
            raise PlanError(f"base must be positive, got {self.base}")
        if self.guard_low < 0 or self.guard_span < 0:
            raise PlanError("guard_low and guard_span must be nonnegative")
        object.__setattr__(self, "role", SlotRole(self.role))

    @property
    def radix(self) -> int:
        return self.base + self.guard_span

    @property
    def is_information(self) -> bool:
        return self.role is SlotRole.INFORMATION

    @property
    def guard_fill(self) -> int:
        """Summed digit carried by a guard slot: the middle of its radix."""
        return (self.radix - 1) // 2


@dataclass(frozen=True)
class DigitPlan:
    """Ordered slots of the hierarchy with their cumulative denominators."""
    slots: tuple[DigitSlot, ...]
    kind: str = "custom"
    denominators: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        slots = tuple(self.slots)
        if not slots:
            raise PlanError("a digit plan needs at least one slot")
        object.__setattr__(self, "slots", slots)
        object.__setattr__(
            self, "denominators", tuple(accumulate((s.radix for s in slots), operator.mul))
        )

    def __len__(self) -> int:
        return len(self.slots)

    @property
    def length(self) -> int:
        return len(self.slots)

    @property
    def total_denominator(self) -> int:
        return self.denominators[-1]

    def denominator(self, m: int) -> int:
        """D_m as a direct product of the first m radices (D_0 = 1)."""
        return math.prod(s.radix for s in self.slots[:m])

    @property
    def information_positions(self) -> tuple[int, ...]:
        """1-based slot positions of the information slots, in order."""
        return tuple(i for i, s in enumerate(self.slots, start=1) if s.is_information)

    @property
    def information_count(self) -> int:
        return len(self.information_positions)


@dataclass(frozen=True)
class SystemConfig:
    K: int
    alphabets: tuple[AlphabetSpec, ...]
    plan: DigitPlan
    snr: float
    master_seed: int = 0
    trials: int = 1

    def __post_init__(self):
        object.__setattr__(self, "alphabets", tuple(self.alphabets))
        if self.K < 1:
            raise ConfigurationError(f"K must be >= 1, got {self.K}")
        if len(self.alphabets) != self.K:
            raise ConfigurationError(
                f"expected {self.K} alphabets, got {len(self.alphabets)}"
            )
        if self.trials < 1:
            raise ConfigurationError(f"trials must be >= 1, got {self.trials}")
        if not self.snr > 0:
            raise ConfigurationError(f"snr must be positive, got {self.snr!r}")
        if not 0 <= self.master_seed <= MAX_SEED:
            raise ConfigurationError("master_seed must be a 64-bit unsigned integer")

    @classmethod
    def uniform(cls, K: int, q: int, plan: DigitPlan, snr: float, **kwargs) -> "SystemConfig":
        return cls(K=K, alphabets=tuple(AlphabetSpec.uniform(q) for _ in range(K)),
                   plan=plan, snr=snr, **kwargs)


def alphabets_from_sizes(sizes: Sequence[int]) -> tuple[AlphabetSpec, ...]:
    return tuple(AlphabetSpec.uniform(q) for q in sizes)
