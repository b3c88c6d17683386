from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from scripts.core.models import AlphabetSpec, DomainError


@dataclass(frozen=True)
class SourceBlock:
    """K x R symbol matrix, one row per transmitter, one column per information slot."""
    symbols: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(s) for s in row) for row in self.symbols)
        if rows and len({len(r) for r in rows}) != 1:
            raise DomainError("all rows of a source block must have the same length")
        object.__setattr__(self, "symbols", rows)

    @property
    def K(self) -> int:
        return len(self.symbols)

    @property
    def length(self) -> int:
        return len(self.symbols[0]) if self.symbols else 0

    def check(self, alphabets: Sequence[AlphabetSpec]) -> None:
        if len(alphabets) != self.K:
            raise DomainError(f"block has {self.K} rows for {len(alphabets)} alphabets")
        for k, (row, alphabet) in enumerate(zip(self.symbols, alphabets)):
            for m, s in enumerate(row, start=1):
                if not 0 <= s < alphabet.size:
                    raise DomainError(
                        f"symbol s_{k + 1}[{m}]={s} outside 0..{alphabet.size - 1}"
                    )

    def sums(self) -> tuple[int, ...]:
        """u[m] = sum_k s_k[m]."""
        return tuple(sum(col) for col in zip(*self.symbols))


@dataclass(frozen=True)
class EncodedSignal:
    """
    One transmitter's channel input.

    b_k = numerator / (K * D_M) exactly; gamma is E[b_k] as an exact
    fraction; x is the real channel input eta * (b_k - gamma).
    """
    numerator: int
    denominator: int
    gamma: Fraction
    eta: float
    x: float

    @property
    def b(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


@dataclass(frozen=True)
class DecodeResult:
    raw_digits: tuple[int, ...]
    estimates: tuple[int, ...]
    guard_violation: Optional[int] = None
