"""
Experiment documents: one JSON file describing a scheme, the sources, the
SNR grid and the Monte Carlo budget.

Example::

    {
      "scheme": "fixed_guard",
      "K": 2, "q": 2, "M": 4, "B": 3, "beta_bar": 1,
      "snr_db": [20.0, "inf"],
      "epsilon": [0.01],
      "trials": 100000,
      "master_seed": 7
    }
"""
import dataclasses
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Sequence

from scripts.core.models import (
    MAX_SEED,
    AlphabetSpec,
    ConfigurationError,
    DigitPlan,
    SystemConfig,
)
from scripts.core.plans import (
    make_fixed_guard_plan,
    make_progressive_plan,
    make_unshielded_plan,
    make_variable_length_plan,
    output_alphabet_size,
)
from scripts.utils.config_loader import ConfigLoader

SCHEMES = ("unshielded", "fixed_guard", "variable_length", "progressive")
AXES = ("snr", "K", "beta_bar", "epsilon")
DETECTION_WIDTHS = ("L", "B")


def snr_from_db(snr_db: float) -> float:
    """Linear SNR = 10^(dB/10); +inf stays +inf (noiseless)."""
    return math.inf if math.isinf(snr_db) else 10.0 ** (snr_db / 10.0)


def _as_int(key: str, value: Any) -> int:
    if isinstance(value, bool):
        raise ConfigurationError(f"'{key}' must be an integer, got {value!r}")
    if isinstance(value, int):
        return value
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"'{key}' must be an integer, got {value!r}") from None
    if not number.is_integer():
        raise ConfigurationError(f"'{key}' must be an integer, got {value!r}")
    return int(number)


def _as_float(key: str, value: Any) -> float:
    if isinstance(value, bool):
        raise ConfigurationError(f"'{key}' must be a number, got {value!r}")
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"'{key}' must be a number, got {value!r}") from None


def _as_list(value: Any) -> list:
    if value is None:
        return []
    return list(value) if isinstance(value, (list, tuple)) else [value]


def _per_transmitter(key: str, value: Any, K: int) -> Optional[tuple]:
    """Broadcast a scalar to K entries or check a list has exactly K."""
    if value is None:
        return None
    if not isinstance(value, (list, tuple)):
        return (value,) * K
    if len(value) != K:
        raise ConfigurationError(f"'{key}' has {len(value)} entries for K={K}")
    return tuple(value)


@dataclass(frozen=True)
class ExperimentFile:
    scheme: str
    K: int
    q: tuple[int, ...]
    snr_db: tuple[float, ...]
    trials: int
    M: Optional[int] = None
    mu: Optional[int] = None
    B: Optional[int] = None
    beta_bar: int = 1
    epsilon: tuple[float, ...] = ()
    master_seed: int = 0
    pmf: Optional[tuple[tuple[float, ...], ...]] = None
    pre_offset: Optional[tuple[int, ...]] = None
    pre_spacing: Optional[tuple[int, ...]] = None
    detection_width: str = "L"
    output: Optional[str] = None

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ConfigurationError(f"unknown scheme {self.scheme!r}; expected one of {SCHEMES}")
        if self.K < 1:
            raise ConfigurationError(f"K must be >= 1, got {self.K}")
        if len(self.q) != self.K:
            raise ConfigurationError(f"q has {len(self.q)} entries for K={self.K}")
        if self.scheme == "variable_length":
            if self.mu is None:
                raise ConfigurationError("the variable_length scheme needs 'mu'")
        elif self.M is None:
            raise ConfigurationError(f"the {self.scheme} scheme needs 'M'")
        if self.trials < 1:
            raise ConfigurationError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.master_seed <= MAX_SEED:
            raise ConfigurationError("master_seed must be a 64-bit unsigned integer")
        if self.detection_width not in DETECTION_WIDTHS:
            raise ConfigurationError(
                f"detection_width must be one of {DETECTION_WIDTHS}, got {self.detection_width!r}"
            )
        for db in self.snr_db:
            if math.isnan(db) or db == -math.inf:
                raise ConfigurationError(f"invalid snr_db value {db!r}")
        for eps in self.epsilon:
            if not 0 < eps < 1:
                raise ConfigurationError(f"epsilon must lie in (0, 1), got {eps!r}")
        for name in ("pmf", "pre_offset", "pre_spacing"):
            value = getattr(self, name)
            if value is not None and len(value) != self.K:
                raise ConfigurationError(f"'{name}' has {len(value)} entries for K={self.K}")

    @classmethod
    def from_dict(cls, data: dict, source: str = "<experiment>") -> "ExperimentFile":
        return cls.from_loader(ConfigLoader(source, data))

    @classmethod
    def from_path(cls, path: str | Path) -> "ExperimentFile":
        return cls.from_loader(ConfigLoader(path))

    @classmethod
    def from_loader(cls, loader: ConfigLoader) -> "ExperimentFile":
        K = _as_int("K", loader.require("K"))
        if K < 1:
            raise ConfigurationError(f"K must be >= 1, got {K}")
        q = tuple(_as_int("q", v) for v in _per_transmitter("q", loader.require("q"), K))

        pmf = loader.get("pmf")
        if pmf is not None:
            if not isinstance(pmf, (list, tuple)) or len(pmf) != K:
                raise ConfigurationError(f"'pmf' must be a list of {K} probability lists")
            pmf = tuple(tuple(_as_float("pmf", p) for p in row) for row in pmf)

        def optional_int(key):
            value = loader.get(key)
            return None if value is None else _as_int(key, value)

        def int_list(key):
            values = _per_transmitter(key, loader.get(key), K)
            return None if values is None else tuple(_as_int(key, v) for v in values)

        return cls(
            scheme=str(loader.require("scheme")),
            K=K,
            q=q,
            snr_db=tuple(_as_float("snr_db", v) for v in _as_list(loader.require("snr_db"))),
            trials=_as_int("trials", loader.require("trials")),
            M=optional_int("M"),
            mu=optional_int("mu"),
            B=optional_int("B"),
            beta_bar=_as_int("beta_bar", loader.get("beta_bar", 1)),
            epsilon=tuple(_as_float("epsilon", v) for v in _as_list(loader.get("epsilon"))),
            master_seed=_as_int("master_seed", loader.get("master_seed", 0)),
            pmf=pmf,
            pre_offset=int_list("pre_offset"),
            pre_spacing=int_list("pre_spacing"),
            detection_width=str(loader.get("detection_width", "L")),
            output=loader.get("output"),
        )

    @property
    def alphabets(self) -> tuple[AlphabetSpec, ...]:
        specs = []
        for k, size in enumerate(self.q):
            specs.append(AlphabetSpec(
                size=size,
                pmf=None if self.pmf is None else self.pmf[k],
                pre_offset=0 if self.pre_offset is None else self.pre_offset[k],
                pre_spacing=1 if self.pre_spacing is None else self.pre_spacing[k],
            ))
        return tuple(specs)

    @property
    def L(self) -> int:
        return output_alphabet_size(self.alphabets)

    @property
    def base(self) -> int:
        return self.L if self.B is None else self.B

    @property
    def plan(self) -> DigitPlan:
        if self.scheme == "unshielded":
            return make_unshielded_plan(self.base, self.M)
        if self.scheme == "fixed_guard":
            return make_fixed_guard_plan(self.base, self.M, self.beta_bar)
        if self.scheme == "progressive":
            return make_progressive_plan(self.base, self.M, self.beta_bar)
        return make_variable_length_plan(self.base, self.mu)

    @property
    def width(self) -> int:
        return self.L if self.detection_width == "L" else self.base

    @property
    def snr_values(self) -> tuple[float, ...]:
        return tuple(snr_from_db(db) for db in self.snr_db)

    @property
    def uniform_q(self) -> Optional[int]:
        """The common alphabet size when every source is uniform over the same q."""
        if len(set(self.q)) != 1 or self.pmf is not None:
            return None
        return self.q[0]

    def system_config(self, snr: float) -> SystemConfig:
        return SystemConfig(
            K=self.K,
            alphabets=self.alphabets,
            plan=self.plan,
            snr=snr,
            master_seed=self.master_seed,
            trials=self.trials,
        )

    def with_axis(self, axis: str, value: float) -> "ExperimentFile":
        """Copy with one sweep axis set to a single value."""
        if axis == "snr":
            return dataclasses.replace(self, snr_db=(float(value),))
        if axis == "epsilon":
            return dataclasses.replace(self, epsilon=(float(value),))
        if axis == "beta_bar":
            return dataclasses.replace(self, beta_bar=_as_int("beta_bar", value))
        if axis == "K":
            K = _as_int("K", value)
            if len(set(self.q)) != 1:
                raise ConfigurationError("a K sweep needs the same q for every transmitter")
            return dataclasses.replace(
                self,
                K=K,
                q=(self.q[0],) * K,
                pmf=_broadcast("pmf", self.pmf, K),
                pre_offset=_broadcast("pre_offset", self.pre_offset, K),
                pre_spacing=_broadcast("pre_spacing", self.pre_spacing, K),
            )
        raise ConfigurationError(f"unknown sweep axis {axis!r}; expected one of {AXES}")


def _broadcast(key: str, values: Optional[Sequence], K: int) -> Optional[tuple]:
    if values is None:
        return None
    if len(set(values)) != 1:
        raise ConfigurationError(f"a K sweep needs the same '{key}' for every transmitter")
    return (values[0],) * K
