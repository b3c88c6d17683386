"""
Gaussian multiple-access channel: y = sum_k x_k + z.

Randomness is derived per trial from (master_seed, trial_index) through
numpy's SeedSequence, so a trial's stream does not depend on which worker
runs it or in what order.
"""
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from scripts.core.models import ConfigurationError


@dataclass(frozen=True)
class NoiseSpec:
    sigma: float

    def __post_init__(self):
        if not self.sigma >= 0:
            raise ConfigurationError(f"sigma must be nonnegative, got {self.sigma!r}")

    @classmethod
    def from_snr(cls, eta: float, snr: float) -> "NoiseSpec":
        """sigma = eta / sqrt(SNR); an infinite SNR gives a noiseless channel."""
        if not snr > 0:
            raise ConfigurationError(f"snr must be positive, got {snr!r}")
        if math.isinf(snr):
            return cls(0.0)
        return cls(eta / math.sqrt(snr))


def derive_trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    """
    Independent PCG64 stream for one trial.

    SeedSequence hashes (master_seed, spawn_key=(trial_index,)) into the
    generator state, which is the same mixing numpy uses for spawned
    children.
    """
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=(trial_index,))
    return np.random.Generator(np.random.PCG64(seq))


def sample_noise(sigma: float, rng: np.random.Generator) -> float:
    """z ~ N(0, sigma^2) via numpy's ziggurat standard normal transform."""
    z = float(rng.standard_normal())
    return sigma * z if sigma > 0 else 0.0


def transmit(inputs: Sequence, z):
    """Superposition over the MAC; exact for integer or Fraction operands."""
    total = z
    for x in inputs:
        total = total + x
    return total
