"""Seeded random matrix ensembles.

Randomness comes from numpy's PCG64 generator.  A stream is selected by a
``SeedSequence`` built from ``(seed, *keys)`` (for campaigns the keys are a
check salt and the trial index), so every trial has its own independent and
reproducible stream.  Complex Gaussians are produced by Box-Muller from the
generator's 53-bit uniforms, which keeps the output independent of numpy's
normal-sampling algorithm.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

PD_SHIFT = 0.1
ENSEMBLES = ("ginibre", "hermitian", "positive_definite", "unitary", "nilpotent_upper")


def stream(seed: int, *keys: int) -> np.random.Generator:
    """Independent PCG64 stream for ``(seed, *keys)``."""
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF] + [int(k) & 0xFFFFFFFFFFFFFFFF for k in keys]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def salt(label: str) -> int:
    """Stable 32-bit integer key derived from a string label."""
    return zlib.crc32(label.encode("utf-8"))


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard complex Gaussians (E|z|^2 = 1) via Box-Muller."""
    u1 = 1.0 - rng.random(shape)  # (0, 1]
    u2 = rng.random(shape)
    radius = np.sqrt(-np.log(u1))
    angle = 2.0 * np.pi * u2
    return radius * (np.cos(angle) + 1j * np.sin(angle))


def ginibre(rng, n, scale=1.0):
    return scale * complex_gaussian(rng, (n, n))


def hermitian(rng, n, scale=1.0):
    g = ginibre(rng, n, scale)
    return 0.5 * (g + g.conj().T)


def positive_definite(rng, n, scale=1.0, shift=PD_SHIFT):
    g = ginibre(rng, n, scale)
    a = g @ g.conj().T
    a = 0.5 * (a + a.conj().T)
    return a + shift * np.eye(n)


def unitary(rng, n, scale=1.0):
    # scale does not affect the Haar draw; Q from QR with phase-fixed R diagonal
    q, r = np.linalg.qr(ginibre(rng, n))
    d = np.diag(r)
    phases = np.where(np.abs(d) > 0, d / np.where(np.abs(d) > 0, np.abs(d), 1.0), 1.0)
    return q * phases


def nilpotent_upper(rng, n, scale=1.0):
    return np.triu(ginibre(rng, n, scale), k=1)


_BUILDERS = {
    "ginibre": ginibre,
    "hermitian": hermitian,
    "positive_definite": positive_definite,
    "unitary": unitary,
    "nilpotent_upper": nilpotent_upper,
}


@dataclass(frozen=True)
class RandomSpec:
    seed: int
    dim: int
    ensemble: str = "ginibre"
    scale: float = 1.0
    keys: tuple[int, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ConfigError(f"dim must be >= 1, got {self.dim}")
        if not self.scale > 0:
            raise ConfigError(f"scale must be > 0, got {self.scale}")
        if self.ensemble not in _BUILDERS:
            raise ConfigError(f"unknown ensemble {self.ensemble!r}; choose from {ENSEMBLES}")


def random_matrix(spec: RandomSpec) -> np.ndarray:
    rng = stream(spec.seed, *spec.keys)
    return _BUILDERS[spec.ensemble](rng, spec.dim, spec.scale)
