"""Seeded synthetic integer datasets with known distribution shapes.

Randomness comes from NumPy's PCG64 bit generator (``default_rng``), so a
spec with the same seed reproduces the same sequence. Floating
intermediates are rounded half away from zero before being returned as
plain Python ints.

Kinds:
    bimodal     equal mixture of two rounded normals (defaults: centers
                at -100/+100, sigma 10)
    sparse_asym weighted choice over a few spread-out support points
    sine_noise  rounded sinusoid plus rounded white noise
    gauss       rounded centered normal (default sigma 40)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import InvalidInput

KINDS = ("bimodal", "sparse_asym", "sine_noise", "gauss")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    seed: int = 0
    params: Mapping[str, object] = field(default_factory=dict)


def _round_half_away(x: np.ndarray) -> np.ndarray:
    return (np.sign(x) * np.floor(np.abs(x) + 0.5)).astype(np.int64)


def _bimodal(rng, n, centers=(-100, 100), sigma=10.0):
    which = rng.integers(0, 2, size=n)
    offsets = rng.normal(0.0, sigma, size=n)
    mode = np.where(which == 0, centers[0], centers[1])
    return _round_half_away(mode + offsets)


def _sparse_asym(rng, n, support=(0, 7, 50, 51, 300), weights=(0.5, 0.2, 0.15, 0.1, 0.05)):
    if len(support) != len(weights):
        raise InvalidInput("support and weights must have equal length")
    idx = rng.choice(len(support), size=n, p=np.asarray(weights, dtype=float))
    return np.asarray(support, dtype=np.int64)[idx]


def _sine_noise(rng, n, amplitude=100.0, period=50.0, noise_sigma=5.0):
    t = np.arange(n, dtype=np.float64)
    wave = _round_half_away(amplitude * np.sin(2.0 * np.pi * t / period))
    noise = _round_half_away(rng.normal(0.0, noise_sigma, size=n))
    return wave + noise


def _gauss(rng, n, sigma=40.0):
    return _round_half_away(rng.normal(0.0, sigma, size=n))


_DISPATCH = {
    "bimodal": _bimodal,
    "sparse_asym": _sparse_asym,
    "sine_noise": _sine_noise,
    "gauss": _gauss,
}


def generate(spec: GeneratorSpec) -> list[int]:
    """Deterministic integer sequence of length ``spec.n`` for the given kind."""
    if spec.kind not in _DISPATCH:
        raise InvalidInput(
            f"unknown generator kind {spec.kind!r} (valid: {', '.join(KINDS)})"
        )
    if spec.n < 1:
        raise InvalidInput(f"sample count must be >= 1, got {spec.n}")
    rng = np.random.default_rng(spec.seed)
    values = _DISPATCH[spec.kind](rng, spec.n, **dict(spec.params))
    return [int(v) for v in values]
