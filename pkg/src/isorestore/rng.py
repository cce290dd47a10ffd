"""Deterministic, seedable random number generation.

The core stream is a counter-based splitmix64: the k-th raw output is the
splitmix64 finalizer applied to ``seed + (k+1) * GOLDEN`` (mod 2**64), which
is exactly the sequential splitmix64 sequence for that seed.  All generation
is pure 64-bit integer arithmetic, so the raw/uniform streams are bit-exact
across platforms.  Derived distributions (normal, Poisson) go through libm
transcendentals and are therefore only guaranteed reproducible for a fixed
platform + numpy build, which is what the pipeline's bitwise re-run
guarantees rely on.
"""

from __future__ import annotations

import math

import numpy as np

ALGORITHM = "splitmix64"

_MASK = np.uint64(0xFFFFFFFFFFFFFFFF)
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)

# Poisson sampling switches from CDF inversion to a rounded-normal
# approximation above this mean.
POISSON_NORMAL_THRESHOLD = 50.0

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def _mix64(z: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer on uint64 arrays (wrapping arithmetic)."""
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))


def derive_seed(master: int, label: str) -> int:
    """Derive a child seed from a master seed and a stage label.

    ``derive_seed(s, label) = mix64(s XOR fnv1a64(label))``.  This is the
    documented splitting function used by the CLI to give every pipeline
    stage an independent stream from one master seed.
    """
    h = _FNV_OFFSET
    for byte in label.encode("utf-8"):
        h = ((h ^ byte) * _FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    z = np.uint64((int(master) & 0xFFFFFFFFFFFFFFFF) ^ h)
    return int(_mix64(z))


class Rng:
    """Counter-based splitmix64 generator.

    Single-owner by contract: parallel work must ``spawn`` independent
    children rather than share one stream.
    """

    algorithm = ALGORITHM

    def __init__(self, seed: int):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self._counter = 0

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed}, counter={self._counter}, algorithm={self.algorithm!r})"

    def spawn(self, label) -> "Rng":
        """Independent child generator; derived from the seed only."""
        return Rng(derive_seed(self.seed, f"spawn:{label}"))

    def raw(self, n: int) -> np.ndarray:
        """Next ``n`` raw uint64 values."""
        if n < 0:
            raise ValueError("n must be nonnegative")
        ks = np.arange(self._counter + 1, self._counter + n + 1, dtype=np.uint64)
        self._counter += n
        with np.errstate(over="ignore"):
            state = np.uint64(self.seed) + ks * _GOLDEN
        return _mix64(state)

    def uniform(self, size=None) -> np.ndarray | float:
        """Uniform float64 in [0, 1): ``(raw >> 11) * 2**-53``."""
        if size is None:
            return float(self.raw(1)[0] >> np.uint64(11)) * 2.0**-53
        shape = (size,) if np.isscalar(size) else tuple(size)
        n = int(np.prod(shape)) if shape else 1
        u = (self.raw(n) >> np.uint64(11)).astype(np.float64) * 2.0**-53
        return u.reshape(shape)

    def uniform_range(self, lo: float, hi: float, size=None):
        return lo + (hi - lo) * self.uniform(size)

    def normal(self, size=None) -> np.ndarray | float:
        """Standard normals via Box-Muller on consecutive uniform pairs."""
        scalar = size is None
        shape = () if scalar else ((size,) if np.isscalar(size) else tuple(size))
        n = 1 if scalar else int(np.prod(shape))
        m = (n + 1) // 2
        raw = self.raw(2 * m)
        # u1 in (0, 1] so log() stays finite
        u1 = ((raw[:m] >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53
        u2 = (raw[m:] >> np.uint64(11)).astype(np.float64) * 2.0**-53
        r = np.sqrt(-2.0 * np.log(u1))
        theta = 2.0 * math.pi * u2
        z = np.empty(2 * m, dtype=np.float64)
        z[0::2] = r * np.cos(theta)
        z[1::2] = r * np.sin(theta)
        z = z[:n]
        return float(z[0]) if scalar else z.reshape(shape)

    def poisson(self, lam) -> np.ndarray:
        """Poisson samples, one per element of ``lam``.

        CDF inversion below POISSON_NORMAL_THRESHOLD, rounded-normal
        approximation above it (clipped at zero).
        """
        lam = np.asarray(lam, dtype=np.float64)
        if np.any(lam < 0):
            raise ValueError("Poisson mean must be nonnegative")
        flat = lam.reshape(-1)
        out = np.zeros(flat.shape, dtype=np.int64)
        small = flat < POISSON_NORMAL_THRESHOLD
        n_small = int(small.sum())
        if n_small:
            lam_s = flat[small]
            u = self.uniform(n_small)
            k = np.zeros(n_small, dtype=np.int64)
            p = np.exp(-lam_s)
            cdf = p.copy()
            active = u >= cdf
            # max useful k for lam < 50 is far below this cap
            for _ in range(400):
                if not active.any():
                    break
                k[active] += 1
                p[active] *= lam_s[active] / k[active]
                cdf[active] += p[active]
                active &= u >= cdf
            out[small] = k
        n_big = int((~small).sum())
        if n_big:
            lam_b = flat[~small]
            z = self.normal(n_big)
            k = np.rint(lam_b + np.sqrt(lam_b) * z)
            out[~small] = np.maximum(k, 0.0).astype(np.int64)
        return out.reshape(lam.shape)

    def permutation(self, n: int) -> np.ndarray:
        """Deterministic permutation of range(n)."""
        return np.argsort(self.uniform(n), kind="stable")

    def shuffle(self, seq: list) -> list:
        return [seq[i] for i in self.permutation(len(seq))]

    def integers(self, lo: int, hi: int, size=None):
        """Integers in [lo, hi); uses floor(uniform * span)."""
        if hi <= lo:
            raise ValueError("empty range")
        u = self.uniform(size)
        return (lo + np.floor(u * (hi - lo))).astype(np.int64)
