"""Axis resampling: slicing downsample and nearest/bicubic upsampling.

Downsampling by an integer factor keeps every sigma-th sample starting at
index 0 (plane-by-plane acquisition semantics; no prefilter -- the forward
model applies the PSF before slicing). Upsampling by sigma multiplies the
extent by sigma; bicubic uses the Catmull-Rom kernel (a = -0.5) with
edge-clamped borders, and "nearest" is sample-and-hold replication.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .volume import AXES, Volume

_ZYX = {"x": 2, "y": 1, "z": 0}

METHODS = ("nearest", "bicubic")


def _catmull_rom_weights(s: np.ndarray) -> np.ndarray:
    """Weights for neighbors at offsets (-1, 0, 1, 2); a = -0.5."""
    s2 = s * s
    s3 = s2 * s
    w = np.empty((4,) + s.shape, dtype=np.float64)
    w[0] = -0.5 * s3 + s2 - 0.5 * s
    w[1] = 1.5 * s3 - 2.5 * s2 + 1.0
    w[2] = -1.5 * s3 + 2.0 * s2 + 0.5 * s
    w[3] = 0.5 * s3 - 0.5 * s2
    return w


def _upsample(arr: np.ndarray, axis: int, factor: int, method: str) -> np.ndarray:
    n = arr.shape[axis]
    m = n * factor
    moved = np.moveaxis(arr, axis, -1)
    if method == "nearest":
        idx = np.arange(m) // factor
        out = moved[..., idx]
    else:
        if n < 4:
            raise ValueError(f"bicubic upsampling needs extent >= 4, got {n}")
        x = np.arange(m, dtype=np.float64) / factor
        i0 = np.floor(x).astype(np.int64)
        s = x - i0
        w = _catmull_rom_weights(s)
        out = np.zeros(moved.shape[:-1] + (m,), dtype=np.float64)
        for k in range(4):
            idx = np.clip(i0 + k - 1, 0, n - 1)
            out += w[k] * moved[..., idx]
        out = out.astype(arr.dtype) if np.issubdtype(arr.dtype, np.floating) else out
    return np.ascontiguousarray(np.moveaxis(out, -1, axis))


def _downsample(arr: np.ndarray, axis: int, sigma: int) -> np.ndarray:
    idx = np.arange(0, arr.shape[axis], sigma)
    return np.ascontiguousarray(np.take(arr, idx, axis=axis))


def _as_ratio(factor) -> Fraction:
    if isinstance(factor, Fraction):
        f = factor
    elif isinstance(factor, int):
        f = Fraction(factor)
    else:
        f = Fraction(factor).limit_denominator(10**6)
    if f <= 0:
        raise ValueError(f"resampling factor must be positive, got {factor}")
    if f.numerator != 1 and f.denominator != 1:
        raise ValueError(f"factor must be an integer or 1/integer, got {factor}")
    return f


def resample_image_axis(img: np.ndarray, axis: int, factor, method: str = "bicubic") -> np.ndarray:
    """Resample one axis of a 2D (or n-D) array by an integer or 1/integer factor."""
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    f = _as_ratio(factor)
    img = np.asarray(img)
    if f == 1:
        return img.copy()
    if f.denominator == 1:
        return _upsample(img, axis, f.numerator, method)
    return _downsample(img, axis, f.denominator)


def resample_axis(vol: Volume, axis: str, factor, method: str = "bicubic") -> Volume:
    """Resample one named axis of a volume; spacing is rescaled to match."""
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    f = _as_ratio(factor)
    data = resample_image_axis(vol.data, _ZYX[axis], f, method)
    spacing = list(vol.spacing)
    spacing[AXES.index(axis)] /= float(f)
    return Volume(data.astype(np.float32), tuple(spacing))
