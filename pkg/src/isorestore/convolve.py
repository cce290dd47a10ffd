"""Zero-padded "same" convolutions, FFT-based and direct.

The direct path is the oracle twin of the FFT path: both must agree within
1e-4 relative L2 on random inputs. Computation is float64 internally.
"""

from __future__ import annotations

import numpy as np
from scipy import fft as sfft


def _same_crop_slices(n_in, n_kernel):
    return tuple(slice(k // 2, k // 2 + n) for n, k in zip(n_in, n_kernel))


def convolve_fft(data: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """N-D zero-padded convolution, cropped to the input extent."""
    data = np.asarray(data, dtype=np.float64)
    kernel = np.asarray(kernel, dtype=np.float64)
    if data.ndim != kernel.ndim:
        raise ValueError("data and kernel dimensionality differ")
    full = [n + k - 1 for n, k in zip(data.shape, kernel.shape)]
    fast = [sfft.next_fast_len(s, real=True) for s in full]
    fd = sfft.rfftn(data, fast)
    fk = sfft.rfftn(kernel, fast)
    conv = sfft.irfftn(fd * fk, fast)[tuple(slice(0, s) for s in full)]
    return np.ascontiguousarray(conv[_same_crop_slices(data.shape, kernel.shape)])


def convolve_direct(data: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Direct shift-and-accumulate convolution; O(N*K), oracle use."""
    data = np.asarray(data, dtype=np.float64)
    kernel = np.asarray(kernel, dtype=np.float64)
    if data.ndim != kernel.ndim:
        raise ValueError("data and kernel dimensionality differ")
    pads = [(k // 2, k - 1 - k // 2) for k in kernel.shape]
    padded = np.pad(data, pads)
    out = np.zeros_like(data)
    for offset in np.ndindex(kernel.shape):
        w = kernel[offset]
        if w == 0.0:
            continue
        # convolution mirrors the kernel relative to correlation
        sl = tuple(
            slice(k - 1 - o, k - 1 - o + n)
            for o, n, k in zip(offset, data.shape, kernel.shape)
        )
        out += w * padded[sl]
    return out


def convolve3d(data: np.ndarray, kernel: np.ndarray, method: str = "fft") -> np.ndarray:
    if method == "fft":
        return convolve_fft(data, kernel)
    if method == "direct":
        return convolve_direct(data, kernel)
    raise ValueError(f"unknown convolution method {method!r}")


def convolve2d_same(img: np.ndarray, kernel: np.ndarray, method: str = "fft") -> np.ndarray:
    return convolve3d(img, kernel, method)
