"""Volume and label-volume containers plus axis/slice/normalization utilities.

Data layout: a volume of dims (nx, ny, nz) is stored as a C-ordered
``(nz, ny, nx)`` float32 array, i.e. flat x-fastest. 2D slices follow the
name order of their plane: an "xz" slice is indexed ``[x, z]``.

Volumes are immutable after construction (arrays are marked read-only) and
safe to share across threads.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

AXES = ("x", "y", "z")
PLANES = ("xy", "xz", "yz")

# name -> axis index into the (z, y, x) storage layout
_ZYX = {"x": 2, "y": 1, "z": 0}


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Volume:
    """3D scalar field with physical voxel spacing.

    data: float32 array of shape (nz, ny, nx); all values finite.
    spacing: (sx, sy, sz), strictly positive physical units per voxel.
    """

    data: np.ndarray
    spacing: tuple[float, float, float] = (1.0, 1.0, 1.0)

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 3:
            raise ValueError(f"volume data must be 3D, got shape {arr.shape}")
        if arr.dtype != np.float32 or not arr.flags.c_contiguous:
            arr = np.ascontiguousarray(arr, dtype=np.float32)
        if min(arr.shape) < 1:
            raise ValueError(f"volume dims must be positive, got {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("volume data contains NaN or Inf")
        spacing = tuple(float(s) for s in self.spacing)
        if len(spacing) != 3 or any(s <= 0 for s in spacing):
            raise ValueError(f"spacing must be 3 positive floats, got {self.spacing}")
        object.__setattr__(self, "data", _freeze(arr))
        object.__setattr__(self, "spacing", spacing)

    @property
    def dims(self) -> tuple[int, int, int]:
        nz, ny, nx = self.data.shape
        return (nx, ny, nz)

    @property
    def nx(self) -> int:
        return self.data.shape[2]

    @property
    def ny(self) -> int:
        return self.data.shape[1]

    @property
    def nz(self) -> int:
        return self.data.shape[0]

    def allclose(self, other: "Volume", rtol=1e-5, atol=1e-6) -> bool:
        return self.data.shape == other.data.shape and np.allclose(
            self.data, other.data, rtol=rtol, atol=atol
        )


@dataclass(frozen=True, eq=False)
class LabelVolume:
    """Integer instance labeling; 0 is background.

    Labels must be the contiguous set {0..K} (a tessellation with no
    background voxels, i.e. {1..K}, is also accepted).
    """

    data: np.ndarray
    spacing: tuple[float, float, float] = (1.0, 1.0, 1.0)

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 3:
            raise ValueError(f"label data must be 3D, got shape {arr.shape}")
        if arr.dtype != np.uint32 or not arr.flags.c_contiguous:
            if np.issubdtype(arr.dtype, np.signedinteger) and arr.min() < 0:
                raise ValueError("labels must be nonnegative")
            arr = np.ascontiguousarray(arr, dtype=np.uint32)
        labels = np.unique(arr)
        lo = int(labels[0])
        if lo > 1:
            raise ValueError("labels must start at 0 (or 1 for tessellations)")
        expected = np.arange(lo, lo + labels.size, dtype=np.uint32)
        if not np.array_equal(labels, expected):
            raise ValueError("labels must form a contiguous range")
        object.__setattr__(self, "data", _freeze(arr))
        object.__setattr__(self, "spacing", tuple(float(s) for s in self.spacing))

    @property
    def dims(self) -> tuple[int, int, int]:
        nz, ny, nx = self.data.shape
        return (nx, ny, nz)

    @property
    def n_labels(self) -> int:
        return int(self.data.max())


def relabel_contiguous(raw: np.ndarray) -> np.ndarray:
    """Map arbitrary nonnegative labels onto a contiguous range (0 stays 0)."""
    labels = np.unique(raw)
    lut = np.zeros(int(labels[-1]) + 1, dtype=np.uint32)
    if labels[0] == 0:
        lut[labels] = np.arange(labels.size, dtype=np.uint32)
    else:
        lut[labels] = np.arange(1, labels.size + 1, dtype=np.uint32)
    return lut[raw]


def extract_slice(vol: Volume | LabelVolume, plane: str, index: int) -> np.ndarray:
    """Copy a 2D slice; axes follow the plane name ("xz" -> indexed [x, z])."""
    if plane not in PLANES:
        raise ValueError(f"plane must be one of {PLANES}, got {plane!r}")
    data = vol.data
    nz, ny, nx = data.shape
    extents = {"xy": nz, "xz": ny, "yz": nx}
    n = extents[plane]
    if not 0 <= index < n:
        raise IndexError(f"slice index {index} out of range for plane {plane} (extent {n})")
    if plane == "xy":
        img = data[index, :, :].T  # (nx, ny)
    elif plane == "xz":
        img = data[:, index, :].T  # (nx, nz)
    else:
        img = data[:, :, index].T  # (ny, nz)
    return np.ascontiguousarray(img)


def slice_count(vol: Volume | LabelVolume, plane: str) -> int:
    nz, ny, nx = vol.data.shape
    return {"xy": nz, "xz": ny, "yz": nx}[plane]


def stack_slices(images, plane: str, spacing=(1.0, 1.0, 1.0)) -> Volume:
    """Inverse of extract_slice over all indices of the given plane."""
    if plane not in PLANES:
        raise ValueError(f"plane must be one of {PLANES}, got {plane!r}")
    stack = np.asarray([np.asarray(img).T for img in images], dtype=np.float32)
    if plane == "xy":
        data = stack  # (nz, ny, nx)
    elif plane == "xz":
        data = stack.transpose(1, 0, 2)  # stack axis is y
    else:
        data = stack.transpose(1, 2, 0)  # stack axis is x
    return Volume(np.ascontiguousarray(data), spacing)


def permute_axes(vol: Volume, perm: tuple[str, str, str]) -> Volume:
    """Relabel axes: new (x, y, z) = old (perm[0], perm[1], perm[2])."""
    if sorted(perm) != sorted(AXES):
        raise ValueError(f"perm must be a permutation of {AXES}, got {perm}")
    data = vol.data.transpose(_ZYX[perm[2]], _ZYX[perm[1]], _ZYX[perm[0]])
    spacing = tuple(vol.spacing[AXES.index(p)] for p in perm)
    return Volume(np.ascontiguousarray(data), spacing)


@dataclass(frozen=True)
class NormalizeInfo:
    """Affine used by normalize_percentile; needed to undo the mapping."""

    p_low: float
    p_high: float
    lo: float
    hi: float
    degenerate: bool = False

    def denormalize(self, data: np.ndarray) -> np.ndarray:
        return data * (self.hi - self.lo) + self.lo


def normalize_percentile(
    vol: Volume, p_low: float = 2.0, p_high: float = 99.8
) -> tuple[Volume, NormalizeInfo]:
    """Affinely map percentile(p_low) -> 0 and percentile(p_high) -> 1.

    Output is clipped to [-0.5, 1.5]. A degenerate volume (all voxels equal)
    maps to all zeros with ``info.degenerate`` set.
    """
    if not (0 <= p_low < p_high <= 100):
        raise ValueError(f"need 0 <= p_low < p_high <= 100, got ({p_low}, {p_high})")
    lo, hi = np.percentile(vol.data, [p_low, p_high])
    lo, hi = float(lo), float(hi)
    if hi - lo <= 0:
        logger.warning("normalize_percentile: degenerate volume (all voxels equal)")
        zero = np.zeros_like(vol.data)
        return Volume(zero, vol.spacing), NormalizeInfo(p_low, p_high, lo, hi, True)
    norm = (vol.data.astype(np.float32) - np.float32(lo)) / np.float32(hi - lo)
    np.clip(norm, -0.5, 1.5, out=norm)
    return Volume(norm, vol.spacing), NormalizeInfo(p_low, p_high, lo, hi, False)
