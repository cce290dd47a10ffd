"""On-disk formats: the ISOV binary volume format, TIFF import, slice export.

ISOV layout (little-endian, 36-byte header):

    bytes 0-3    magic "ISOV"
    u32          version (1)
    u32 x3       nx, ny, nz
    f32 x3       sx, sy, sz
    u32          dtype code: 0 = float32, 1 = uint32 (label volumes)
    payload      nx*ny*nz values, x-fastest

Write/read round trips are bit-exact.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .volume import LabelVolume, Volume

MAGIC = b"ISOV"
VERSION = 1
DTYPE_F32 = 0
DTYPE_U32 = 1
_HEADER = struct.Struct("<4sIIIIfffI")
MAX_VOXELS = 2**32


class IsovError(ValueError):
    """Base class for ISOV format violations."""


class BadMagicError(IsovError):
    """File does not start with the ISOV magic or has an unknown version."""


class DimensionError(IsovError):
    """Header dimensions are zero or overflow the voxel budget."""


class TruncatedPayloadError(IsovError):
    """Payload size does not match the header dimensions."""


def _encode(data: np.ndarray, spacing, dtype_code: int) -> bytes:
    nz, ny, nx = data.shape
    header = _HEADER.pack(MAGIC, VERSION, nx, ny, nz, *spacing, dtype_code)
    return header + data.tobytes()


def _decode_header(blob: bytes, path):
    if len(blob) < _HEADER.size:
        raise TruncatedPayloadError(f"{path}: file shorter than ISOV header")
    magic, version, nx, ny, nz, sx, sy, sz, dtype_code = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise BadMagicError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise BadMagicError(f"{path}: unsupported ISOV version {version}")
    if min(nx, ny, nz) < 1 or nx * ny * nz > MAX_VOXELS:
        raise DimensionError(f"{path}: invalid dimensions ({nx}, {ny}, {nz})")
    if dtype_code not in (DTYPE_F32, DTYPE_U32):
        raise IsovError(f"{path}: unknown dtype code {dtype_code}")
    return (nx, ny, nz), (sx, sy, sz), dtype_code


def _read(path, expected_code: int):
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such volume file: {path}")
    blob = path.read_bytes()
    (nx, ny, nz), spacing, dtype_code = _decode_header(blob, path)
    if dtype_code != expected_code:
        kind = "label (u32)" if dtype_code == DTYPE_U32 else "intensity (f32)"
        raise IsovError(f"{path}: contains a {kind} volume, wrong reader used")
    n = nx * ny * nz
    payload = blob[_HEADER.size :]
    if len(payload) != 4 * n:
        raise TruncatedPayloadError(
            f"{path}: payload holds {len(payload) // 4} values, header claims {n}"
        )
    dt = "<f4" if dtype_code == DTYPE_F32 else "<u4"
    data = np.frombuffer(payload, dtype=dt).reshape(nz, ny, nx)
    return data, spacing


def write_volume(vol: Volume, path) -> None:
    Path(path).write_bytes(_encode(vol.data.astype("<f4", copy=False), vol.spacing, DTYPE_F32))


def read_volume(path) -> Volume:
    data, spacing = _read(path, DTYPE_F32)
    return Volume(data.astype(np.float32), spacing)


def write_label_volume(labels: LabelVolume, path) -> None:
    Path(path).write_bytes(
        _encode(labels.data.astype("<u4", copy=False), labels.spacing, DTYPE_U32)
    )


def read_label_volume(path) -> LabelVolume:
    data, spacing = _read(path, DTYPE_U32)
    return LabelVolume(data.astype(np.uint32), spacing)


def read_tiff_volume(path, spacing=(1.0, 1.0, 1.0)) -> Volume:
    """Import a single-channel multi-page grayscale TIFF stack.

    Convenience import path only; ISOV is the native format.
    """
    from PIL import Image

    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such TIFF file: {path}")
    pages = []
    with Image.open(path) as im:
        for frame in range(getattr(im, "n_frames", 1)):
            im.seek(frame)
            if im.mode not in ("L", "I", "I;16", "F"):
                raise ValueError(f"{path}: unsupported TIFF mode {im.mode!r} (grayscale only)")
            pages.append(np.asarray(im, dtype=np.float32))
    data = np.stack(pages, axis=0)  # (nz, ny, nx)
    return Volume(data, spacing)


def _to_u8(img: np.ndarray) -> np.ndarray:
    img = np.asarray(img, dtype=np.float64)
    lo, hi = img.min(), img.max()
    if hi - lo <= 0:
        return np.zeros(img.shape, dtype=np.uint8)
    return np.clip((img - lo) / (hi - lo) * 255.0 + 0.5, 0, 255).astype(np.uint8)


def write_slice_png(img: np.ndarray, path) -> None:
    """8-bit min-max scaled PNG; rows are the slice's second axis."""
    from PIL import Image

    Image.fromarray(_to_u8(img).T, mode="L").save(Path(path), format="PNG")


def write_slice_pgm(img: np.ndarray, path) -> None:
    """8-bit min-max scaled binary PGM (P5)."""
    u8 = _to_u8(img).T
    h, w = u8.shape
    Path(path).write_bytes(b"P5\n%d %d\n255\n" % (w, h) + u8.tobytes())
