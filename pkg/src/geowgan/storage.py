"""Binary tensor containers for tiles, filter banks, and checkpoints.

Two fixed layouts, both little-endian:

* single-tensor container (tile stacks, filter banks):
  magic ``GWTENSR1`` | version u32 | dtype u32 | ndim u32 | shape u64*ndim |
  band count u32 | per band (u32 length + utf-8 bytes) | raw payload
* checkpoint container:
  magic ``GWCKPT01`` | version u32 | epoch u32 | snapshot u64+utf-8 |
  tensor count u32 | per tensor (name u32+utf-8, dtype u32, ndim u32,
  shape u64*ndim, raw payload)

Round trips are bit exact; tile payloads are stored as float32.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import CorruptHeader, ShapeMismatch, VersionMismatch

TENSOR_MAGIC = b"GWTENSR1"
CHECKPOINT_MAGIC = b"GWCKPT01"
FORMAT_VERSION = 1

_DTYPE_CODES = {0: np.dtype("<f4"), 1: np.dtype("<f8"), 2: np.dtype("<i8")}
_CODE_FOR_KIND = {("f", 4): 0, ("f", 8): 1, ("i", 8): 2}


def _dtype_code(arr: np.ndarray) -> int:
    key = (arr.dtype.kind, arr.dtype.itemsize)
    if key not in _CODE_FOR_KIND:
        raise ValueError(f"unsupported dtype {arr.dtype}")
    return _CODE_FOR_KIND[key]


def _read_exact(f, n: int, what: str) -> bytes:
    data = f.read(n)
    if len(data) != n:
        raise CorruptHeader(f"truncated file while reading {what}")
    return data


def _write_str(f, s: str) -> None:
    raw = s.encode("utf-8")
    f.write(struct.pack("<I", len(raw)))
    f.write(raw)


def _read_str(f, what: str) -> str:
    (n,) = struct.unpack("<I", _read_exact(f, 4, what))
    return _read_exact(f, n, what).decode("utf-8")


def _write_array(f, arr: np.ndarray) -> None:
    code = _dtype_code(arr)
    f.write(struct.pack("<I", code))
    f.write(struct.pack("<I", arr.ndim))
    f.write(struct.pack(f"<{arr.ndim}Q", *arr.shape))
    f.write(np.ascontiguousarray(arr, dtype=_DTYPE_CODES[code]).tobytes())


def _read_array_header(f, what: str):
    (code,) = struct.unpack("<I", _read_exact(f, 4, what))
    if code not in _DTYPE_CODES:
        raise CorruptHeader(f"unknown dtype code {code} in {what}")
    (ndim,) = struct.unpack("<I", _read_exact(f, 4, what))
    shape = struct.unpack(f"<{ndim}Q", _read_exact(f, 8 * ndim, what))
    return _DTYPE_CODES[code], tuple(int(s) for s in shape)


def _read_array(f, what: str) -> np.ndarray:
    dtype, shape = _read_array_header(f, what)
    n_bytes = int(np.prod(shape)) * dtype.itemsize if shape else dtype.itemsize
    data = _read_exact(f, n_bytes, f"{what} payload")
    return np.frombuffer(data, dtype=dtype).reshape(shape).copy()


def write_tensor(path, array: np.ndarray, band_names: tuple[str, ...] = ()) -> None:
    """Write one array (tiles are float32) with optional band names."""
    path = Path(path)
    with open(path, "wb") as f:
        f.write(TENSOR_MAGIC)
        f.write(struct.pack("<I", FORMAT_VERSION))
        code = _dtype_code(np.asarray(array))
        f.write(struct.pack("<I", code))
        arr = np.ascontiguousarray(array, dtype=_DTYPE_CODES[code])
        f.write(struct.pack("<I", arr.ndim))
        f.write(struct.pack(f"<{arr.ndim}Q", *arr.shape))
        f.write(struct.pack("<I", len(band_names)))
        for name in band_names:
            _write_str(f, name)
        f.write(arr.tobytes())


def read_tensor_header(path) -> tuple[np.dtype, tuple[int, ...], tuple[str, ...], int]:
    """Parse a single-tensor header; returns (dtype, shape, bands, payload offset)."""
    with open(path, "rb") as f:
        magic = _read_exact(f, 8, "magic")
        if magic != TENSOR_MAGIC:
            raise CorruptHeader(f"bad magic {magic!r}; not a tensor container")
        (version,) = struct.unpack("<I", _read_exact(f, 4, "version"))
        if version != FORMAT_VERSION:
            raise VersionMismatch(f"container version {version}, expected {FORMAT_VERSION}")
        (code,) = struct.unpack("<I", _read_exact(f, 4, "dtype"))
        if code not in _DTYPE_CODES:
            raise CorruptHeader(f"unknown dtype code {code}")
        (ndim,) = struct.unpack("<I", _read_exact(f, 4, "ndim"))
        shape = struct.unpack(f"<{ndim}Q", _read_exact(f, 8 * ndim, "shape"))
        (n_bands,) = struct.unpack("<I", _read_exact(f, 4, "band count"))
        bands = tuple(_read_str(f, "band name") for _ in range(n_bands))
        offset = f.tell()
    return _DTYPE_CODES[code], tuple(int(s) for s in shape), bands, offset


def read_tensor(path, mmap: bool = False) -> tuple[np.ndarray, tuple[str, ...]]:
    """Read back a single-tensor container; `mmap=True` maps the payload read-only."""
    dtype, shape, bands, offset = read_tensor_header(path)
    n_bytes = int(np.prod(shape)) * dtype.itemsize
    if mmap:
        arr = np.memmap(path, dtype=dtype, mode="r", offset=offset, shape=shape)
        return arr, bands
    with open(path, "rb") as f:
        f.seek(offset)
        data = _read_exact(f, n_bytes, "payload")
    return np.frombuffer(data, dtype=dtype).reshape(shape).copy(), bands


def write_checkpoint(path, tensors: dict[str, np.ndarray], snapshot: str, epoch: int) -> None:
    """Write named parameter tensors plus the config snapshot text."""
    path = Path(path)
    with open(path, "wb") as f:
        f.write(CHECKPOINT_MAGIC)
        f.write(struct.pack("<I", FORMAT_VERSION))
        f.write(struct.pack("<I", epoch))
        raw = snapshot.encode("utf-8")
        f.write(struct.pack("<Q", len(raw)))
        f.write(raw)
        f.write(struct.pack("<I", len(tensors)))
        for name, arr in tensors.items():
            _write_str(f, name)
            _write_array(f, np.asarray(arr))


def read_checkpoint(path) -> tuple[dict[str, np.ndarray], str, int]:
    """Read back (tensors, snapshot, epoch) from a checkpoint container."""
    with open(path, "rb") as f:
        magic = _read_exact(f, 8, "magic")
        if magic != CHECKPOINT_MAGIC:
            raise CorruptHeader(f"bad magic {magic!r}; not a checkpoint")
        (version,) = struct.unpack("<I", _read_exact(f, 4, "version"))
        if version != FORMAT_VERSION:
            raise VersionMismatch(f"checkpoint version {version}, expected {FORMAT_VERSION}")
        (epoch,) = struct.unpack("<I", _read_exact(f, 4, "epoch"))
        (snap_len,) = struct.unpack("<Q", _read_exact(f, 8, "snapshot length"))
        snapshot = _read_exact(f, snap_len, "snapshot").decode("utf-8")
        (count,) = struct.unpack("<I", _read_exact(f, 4, "tensor count"))
        tensors: dict[str, np.ndarray] = {}
        for _ in range(count):
            name = _read_str(f, "tensor name")
            tensors[name] = _read_array(f, f"tensor {name!r}")
    return tensors, snapshot, epoch


def expect_shape(arr: np.ndarray, shape: tuple[int, ...], what: str) -> None:
    """Raise ShapeMismatch unless `arr.shape` equals `shape` (-1 wildcards ok)."""
    if len(arr.shape) != len(shape) or any(
        e != -1 and a != e for a, e in zip(arr.shape, shape)
    ):
        raise ShapeMismatch(f"{what}: expected shape {shape}, got {arr.shape}")
