"""Binary dataset files of (graph weights, property label) records.

Little-endian layout:

    magic   4 bytes  b"QGDD"
    version u32      1
    prop    u8       0 = ghz_fidelity, 1 = w_fidelity, 2 = mean_purity
    n       u64      record count
    seed    u64      generation seed
    records n * (24 float32 inputs + 1 float32 label)

Labels are stored float32; generation computes them in float64.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .states import Property, property_value_batch

MAGIC = b"QGDD"
VERSION = 1
_HEADER = struct.Struct("<4sIBQQ")

PROPERTY_TAGS = {Property.GHZ_FIDELITY: 0, Property.W_FIDELITY: 1,
                 Property.MEAN_PURITY: 2}
_TAG_PROPERTIES = {v: k for k, v in PROPERTY_TAGS.items()}


class DatasetReadError(ValueError):
    """Corrupt, truncated, or non-dataset file."""


class DatasetVersionError(DatasetReadError):
    """Dataset written with an unsupported format version."""


@dataclass
class Dataset:
    prop: Property
    inputs: np.ndarray   # (n, 24) float32
    labels: np.ndarray   # (n,) float32
    seed: int

    def __len__(self):
        return len(self.labels)


def generate_dataset(prop, n, cap=0.5, seed=0, chunk=20000):
    """Rejection-sample n (graph, label) records with label < cap.

    cap=None disables filtering (evaluation sets). Degenerate graphs are
    always rejected. Deterministic per seed. Aborts if the sustained
    acceptance rate drops below 0.1%.
    """
    prop = Property(prop)
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    inputs, labels = [], []
    drawn = kept = 0
    while sum(len(x) for x in inputs) < n:
        w = rng.uniform(-1.0, 1.0, (chunk, 24))
        values, valid = property_value_batch(w, prop)
        mask = valid if cap is None else valid & (values < cap)
        inputs.append(w[mask])
        labels.append(values[mask])
        drawn += chunk
        kept += int(mask.sum())
        if drawn >= 10 * chunk and kept < 0.001 * drawn:
            raise RuntimeError(
                f"rejection rate above 99.9% sustained ({kept}/{drawn} kept); "
                f"cap {cap} looks unattainable for {prop.value}")
    x = np.concatenate(inputs)[:n].astype(np.float32)
    y = np.concatenate(labels)[:n].astype(np.float32)
    return Dataset(prop, x, y, seed)


def write_dataset(ds, path):
    header = _HEADER.pack(MAGIC, VERSION, PROPERTY_TAGS[ds.prop], len(ds), ds.seed)
    records = np.hstack([ds.inputs.astype("<f4"),
                         ds.labels.astype("<f4")[:, None]])
    Path(path).write_bytes(header + records.tobytes())


def read_dataset(path):
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise DatasetReadError(f"{path}: too short for a dataset header")
    magic, version, tag, n, seed = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise DatasetReadError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise DatasetVersionError(
            f"{path}: dataset version {version}, reader supports {VERSION}")
    if tag not in _TAG_PROPERTIES:
        raise DatasetReadError(f"{path}: unknown property tag {tag}")
    expected = _HEADER.size + n * 25 * 4
    if len(data) != expected:
        raise DatasetReadError(
            f"{path}: size {len(data)} != expected {expected} for {n} records")
    records = np.frombuffer(data, dtype="<f4", offset=_HEADER.size).reshape(n, 25)
    return Dataset(_TAG_PROPERTIES[tag], records[:, :24].copy(),
                   records[:, 24].copy(), seed)
