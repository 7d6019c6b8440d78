"""Target distributions over n-qubit bitstrings, and their sparsity.

Bitstring-to-index convention matches the simulator: qubit 0 is the
most-significant bit, so e.g. the 3-qubit string 100 is index 4.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._rng import SplitMix64


class SampleFileError(ValueError):
    """Raised when a two-column sample file cannot be ingested."""


@dataclass(frozen=True)
class TargetSpec:
    name: str
    n_qubits: int
    distribution: np.ndarray
    seed: Optional[int] = None
    source_path: Optional[str] = None


def sparsity(P) -> float:
    """Fraction of strictly positive entries; exact > 0, no tolerance."""
    p = np.asarray(P, dtype=np.float64)
    return float(np.count_nonzero(p > 0)) / p.size


def uniform_target(n: int) -> TargetSpec:
    if n < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n}")
    dim = 1 << n
    return TargetSpec("Uniform", n, np.full(dim, 1.0 / dim))


def sparse_target(n: int, seed: int) -> TargetSpec:
    """2^(n/2) distinct indices, chosen by the seeded RNG, at 2^(-n/2) each."""
    if n < 2 or n % 2 != 0:
        raise ValueError(f"sparse target needs even n >= 2, got {n}")
    dim = 1 << n
    k = 1 << (n // 2)
    # partial Fisher-Yates: first k entries of a seeded shuffle of range(dim)
    rng = SplitMix64(seed)
    pool = list(range(dim))
    for i in range(k):
        j = i + rng.randbelow(dim - i)
        pool[i], pool[j] = pool[j], pool[i]
    dist = np.zeros(dim)
    dist[pool[:k]] = 1.0 / k
    return TargetSpec("Sparse", n, dist, seed=seed)


def bell_ghz_target(n: int) -> TargetSpec:
    if n < 2:
        raise ValueError(f"Bell/GHZ target needs n >= 2, got {n}")
    dim = 1 << n
    dist = np.zeros(dim)
    dist[0] = 0.5
    dist[dim - 1] = 0.5
    return TargetSpec("Bell" if n == 2 else "GHZ", n, dist)


def w_target() -> TargetSpec:
    """Equal weight on the three one-hot 3-bit strings 001, 010, 100."""
    dist = np.zeros(8)
    dist[[1, 2, 4]] = 1.0 / 3.0
    return TargetSpec("W", 3, dist)


def _parse_rows(path: str):
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.replace(",", " ").split()
            if len(parts) < 2:
                raise SampleFileError(f"{path}:{lineno}: expected two columns, got {len(parts)}")
            try:
                rows.append((float(parts[0]), float(parts[1])))
            except ValueError:
                raise SampleFileError(f"{path}:{lineno}: non-numeric value in {text!r}") from None
    if not rows:
        raise SampleFileError(f"{path}: no data rows")
    return np.asarray(rows, dtype=np.float64)


def _bin_column(col: np.ndarray, n_bins: int) -> np.ndarray:
    lo = col.min()
    hi = col.max()
    if hi == lo:
        return np.zeros(col.size, dtype=np.int64)
    bins = np.floor((col - lo) / (hi - lo) * n_bins).astype(np.int64)
    return np.minimum(bins, n_bins - 1)  # top edge belongs to the last bin


def make_target(
    name: str, n: int, seed: Optional[int] = None, path: Optional[str] = None
) -> TargetSpec:
    """Dispatch by target name: uniform, sparse, bell, ghz, w, hep."""
    key = name.strip().lower()
    if key == "uniform":
        return uniform_target(n)
    if key == "sparse":
        return sparse_target(n, 0 if seed is None else seed)
    if key in ("bell", "ghz"):
        return bell_ghz_target(n)
    if key == "w":
        if n != 3:
            raise ValueError(f"W target is defined on 3 qubits, got n={n}")
        return w_target()
    if key == "hep":
        if path is None:
            raise ValueError("HEP target needs a sample file path")
        return hep_target_from_samples(path, n)
    raise ValueError(f"unknown target {name!r}")


def hep_target_from_samples(path: str, n: int) -> TargetSpec:
    """Joint histogram of a two-variable sample file.

    Each variable gets 2^(n/2) uniform-width bins over its own [min, max]
    range; the joint index packs variable 1 into the high bits.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError(f"two-variable histogram needs even n >= 2, got {n}")
    rows = _parse_rows(path)
    half = n // 2
    n_bins = 1 << half
    b1 = _bin_column(rows[:, 0], n_bins)
    b2 = _bin_column(rows[:, 1], n_bins)
    idx = (b1 << half) | b2
    dist = np.bincount(idx, minlength=1 << n).astype(np.float64)
    dist /= dist.sum()
    return TargetSpec("HEP", n, dist, source_path=os.fspath(path))
