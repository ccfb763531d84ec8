"""Hamming-distance statistics for k-mers and minimizer sets."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence as SequenceT

import numpy as np

from minlab.alphabet import Kmer, OneHotVector, as_code_matrix
from minlab.minimizers import MinimizerSelection


def hamming(x: Kmer, y: Kmer) -> int:
    if x.k != y.k:
        raise ValueError(f"k-mer lengths differ: {x.k} vs {y.k}")
    return sum(a != b for a, b in zip(x.codes, y.codes))


def degree(x: OneHotVector, S: SequenceT[OneHotVector]) -> int:
    """Summed L1 distance from ``x`` to every member of ``S`` (``x`` itself contributes 0)."""
    bits = np.array([s.bits for s in S], dtype=np.int16)
    if bits.ndim != 2 or bits.shape[1] != len(x):
        raise ValueError("all vectors must share one dimension")
    return int(np.abs(bits - x.bits.astype(np.int16)).sum())


def degrees(S: SequenceT[OneHotVector]) -> np.ndarray:
    bits = np.array([s.bits for s in S], dtype=np.int16)
    return np.abs(bits[:, None, :] - bits[None, :, :]).sum(axis=(1, 2))


@dataclass(frozen=True)
class DistanceStats:
    mean_to_all: float
    mean_pairwise: float | None
    n_minimizers: int
    n_kmers: int


def _codes(kmers) -> np.ndarray:
    if isinstance(kmers, np.ndarray):
        return kmers
    return as_code_matrix(kmers)


def distance_stats(sel: MinimizerSelection, all_kmers, dedup_values: bool = False) -> DistanceStats:
    """Mean symbol-Hamming distance of the selected k-mers to every k-mer occurrence, and among themselves.

    Minimizers are taken once per distinct selected position; with
    ``dedup_values`` repeated k-mer values among them collapse to one.
    Pairwise mean is over unordered pairs and is ``None`` for fewer than two.
    """
    if len(sel) == 0:
        raise ValueError("empty selection")
    _, first = np.unique(sel.positions, return_index=True)
    mins = sel.kmers[first]
    if dedup_values:
        mins = np.unique(mins, axis=0)
    every = _codes(all_kmers)
    if every.shape[0] == 0:
        raise ValueError("no k-mers to compare against")
    m, n = mins.shape[0], every.shape[0]
    sigma = int(max(mins.max(), every.max())) + 1
    # per-position symbol counts turn both O(m*n*k) sums into exact integer sums
    cnt_all = _column_counts(every, sigma)
    cols = np.arange(mins.shape[1])
    mismatches = int((n - cnt_all[cols, mins]).sum())
    pairwise = None
    if m >= 2:
        cnt_min = _column_counts(mins, sigma)
        pair_mismatches = int((m * m - (cnt_min ** 2).sum(axis=1)).sum())
        pairwise = pair_mismatches / (m * (m - 1))
    return DistanceStats(mismatches / (m * n), pairwise, m, n)


def _column_counts(codes: np.ndarray, sigma: int) -> np.ndarray:
    k = codes.shape[1]
    flat = (np.arange(k) * sigma + codes).ravel()
    return np.bincount(flat, minlength=k * sigma).reshape(k, sigma).astype(np.int64)
