"""Windowed minimizer selection, density, adjacency sharing and single-set MinHash."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence as SequenceT

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from minlab.alphabet import Kmer, Sequence, as_code_matrix, kmer_matrix
from minlab.hashing import KmerOrdering


class TiePolicy(str, Enum):
    LEFTMOST = "leftmost"
    RIGHTMOST = "rightmost"
    # keep the previous window's pick while it is still in the window and tied
    # for the extremum, otherwise take the rightmost extremum (robust winnowing)
    PREFER_PREVIOUS = "prefer-previous"


def _dense_rank(keys: list[np.ndarray]) -> np.ndarray:
    """Dense ranks (0 = best) for lexsort keys; equal key tuples share a rank."""
    n = keys[0].shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    order = np.lexsort(keys)
    changed = np.zeros(n, dtype=bool)
    for key in keys:
        sk = key[order]
        changed[1:] |= sk[1:] != sk[:-1]
    ranks = np.empty(n, dtype=np.int64)
    ranks[order] = np.cumsum(changed)
    return ranks


def window_extremum_positions(values, valid, w: int, ties, *, maximize: bool = False, stride: int = 1):
    """Pick one position per window ``[i, i+w)`` for ``i = 0, stride, 2*stride, ...``.

    Returns ``(starts, positions, present)``; ``present`` is False for windows
    with no valid entry (their position is -1).
    """
    ties = TiePolicy(ties)
    values = np.asarray(values)
    valid = np.asarray(valid, dtype=bool)
    n = values.shape[0]
    if w < 1 or stride < 1:
        raise ValueError("w and stride must be >= 1")
    if n < w:
        raise ValueError(f"need at least w={w} entries, got {n}")
    if values.dtype.kind == "f":
        fill = -np.inf if maximize else np.inf
    else:
        info = np.iinfo(values.dtype)
        fill = info.min if maximize else info.max
    filled = np.where(valid, values, fill)
    win = sliding_window_view(filled, w)[::stride]
    starts = np.arange(0, n - w + 1, stride)
    present = sliding_window_view(valid, w)[::stride].any(axis=1)
    pick = np.argmax if maximize else np.argmin

    if ties is TiePolicy.LEFTMOST:
        offs = pick(win, axis=1)
    elif ties is TiePolicy.RIGHTMOST:
        offs = w - 1 - pick(win[:, ::-1], axis=1)
    else:
        right = w - 1 - pick(win[:, ::-1], axis=1)
        best = win[np.arange(win.shape[0]), right]
        offs = right.copy()
        prev = -1
        for t in range(win.shape[0]):
            s = starts[t]
            if present[t] and s <= prev < s + w and filled[prev] == best[t]:
                offs[t] = prev - s
            if present[t]:
                prev = s + offs[t]
    positions = np.where(present, starts + offs, -1)
    return starts, positions, present


@dataclass(frozen=True, eq=False)
class MinimizerSelection:
    """One record per valid window: start index, chosen k-mer position, its codes and score."""

    k: int
    w: int
    windows: np.ndarray
    positions: np.ndarray
    kmers: np.ndarray
    scores: np.ndarray
    n_kmers: int

    def __len__(self):
        return self.windows.shape[0]

    @property
    def distinct_positions(self) -> np.ndarray:
        return np.unique(self.positions)

    def records(self) -> Iterator[tuple[int, int, Kmer]]:
        for i, p, row in zip(self.windows.tolist(), self.positions.tolist(), self.kmers):
            yield i, p, Kmer(tuple(row.tolist()), p)

    def selected_kmers(self) -> list[Kmer]:
        """Distinct selected k-mers, one per distinct position."""
        _, first = np.unique(self.positions, return_index=True)
        return [Kmer(tuple(self.kmers[i].tolist()), int(self.positions[i])) for i in first]


@dataclass(frozen=True)
class DensityReport:
    density: float
    distinct: int
    total_kmers: int
    windows: int


def select_minimizers(seq: Sequence, k: int, w: int, ordering: KmerOrdering,
                      ties=TiePolicy.LEFTMOST) -> MinimizerSelection:
    """Select the best-scoring k-mer in every window of ``w`` consecutive k-mers.

    Windows are indexed by their first k-mer position, ``0 .. (l-k+1)-w``.
    Gap-invalidated k-mers never win; windows holding no valid k-mer are dropped.
    """
    if w < 1:
        raise ValueError("w must be >= 1")
    codes, valid = kmer_matrix(seq, k)
    if codes.shape[0] < w or not valid.any():
        raise ValueError(f"no valid windows: {codes.shape[0]} k-mers for k={k}, w={w}")
    ranks = np.full(codes.shape[0], np.iinfo(np.int64).max, dtype=np.int64)
    vcodes = np.ascontiguousarray(codes[valid])
    vscores = np.asarray(ordering.scores(vcodes))
    ranks[valid] = _dense_rank(ordering.sort_keys(vcodes, vscores))
    starts, positions, present = window_extremum_positions(ranks, valid, w, ties)
    if not present.any():
        raise ValueError("no valid windows: every window overlaps gaps only")
    starts, positions = starts[present], positions[present]
    all_scores = np.zeros(codes.shape[0], dtype=vscores.dtype)
    all_scores[valid] = vscores
    return MinimizerSelection(
        k=k, w=w, windows=starts, positions=positions,
        kmers=np.array(codes[positions]), scores=all_scores[positions],
        n_kmers=int(valid.sum()),
    )


def density(sel: MinimizerSelection) -> DensityReport:
    if len(sel) == 0:
        raise ValueError("empty selection")
    distinct = int(sel.distinct_positions.shape[0])
    return DensityReport(distinct / sel.n_kmers, distinct, sel.n_kmers, len(sel))


def adjacent_share_rate(sel: MinimizerSelection) -> float:
    """Fraction of consecutive window pairs (``i``, ``i+1``) that pick the same position."""
    adjacent = np.diff(sel.windows) == 1
    if not adjacent.any():
        raise ValueError("need at least two consecutive windows")
    same = sel.positions[1:] == sel.positions[:-1]
    return float(same[adjacent].mean())


def minhash_min(kmer_set: SequenceT[Kmer], ordering: KmerOrdering) -> Kmer:
    """Best k-mer of the whole set under ``ordering`` (duplicate values collapse to their first occurrence)."""
    items = list(kmer_set)
    if not items:
        raise ValueError("empty k-mer set")
    codes = as_code_matrix(items)
    _, first = np.unique(codes, axis=0, return_index=True)
    first.sort()
    codes = codes[first]
    best = int(np.lexsort(ordering.sort_keys(codes))[0])
    return items[first[best]]
