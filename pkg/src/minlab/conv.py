"""Single-filter 1D convolution over one-hot input, max-pooling, and the minimizer equivalence check."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from minlab.alphabet import Alphabet, Sequence, sequence_one_hot, valid_kmer_mask
from minlab.hashing import GaussianFilter, GaussianOrdering, fixed_order_dot
from minlab.minimizers import TiePolicy, select_minimizers, window_extremum_positions


@dataclass(frozen=True, eq=False)
class ConvOutput:
    """Filter response per k-mer position; NaN where the k-mer overlaps a gap."""

    scores: np.ndarray
    valid: np.ndarray

    def __len__(self):
        return self.scores.shape[0]


@dataclass(frozen=True, eq=False)
class PoolOutput:
    starts: np.ndarray
    maxima: np.ndarray
    argmax: np.ndarray

    def __len__(self):
        return self.starts.shape[0]


def conv_layer(seq: Sequence, filt: GaussianFilter, alphabet: Alphabet | None = None, k: int | None = None) -> ConvOutput:
    """Stride-sigma convolution of the sequence's one-hot encoding with ``filt`` (no bias, no activation)."""
    alphabet = alphabet or seq.alphabet
    sigma = alphabet.size
    if k is None:
        k = filt.dim // sigma
    if filt.dim != sigma * k:
        raise ValueError(f"filter dimension {filt.dim} != sigma*k = {sigma * k}")
    n = len(seq) - k + 1
    if n <= 0:
        return ConvOutput(np.zeros(0), np.zeros(0, dtype=bool))
    e = sequence_one_hot(seq)
    patches = sliding_window_view(e, sigma * k)[::sigma]
    scores = fixed_order_dot(patches, filt.weights)
    valid = valid_kmer_mask(seq, k)
    scores[~valid] = np.nan
    return ConvOutput(scores, valid)


def maxpool_layer(c: ConvOutput, w: int, stride: int = 1, ties=TiePolicy.LEFTMOST) -> PoolOutput:
    """Max over windows of ``w`` scores starting at ``0, stride, 2*stride, ...``.

    Windows with no valid score get ``maxima = NaN`` and ``argmax = -1``.
    """
    if len(c) < w:
        raise ValueError(f"need at least w={w} scores, got {len(c)}")
    starts, positions, present = window_extremum_positions(c.scores, c.valid, w, ties, maximize=True, stride=stride)
    maxima = np.full(starts.shape[0], np.nan)
    maxima[present] = c.scores[positions[present]]
    return PoolOutput(starts, maxima, positions)


@dataclass(frozen=True)
class EquivalenceReport:
    passed: bool
    windows: int
    first_mismatch: dict | None = None


def equivalence_check(seq: Sequence, k: int, w: int, filt: GaussianFilter, ties=TiePolicy.LEFTMOST,
                      alphabet: Alphabet | None = None) -> EquivalenceReport:
    """Compare conv + max-pool against Gaussian-max minimizer selection, bit for bit."""
    alphabet = alphabet or seq.alphabet
    pooled = maxpool_layer(conv_layer(seq, filt, alphabet, k), w, 1, ties)
    sel = select_minimizers(seq, k, w, GaussianOrdering(filt, alphabet.size), ties)

    present = pooled.argmax >= 0
    if not np.array_equal(pooled.starts[present], sel.windows):
        return EquivalenceReport(False, len(sel), {"kind": "window-set"})
    got_max = pooled.maxima[present]
    got_pos = pooled.argmax[present]
    same_val = got_max.view(np.uint64) == np.asarray(sel.scores, dtype=np.float64).view(np.uint64)
    same_pos = got_pos == sel.positions
    bad = np.flatnonzero(~(same_val & same_pos))
    if bad.size:
        i = int(bad[0])
        return EquivalenceReport(False, len(sel), {
            "window": int(sel.windows[i]),
            "pool_max": float(got_max[i]), "minimizer_score": float(sel.scores[i]),
            "pool_argmax": int(got_pos[i]), "minimizer_position": int(sel.positions[i]),
        })
    return EquivalenceReport(True, len(sel))
