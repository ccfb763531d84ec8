"""K-mer orderings: vector multiply-shift hashing and Gaussian dot-product scores.

A ``KmerOrdering`` turns a ``(n, k)`` matrix of symbol codes into scores plus
lexsort keys. Keys are always expressed in *min* sense (smaller is better),
so window selection never needs to know which family produced them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from minlab._random import make_rng
from minlab.alphabet import DNA, Alphabet, OneHotVector, kmer_ranks, one_hot_matrix

WORD_BITS = 64
IN_BITS = 32
OUT_BITS = 32


@dataclass(frozen=True, eq=False)
class MultiplyShiftHasher:
    """``h(x) = ((x . a + b) mod 2**64) >> (64 - out_bits)`` over vectors of 32-bit words."""

    a: np.ndarray
    b: int
    seed: int | None = None
    in_bits: int = IN_BITS
    out_bits: int = OUT_BITS
    word_bits: int = WORD_BITS

    def __post_init__(self):
        if self.word_bits != WORD_BITS:
            raise ValueError("only 64-bit internal words are supported")
        if self.word_bits < self.in_bits + self.out_bits - 1:
            raise ValueError("need word_bits >= in_bits + out_bits - 1")
        a = np.array(self.a, dtype=np.uint64).reshape(-1)
        if a.size < 1:
            raise ValueError("multiply-shift dimension must be >= 1")
        a.flags.writeable = False
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", int(self.b) & ((1 << WORD_BITS) - 1))

    @property
    def d(self) -> int:
        return self.a.shape[0]

    def __call__(self, x):
        return hash_vector(self, x)


def new_multiply_shift(d: int, seed: int) -> MultiplyShiftHasher:
    if d < 1:
        raise ValueError("d must be >= 1")
    rng = make_rng(seed, "multiply-shift")
    a = rng.integers(0, 1 << WORD_BITS, size=d, dtype=np.uint64, endpoint=False)
    b = int(rng.integers(0, 1 << WORD_BITS, dtype=np.uint64, endpoint=False))
    return MultiplyShiftHasher(a, b, seed)


def sample_multiply_shift(n: int, d: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``n`` independent parameter sets at once: ``a`` of shape ``(n, d)``, ``b`` of shape ``(n,)``.

    Used by the Monte-Carlo checks, where constructing a million hashers one
    by one would dominate the run time.
    """
    rng = make_rng(seed, "multiply-shift-batch")
    a = rng.integers(0, 1 << WORD_BITS, size=(n, d), dtype=np.uint64, endpoint=False)
    b = rng.integers(0, 1 << WORD_BITS, size=n, dtype=np.uint64, endpoint=False)
    return a, b


def multiply_shift(x: np.ndarray, a: np.ndarray, b, out_bits: int = OUT_BITS) -> np.ndarray:
    """Wrapping dot product then right shift; broadcasts over leading axes."""
    with np.errstate(over="ignore"):
        acc = np.sum(np.asarray(x, dtype=np.uint64) * a, axis=-1, dtype=np.uint64)
        acc = acc + np.asarray(b, dtype=np.uint64)
    return acc >> np.uint64(WORD_BITS - out_bits)


def hash_vector(h: MultiplyShiftHasher, x):
    """Hash one vector (returns ``int``) or each row of a matrix (returns uint64 array)."""
    arr = np.asarray(x)
    if arr.shape[-1] != h.d:
        raise ValueError(f"dimension mismatch: hasher has d={h.d}, input has {arr.shape[-1]}")
    if arr.size and (arr.min() < 0 or arr.max() >= 1 << h.in_bits):
        raise ValueError(f"inputs must be unsigned {h.in_bits}-bit integers")
    out = multiply_shift(arr, h.a, h.b, h.out_bits)
    return int(out) if arr.ndim == 1 else out


@dataclass(frozen=True, eq=False)
class GaussianFilter:
    weights: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64).reshape(-1)
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @property
    def dim(self) -> int:
        return self.weights.shape[0]

    def negated(self) -> "GaussianFilter":
        return GaussianFilter(-self.weights, self.seed)


def new_gaussian_filter(dim: int, seed: int) -> GaussianFilter:
    if dim < 1:
        raise ValueError("dim must be >= 1")
    return GaussianFilter(make_rng(seed, "gaussian-filter").standard_normal(dim), seed)


def fixed_order_dot(bits: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Row-wise dot product of 0/1 rows with ``weights``, accumulated in ascending column order.

    Adding a ``0 * g`` term never changes an IEEE sum, so the result equals the
    ascending-index sum over the set bits alone, bit for bit. Both the
    convolution layer and the Gaussian ordering go through here.
    """
    bits = np.asarray(bits)
    if bits.shape[-1] != weights.shape[0]:
        raise ValueError(f"dimension mismatch: {bits.shape[-1]} vs filter {weights.shape[0]}")
    acc = np.zeros(bits.shape[:-1], dtype=np.float64)
    for j in range(weights.shape[0]):
        acc += bits[..., j] * weights[j]
    return acc


def gaussian_score(f: GaussianFilter, e: OneHotVector) -> float:
    return float(fixed_order_dot(e.bits, f.weights))


class KmerOrdering:
    """Base class. Subclasses set ``variant`` and ``sense`` and implement ``scores``."""

    variant = "custom"
    sense = "min"

    def scores(self, codes: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def sort_keys(self, codes: np.ndarray, scores: np.ndarray | None = None) -> list[np.ndarray]:
        """Keys for ``np.lexsort`` (last key primary) where ascending means preferred.

        Pass ``scores`` when already computed for ``codes`` to skip rescoring.
        """
        s = self.scores(codes) if scores is None else scores
        return [-s if self.sense == "max" else s]

    def __repr__(self):
        return f"{type(self).__name__}(variant={self.variant!r})"


class MultiplyShiftOrdering(KmerOrdering):
    """Random minimizer order: smallest multiply-shift hash wins, ties by k-mer rank."""

    variant = "multiply-shift-min"
    sense = "min"

    def __init__(self, hasher: MultiplyShiftHasher):
        self.hasher = hasher

    def scores(self, codes):
        return hash_vector(self.hasher, np.atleast_2d(codes))

    def sort_keys(self, codes, scores=None):
        codes = np.atleast_2d(codes)
        h = self.scores(codes) if scores is None else scores
        return [codes[:, j] for j in range(codes.shape[1] - 1, -1, -1)] + [h]


class GaussianOrdering(KmerOrdering):
    """Score = one-hot(k-mer) . filter; the largest score wins."""

    variant = "gaussian-max"
    sense = "max"

    def __init__(self, filt: GaussianFilter, sigma: int = 4):
        self.filter = filt
        self.sigma = sigma

    def scores(self, codes):
        return fixed_order_dot(one_hot_matrix(np.atleast_2d(codes), self.sigma), self.filter.weights)


class LexicographicOrdering(KmerOrdering):
    variant = "lexicographic-min"
    sense = "min"

    def __init__(self, sigma: int = 4):
        self.sigma = sigma

    def scores(self, codes):
        return kmer_ranks(np.atleast_2d(codes), self.sigma)

    def sort_keys(self, codes, scores=None):
        codes = np.atleast_2d(codes)
        return [codes[:, j] for j in range(codes.shape[1] - 1, -1, -1)]


class ScoreOrdering(KmerOrdering):
    """Ordering from an arbitrary vectorised score function (tests, negation checks)."""

    def __init__(self, fn: Callable[[np.ndarray], np.ndarray], sense: str = "min", variant: str = "custom"):
        if sense not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")
        self.fn = fn
        self.sense = sense
        self.variant = variant

    def scores(self, codes):
        return np.asarray(self.fn(np.atleast_2d(codes)))


SCHEMES = ("random", "gaussian", "lex")


def make_ordering(scheme: str, k: int, alphabet: Alphabet = DNA, seed: int = 0) -> KmerOrdering:
    """Build the ordering used by the CLI ``--scheme`` flag."""
    if scheme == "random":
        return MultiplyShiftOrdering(new_multiply_shift(k, seed))
    if scheme == "gaussian":
        return GaussianOrdering(new_gaussian_filter(alphabet.size * k, seed), alphabet.size)
    if scheme == "lex":
        return LexicographicOrdering(alphabet.size)
    raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
