"""Categorical sequences, k-mers and one-hot encoding.

Symbols are stored as small integer codes. Characters outside the alphabet
become ``GAP`` (-1); any k-mer overlapping a gap is invalid and is skipped by
every downstream selection and count.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

GAP = -1
GAP_CHAR = "?"


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        if any(len(s) != 1 for s in symbols):
            raise ValueError("alphabet symbols must be single characters")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in alphabet {symbols!r}")
        if len(symbols) < 2:
            raise ValueError("alphabet needs at least two symbols")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "index", {s: i for i, s in enumerate(symbols)})

    @property
    def size(self) -> int:
        return len(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return "".join(self.symbols)


DNA = Alphabet("ACGT")


class Sequence:
    """Immutable array of symbol codes; ``GAP`` marks non-alphabet positions."""

    __slots__ = ("codes", "alphabet")

    def __init__(self, codes, alphabet: Alphabet = DNA):
        arr = np.array(codes, dtype=np.int16).reshape(-1)
        if arr.size and (arr.max() >= alphabet.size or arr.min() < GAP):
            raise ValueError(f"symbol codes must lie in [0, {alphabet.size}) or be GAP")
        arr.flags.writeable = False
        object.__setattr__(self, "codes", arr)
        object.__setattr__(self, "alphabet", alphabet)

    def __setattr__(self, name, value):
        raise AttributeError("Sequence is immutable")

    def __reduce__(self):
        return (Sequence, (np.array(self.codes), self.alphabet))

    def __len__(self):
        return self.codes.shape[0]

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Sequence(self.codes[item], self.alphabet)
        return int(self.codes[item])

    def __eq__(self, other):
        if not isinstance(other, Sequence):
            return NotImplemented
        return self.alphabet == other.alphabet and np.array_equal(self.codes, other.codes)

    __hash__ = None

    @property
    def gaps(self) -> np.ndarray:
        return self.codes == GAP

    def __str__(self):
        sym = self.alphabet.symbols
        return "".join(GAP_CHAR if c == GAP else sym[c] for c in self.codes.tolist())

    def __repr__(self):
        text = str(self)
        if len(text) > 40:
            text = text[:37] + "..."
        return f"Sequence({text!r}, alphabet={str(self.alphabet)!r})"


@dataclass(frozen=True)
class Kmer:
    codes: tuple[int, ...]
    position: int = 0

    def __post_init__(self):
        object.__setattr__(self, "codes", tuple(int(c) for c in self.codes))
        if len(self.codes) < 1:
            raise ValueError("k-mer length must be >= 1")

    @property
    def k(self) -> int:
        return len(self.codes)

    def to_string(self, alphabet: Alphabet = DNA) -> str:
        return "".join(alphabet.symbols[c] for c in self.codes)

    @classmethod
    def from_string(cls, text: str, alphabet: Alphabet = DNA, position: int = 0) -> "Kmer":
        return cls(tuple(alphabet.index[ch] for ch in text.upper()), position)


@dataclass(frozen=True, eq=False)
class OneHotVector:
    bits: np.ndarray
    sigma: int

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=np.uint8)
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    @property
    def m(self) -> int:
        return int(self.bits.sum())

    def __len__(self):
        return self.bits.shape[0]

    def __eq__(self, other):
        if not isinstance(other, OneHotVector):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash(self.bits.tobytes())

    def l1(self, other: "OneHotVector") -> int:
        if len(self) != len(other):
            raise ValueError("one-hot vectors differ in dimension")
        return int(np.abs(self.bits.astype(np.int16) - other.bits).sum())

    @classmethod
    def from_bits(cls, text: str, sigma: int = 2) -> "OneHotVector":
        """Build from a bit string such as ``"1010"`` (handy for set-level tests)."""
        return cls(np.array([int(ch) for ch in text], dtype=np.uint8), sigma)


def parse_sequence(text: str, alphabet: Alphabet = DNA, fold_case: bool = True) -> Sequence:
    """Map characters to codes; anything outside ``alphabet`` becomes a gap."""
    if not isinstance(alphabet, Alphabet) or alphabet.size == 0:
        raise ValueError("an alphabet with at least one symbol is required")
    if fold_case and all(s.upper() == s for s in alphabet.symbols):
        text = text.upper()
    if all(ord(s) < 128 for s in alphabet.symbols):
        table = bytearray([255]) * 256
        for s, i in alphabet.index.items():
            table[ord(s)] = i
        raw = np.frombuffer(text.encode("ascii", errors="replace").translate(table), dtype=np.uint8)
        codes = np.where(raw == 255, GAP, raw.astype(np.int16))
    else:
        codes = np.fromiter((alphabet.index.get(ch, GAP) for ch in text), dtype=np.int16, count=len(text))
    return Sequence(codes, alphabet)


def valid_kmer_mask(seq: Sequence, k: int) -> np.ndarray:
    """Boolean mask over the ``l-k+1`` k-mer start positions (False where a gap overlaps)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = len(seq) - k + 1
    if n <= 0:
        return np.zeros(0, dtype=bool)
    gap_run = np.convolve(seq.gaps.astype(np.int32), np.ones(k, dtype=np.int32), mode="valid")
    return gap_run == 0


def kmer_matrix(seq: Sequence, k: int) -> tuple[np.ndarray, np.ndarray]:
    """All ``l-k+1`` k-mers as a ``(n, k)`` code matrix plus the validity mask.

    Rows for invalid (gap-overlapping) k-mers are kept so indices line up with
    positions; callers filter with the mask.
    """
    valid = valid_kmer_mask(seq, k)
    if valid.size == 0:
        return np.zeros((0, k), dtype=np.int16), valid
    return sliding_window_view(seq.codes, k), valid


def kmers(seq: Sequence, k: int) -> list[Kmer]:
    """Valid k-mers of ``seq`` in position order."""
    mat, valid = kmer_matrix(seq, k)
    return [Kmer(tuple(mat[i].tolist()), int(i)) for i in np.flatnonzero(valid)]


def one_hot(kmer: Kmer, alphabet: Alphabet = DNA) -> OneHotVector:
    sigma = alphabet.size
    if any(c < 0 or c >= sigma for c in kmer.codes):
        raise ValueError(f"k-mer codes {kmer.codes} invalid for alphabet of size {sigma}")
    bits = np.zeros(sigma * kmer.k, dtype=np.uint8)
    bits[sigma * np.arange(kmer.k) + np.asarray(kmer.codes)] = 1
    return OneHotVector(bits, sigma)


def one_hot_matrix(codes: np.ndarray, sigma: int) -> np.ndarray:
    """Row-wise one-hot encoding of a ``(n, k)`` code matrix; block layout position-major."""
    codes = np.asarray(codes)
    n, k = codes.shape
    out = np.zeros((n, k, sigma), dtype=np.uint8)
    rows = np.arange(n)[:, None]
    cols = np.arange(k)[None, :]
    ok = codes >= 0
    out[np.broadcast_to(rows, codes.shape)[ok], np.broadcast_to(cols, codes.shape)[ok], codes[ok]] = 1
    return out.reshape(n, k * sigma)


def sequence_one_hot(seq: Sequence) -> np.ndarray:
    """Flat one-hot encoding of a whole sequence (length ``sigma * l``); gap blocks are all zero."""
    return one_hot_matrix(seq.codes[None, :], seq.alphabet.size)[0]


def kmer_rank(kmer: Kmer, alphabet: Alphabet = DNA) -> int:
    """Base-sigma integer of the k-mer, leftmost symbol most significant.

    Raises ``OverflowError`` when ``sigma**k`` does not fit an unsigned 64-bit word.
    """
    sigma = alphabet.size
    if sigma ** kmer.k > 1 << 64:
        raise OverflowError(f"sigma^k = {sigma}^{kmer.k} exceeds 64 bits")
    value = 0
    for c in kmer.codes:
        value = value * sigma + c
    return value


def kmer_ranks(codes: np.ndarray, sigma: int) -> np.ndarray:
    """Vectorised ``kmer_rank`` over a ``(n, k)`` code matrix (uint64)."""
    codes = np.asarray(codes)
    k = codes.shape[1]
    if sigma ** k > 1 << 64:
        raise OverflowError(f"sigma^k = {sigma}^{k} exceeds 64 bits")
    out = np.zeros(codes.shape[0], dtype=np.uint64)
    s = np.uint64(sigma)
    for j in range(k):
        out = out * s + codes[:, j].astype(np.uint64)
    return out


def as_code_matrix(items: Iterable) -> np.ndarray:
    """Stack k-mers (``Kmer`` objects or code sequences) into a ``(n, k)`` int16 matrix."""
    rows = [it.codes if isinstance(it, Kmer) else tuple(it) for it in items]
    if not rows:
        return np.zeros((0, 0), dtype=np.int16)
    if len({len(r) for r in rows}) != 1:
        raise ValueError("k-mers of different lengths")
    return np.array(rows, dtype=np.int16)
