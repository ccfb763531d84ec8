"""Deterministic random streams.

Every random draw in the package comes from a Philox generator keyed by a
master seed plus a tuple of stream identifiers, so trials, filters and
hashers get independent streams that do not depend on execution order.
"""
import zlib

import numpy as np

_MASK64 = (1 << 64) - 1


def _stream_word(part):
    if isinstance(part, str):
        return zlib.crc32(part.encode("utf-8"))
    if isinstance(part, (int, np.integer)):
        return int(part) & _MASK64
    raise TypeError(f"stream id must be int or str, got {type(part).__name__}")


def seed_sequence(seed, *stream):
    return np.random.SeedSequence(int(seed) & _MASK64, spawn_key=tuple(_stream_word(p) for p in stream))


def make_rng(seed, *stream) -> np.random.Generator:
    """Return a counter-based generator for ``(seed, *stream)``."""
    return np.random.Generator(np.random.Philox(seed_sequence(seed, *stream)))


def derive_seed(seed, *stream) -> int:
    """Derive a 64-bit child seed for a named sub-stream."""
    lo, hi = seed_sequence(seed, *stream).generate_state(2, dtype=np.uint32)
    return (int(hi) << 32) | int(lo)
