"""Input validation helpers shared by the estimator wrappers."""
from __future__ import annotations

import numbers

import numpy as np

from minlab.alphabet import Alphabet, Sequence, parse_sequence


def check_positive_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def check_sequence(x, alphabet: Alphabet) -> Sequence:
    """Accept a ``Sequence``, a string, or a 1-D array of symbol codes."""
    if isinstance(x, Sequence):
        if x.alphabet != alphabet:
            raise ValueError(f"sequence alphabet {x.alphabet} does not match estimator alphabet {alphabet}")
        return x
    if isinstance(x, str):
        return parse_sequence(x, alphabet)
    arr = np.asarray(x)
    if arr.ndim != 1 or arr.dtype.kind not in "iu":
        raise ValueError("expected a string, Sequence, or 1-D integer array")
    return Sequence(arr, alphabet)


def check_sequences(X, alphabet: Alphabet) -> list[Sequence]:
    """A single string/Sequence is wrapped; otherwise every item is checked."""
    if isinstance(X, (str, Sequence)):
        X = [X]
    out = [check_sequence(x, alphabet) for x in X]
    if not out:
        raise ValueError("empty input: need at least one sequence")
    return out
