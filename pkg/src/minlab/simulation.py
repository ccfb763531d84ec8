"""Synthetic inputs: mutated tandem repeats and uniform random sequences."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from minlab._random import make_rng
from minlab.alphabet import DNA, Alphabet, Sequence

SUBSTITUTION_MODES = ("other", "any")


@dataclass(frozen=True)
class RepeatSpec:
    repeat_length: int
    length: int
    mutation_rate: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.repeat_length < 1:
            raise ValueError("repeat_length must be >= 1")
        if self.repeat_length > self.length:
            raise ValueError("repeat_length must not exceed length")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must lie in [0, 1]")


def mutate(codes: np.ndarray, rate: float, sigma: int, rng: np.random.Generator,
           substitution: str = "other") -> np.ndarray:
    """Substitute each position independently with probability ``rate``.

    ``"other"`` draws uniformly from the sigma-1 different symbols, so every
    hit is a realised change; ``"any"`` draws from all sigma symbols.
    """
    if substitution not in SUBSTITUTION_MODES:
        raise ValueError(f"substitution must be one of {SUBSTITUTION_MODES}")
    out = np.array(codes, dtype=np.int16)
    hit = rng.random(out.shape[0]) < rate
    n_hit = int(hit.sum())
    if substitution == "other":
        out[hit] = (out[hit] + rng.integers(1, sigma, size=n_hit)) % sigma
    else:
        out[hit] = rng.integers(0, sigma, size=n_hit)
    return out


def tandem_repeat(spec: RepeatSpec, alphabet: Alphabet = DNA, substitution: str = "other",
                  unit=None) -> Sequence:
    """Tile a random unit of ``repeat_length`` symbols to ``length``, then point-mutate.

    Pass ``unit`` (codes) to reuse a fixed repeat unit instead of drawing one.
    """
    rng = make_rng(spec.seed, "tandem-repeat")
    sigma = alphabet.size
    if unit is None:
        unit = rng.integers(0, sigma, size=spec.repeat_length)
    unit = np.asarray(unit, dtype=np.int16)
    if unit.shape[0] != spec.repeat_length:
        raise ValueError("unit length does not match repeat_length")
    tiled = np.resize(unit, spec.length)
    return Sequence(mutate(tiled, spec.mutation_rate, sigma, rng, substitution), alphabet)


def random_unit(repeat_length: int, alphabet: Alphabet, seed: int) -> np.ndarray:
    return make_rng(seed, "repeat-unit").integers(0, alphabet.size, size=repeat_length).astype(np.int16)


def uniform_random_sequence(length: int, alphabet: Alphabet = DNA, seed: int = 0) -> Sequence:
    if length < 0:
        raise ValueError("length must be >= 0")
    rng = make_rng(seed, "uniform-sequence")
    return Sequence(rng.integers(0, alphabet.size, size=length), alphabet)
