import numpy as np
import pytest
from hypothesis import given, strategies as st

from minlab.alphabet import DNA, Alphabet
from minlab.simulation import RepeatSpec, mutate, random_unit, tandem_repeat, uniform_random_sequence


def test_repeat_spec_validation():
    with pytest.raises(ValueError):
        RepeatSpec(0, 10)
    with pytest.raises(ValueError):
        RepeatSpec(11, 10)
    with pytest.raises(ValueError):
        RepeatSpec(2, 10, 1.5)


@given(st.integers(1, 30), st.integers(0, 10_000))
def test_unmutated_repeat_is_periodic(r, seed):
    codes = tandem_repeat(RepeatSpec(r, 200, 0.0, seed)).codes
    assert len(codes) == 200
    assert np.array_equal(codes[r:], codes[:-r])


def test_repeat_length_one_is_homopolymer():
    codes = tandem_repeat(RepeatSpec(1, 50, 0.0, 4)).codes
    assert len(set(codes.tolist())) == 1


def test_deterministic_per_seed():
    a = tandem_repeat(RepeatSpec(6, 300, 0.1, 9))
    assert a == tandem_repeat(RepeatSpec(6, 300, 0.1, 9))
    assert a != tandem_repeat(RepeatSpec(6, 300, 0.1, 10))


def test_fixed_unit():
    unit = random_unit(6, DNA, 1)
    seq = tandem_repeat(RepeatSpec(6, 60, 0.0, 2), unit=unit)
    assert seq.codes[:6].tolist() == unit.tolist()
    with pytest.raises(ValueError):
        tandem_repeat(RepeatSpec(5, 60, 0.0, 2), unit=unit)


def test_mutation_rate_statistics():
    rng = np.random.default_rng(0)
    base = np.zeros(200_000, dtype=np.int16)
    changed = (mutate(base, 0.1, 4, rng, "other") != base).mean()
    assert abs(changed - 0.1) < 0.003
    changed_any = (mutate(base, 0.1, 4, rng, "any") != base).mean()
    assert abs(changed_any - 0.075) < 0.003


@given(st.integers(0, 10_000), st.integers(2, 20))
def test_other_substitution_always_changes(seed, sigma):
    rng = np.random.default_rng(seed)
    base = rng.integers(0, sigma, size=300).astype(np.int16)
    out = mutate(base, 1.0, sigma, rng, "other")
    assert (out != base).all() and out.min() >= 0 and out.max() < sigma


def test_substitution_targets_uniform():
    rng = np.random.default_rng(1)
    out = mutate(np.zeros(30_000, dtype=np.int16), 1.0, 4, rng)
    counts = np.bincount(out, minlength=4)
    assert counts[0] == 0
    assert np.allclose(counts[1:] / 30_000, 1 / 3, atol=0.01)
    with pytest.raises(ValueError):
        mutate(np.zeros(3), 0.1, 4, rng, "swap")


def test_uniform_random_sequence():
    seq = uniform_random_sequence(40_000, DNA, 0)
    assert np.allclose(np.bincount(seq.codes, minlength=4) / 40_000, 0.25, atol=0.01)
    assert len(uniform_random_sequence(10, Alphabet("ACDEFGHIKLMNPQRSTVWY"), 1)) == 10
    with pytest.raises(ValueError):
        uniform_random_sequence(-1)
