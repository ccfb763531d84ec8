import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from minlab.alphabet import Kmer, one_hot, parse_sequence
from minlab.conv import ConvOutput, conv_layer, equivalence_check, maxpool_layer
from minlab.hashing import GaussianFilter, gaussian_score, new_gaussian_filter
from minlab.minimizers import TiePolicy, window_extremum_positions

from conftest import random_sequence


def _conv(values):
    v = np.asarray(values, dtype=np.float64)
    return ConvOutput(v, ~np.isnan(v))


def test_conv_indicator_filter():
    f = GaussianFilter(one_hot(Kmer.from_string("AC")).bits)
    assert conv_layer(parse_sequence("ACAC"), f).scores.tolist() == [2.0, 0.0, 2.0]


def test_conv_zero_filter():
    out = conv_layer(random_sequence(np.random.default_rng(0), 50), GaussianFilter(np.zeros(32)))
    assert len(out) == 43 and (out.scores == 0).all()


def test_conv_matches_scores_bitwise():
    seq = random_sequence(np.random.default_rng(1), 300)
    f = new_gaussian_filter(32, 1)
    out = conv_layer(seq, f)
    want = [gaussian_score(f, one_hot(Kmer(tuple(seq.codes[i:i + 8].tolist())))) for i in range(len(out))]
    assert np.array_equal(out.scores.view(np.uint64), np.array(want).view(np.uint64))


def test_conv_gaps_are_nan():
    out = conv_layer(parse_sequence("ACGNTACG"), new_gaussian_filter(12, 0))
    assert out.valid.tolist() == [True, False, False, False, True, True]
    assert np.isnan(out.scores[1:4]).all() and not np.isnan(out.scores[0])


def test_conv_dimension_mismatch():
    with pytest.raises(ValueError):
        conv_layer(parse_sequence("ACGT"), new_gaussian_filter(10, 0), k=2)


def test_maxpool_examples():
    p = maxpool_layer(_conv([3, 1, 2]), 2)
    assert p.maxima.tolist() == [3, 2] and p.argmax.tolist() == [0, 2]
    whole = maxpool_layer(_conv([3, 1, 5, 2]), 4)
    assert whole.maxima.tolist() == [5] and whole.argmax.tolist() == [2]
    with pytest.raises(ValueError):
        maxpool_layer(_conv([1, 2]), 3)


def test_maxpool_ties():
    c = _conv([1, 4, 4, 0, 4])
    assert maxpool_layer(c, 3, ties="leftmost").argmax.tolist() == [1, 1, 2]
    assert maxpool_layer(c, 3, ties="rightmost").argmax.tolist() == [2, 2, 4]
    assert maxpool_layer(c, 3, ties="prefer-previous").argmax.tolist() == [2, 2, 2]


def test_maxpool_gap_window():
    p = maxpool_layer(_conv([1, np.nan, np.nan, 3]), 2)
    assert p.argmax.tolist() == [0, -1, 3]
    assert np.isnan(p.maxima[1])


@settings(max_examples=50)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=40), st.integers(1, 4), st.sampled_from(["leftmost", "rightmost"]))
def test_stride_w_count_and_subsequence(vals, w, ties):
    c = _conv(vals)
    full = maxpool_layer(c, w, 1, ties)
    strided = maxpool_layer(c, w, w, ties)
    assert len(strided) == (len(vals) - w) // w + 1
    assert np.array_equal(strided.argmax, full.argmax[::w])


@settings(max_examples=50)
@given(st.lists(st.floats(-5, 5), min_size=3, max_size=30), st.integers(1, 3), st.sampled_from(list(TiePolicy)))
def test_maxpool_equals_minpool_of_negation(vals, w, ties):
    v = np.array(vals)
    ok = np.ones(v.size, dtype=bool)
    _, pmax, _ = window_extremum_positions(v, ok, w, ties, maximize=True)
    _, pmin, _ = window_extremum_positions(-v, ok, w, ties, maximize=False)
    assert np.array_equal(pmax, pmin)


@pytest.mark.parametrize("ties", list(TiePolicy))
def test_equivalence_random_cases(ties):
    rng = np.random.default_rng(7)
    for case in range(40):
        seq = random_sequence(rng, 120, 0.02 if case % 2 else 0.0)
        rep = equivalence_check(seq, 8, 19, new_gaussian_filter(32, case), ties)
        assert rep.passed, rep.first_mismatch


@pytest.mark.parametrize("ties,first", [("leftmost", [0, 1, 2]), ("rightmost", [4, 5, 6]), ("prefer-previous", [4, 4, 4])])
def test_equivalence_poly_a(ties, first):
    seq = parse_sequence("A" * 30)
    f = new_gaussian_filter(16, 0)
    rep = equivalence_check(seq, 4, 5, f, ties)
    assert rep.passed
    pooled = maxpool_layer(conv_layer(seq, f), 5, 1, ties)
    assert pooled.argmax[:3].tolist() == first
