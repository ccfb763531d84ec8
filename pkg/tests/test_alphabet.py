import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from minlab.alphabet import (
    DNA, GAP, Alphabet, Kmer, OneHotVector, Sequence, kmer_matrix, kmer_rank, kmer_ranks, kmers, one_hot,
    one_hot_matrix, parse_sequence, sequence_one_hot,
)

dna_text = st.text(alphabet="ACGT", max_size=60)


def test_parse_identity():
    assert parse_sequence("ACGT", DNA).codes.tolist() == [0, 1, 2, 3]


def test_parse_empty():
    seq = parse_sequence("", DNA)
    assert len(seq) == 0


def test_parse_gap_marks_and_invalidates_kmers():
    seq = parse_sequence("ACNGT", DNA)
    assert seq.codes.tolist() == [0, 1, GAP, 2, 3]
    assert [k.position for k in kmers(seq, 2)] == [0, 3]
    assert kmers(seq, 3) == []


def test_parse_folds_case():
    assert parse_sequence("acgT", DNA) == parse_sequence("ACGT", DNA)
    assert str(parse_sequence("acgNt")) == "ACG?T"


def test_alphabet_errors():
    with pytest.raises(ValueError):
        Alphabet("")
    with pytest.raises(ValueError):
        Alphabet("AA")
    with pytest.raises(ValueError):
        parse_sequence("ACGT", alphabet=None)


def test_alphabet_bijection():
    ab = Alphabet("ACDEFGHIKLMNPQRSTVWY")
    assert ab.size == 20
    assert sorted(ab.index.values()) == list(range(20))
    assert parse_sequence("WYA", ab).codes.tolist() == [18, 19, 0]


def test_sequence_rejects_bad_codes():
    with pytest.raises(ValueError):
        Sequence([0, 4], DNA)


def test_sequence_is_immutable():
    seq = parse_sequence("ACGT")
    with pytest.raises(ValueError):
        seq.codes[0] = 2
    with pytest.raises(AttributeError):
        seq.codes = None


def test_kmers_examples():
    got = kmers(parse_sequence("ACGT"), 2)
    assert [k.to_string() for k in got] == ["AC", "CG", "GT"]
    assert [k.position for k in got] == [0, 1, 2]
    assert kmers(parse_sequence("AC"), 3) == []


def test_kmers_count_for_1007():
    seq = Sequence(np.random.default_rng(0).integers(0, 4, 1007))
    assert len(kmers(seq, 8)) == 1000


@given(dna_text, st.integers(1, 10))
def test_kmer_count_gap_free(text, k):
    assert len(kmers(parse_sequence(text), k)) == max(0, len(text) - k + 1)


def test_one_hot_examples():
    assert np.flatnonzero(one_hot(Kmer.from_string("AA")).bits).tolist() == [0, 4]
    assert len(one_hot(Kmer.from_string("AA"))) == 8
    assert np.flatnonzero(one_hot(Kmer.from_string("CT")).bits).tolist() == [1, 7]


@given(st.text(alphabet="ACGT", min_size=1, max_size=12))
def test_one_hot_block_layout(text):
    km = Kmer.from_string(text)
    e = one_hot(km)
    assert e.m == km.k
    blocks = e.bits.reshape(km.k, 4)
    assert blocks.sum(axis=1).tolist() == [1] * km.k
    assert blocks.argmax(axis=1).tolist() == list(km.codes)


def _all_kmers(k, sigma=4):
    return [Kmer(c) for c in itertools.product(range(sigma), repeat=k)]


def test_one_hot_injective_over_all_4mers():
    vecs = {one_hot(km).bits.tobytes() for km in _all_kmers(4)}
    assert len(vecs) == 256


def test_l1_is_twice_hamming_all_4mer_pairs():
    codes = np.array([km.codes for km in _all_kmers(4)])
    E = one_hot_matrix(codes, 4).astype(np.int16)
    l1 = np.abs(E[:, None, :] - E[None, :, :]).sum(axis=2)
    ham = (codes[:, None, :] != codes[None, :, :]).sum(axis=2)
    assert np.array_equal(l1, 2 * ham)


def test_one_hot_matrix_matches_one_hot():
    codes = np.random.default_rng(1).integers(0, 4, size=(20, 6))
    E = one_hot_matrix(codes, 4)
    for row, c in zip(E, codes):
        assert np.array_equal(row, one_hot(Kmer(c)).bits)


def test_sequence_one_hot_gap_block_is_zero():
    e = sequence_one_hot(parse_sequence("ANC"))
    assert e.tolist() == [1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0]


def test_one_hot_rejects_bad_codes():
    with pytest.raises(ValueError):
        one_hot(Kmer((0, 5)))


def test_kmer_rank_examples():
    assert kmer_rank(Kmer.from_string("AA")) == 0
    assert kmer_rank(Kmer.from_string("AC")) == 1
    assert kmer_rank(Kmer.from_string("CA")) == 4


def test_kmer_rank_injective_and_vectorised():
    all3 = _all_kmers(3)
    ranks = [kmer_rank(k) for k in all3]
    assert ranks == list(range(64))
    assert kmer_ranks(np.array([k.codes for k in all3]), 4).tolist() == ranks


def test_kmer_rank_overflow():
    assert kmer_rank(Kmer((3,) * 32)) == 2**64 - 1
    with pytest.raises(OverflowError):
        kmer_rank(Kmer((0,) * 33))


def test_kmer_matrix_keeps_positions():
    mat, valid = kmer_matrix(parse_sequence("ACNGTA"), 2)
    assert mat.shape == (5, 2)
    assert valid.tolist() == [True, False, False, True, True]


@settings(max_examples=50)
@given(dna_text, dna_text)
def test_one_hot_equal_iff_kmers_equal(a, b):
    if len(a) != len(b) or not a:
        return
    same = one_hot(Kmer.from_string(a)) == one_hot(Kmer.from_string(b))
    assert same == (a == b)


def test_onehot_from_bits():
    v = OneHotVector.from_bits("1010")
    assert v.m == 2 and len(v) == 4
    assert v.l1(OneHotVector.from_bits("0011")) == 2
