import io
import itertools

import numpy as np
import pytest

from minlab.alphabet import Kmer, OneHotVector, one_hot
from minlab.validation import (
    Report, check_degree_monotonicity, conditional_expectation_profile, equivalence_suite,
    estimate_max_probabilities, expected_density_check, finite_density_target, jaccard, jaccard_collision_rate,
    random_distinct_kmers, run_suite, write_report_csv,
)


def vecs(*bits):
    return [OneHotVector.from_bits(b) for b in bits]


def test_two_vectors_split_evenly():
    est = estimate_max_probabilities(vecs("1100", "0011"), 100_000, seed=1)
    assert np.allclose(est.probabilities, 0.5, atol=0.01)
    assert est.ties_discarded == 0


def test_singletons_uniform():
    S = [OneHotVector(np.eye(4, dtype=np.uint8)[i], 4) for i in range(4)]
    est = estimate_max_probabilities(S, 100_000, seed=2)
    assert np.allclose(est.probabilities, 0.25, atol=0.01)


def test_three_vector_probabilities():
    est = estimate_max_probabilities(vecs("1100", "1010", "0011"), 200_000, seed=3)
    assert np.allclose(est.probabilities, [0.375, 0.25, 0.375], atol=0.006)
    assert est.probabilities.sum() == pytest.approx(1.0)


def test_max_probability_errors():
    with pytest.raises(ValueError):
        estimate_max_probabilities(vecs("1100", "1100"), 10_000)
    with pytest.raises(ValueError):
        estimate_max_probabilities(vecs("1100", "0011"), 9_999)
    with pytest.raises(ValueError):
        estimate_max_probabilities(vecs("1100", "0111"), 10_000)


def test_degree_monotonicity_random_sets():
    rng = np.random.default_rng(0)
    all4 = [one_hot(Kmer(c)) for c in itertools.product(range(4), repeat=4)]
    for seed in range(2):
        idx = rng.choice(len(all4), size=8, replace=False)
        rep = check_degree_monotonicity([all4[i] for i in idx], 1_000_000, seed)
        assert rep.passed, rep.lines()


def test_conditional_profile_small():
    prof = conditional_expectation_profile(2, 4, 5000, seed=0)
    assert prof.counts.tolist() == [1, 6, 9]
    assert prof.distances.tolist() == [0, 2, 4]
    assert prof.strictly_decreasing()


def test_conditional_profile_k3_gaps():
    prof = conditional_expectation_profile(3, 4, 10_000, seed=1)
    assert prof.counts.tolist() == [1, 9, 27, 27]
    assert prof.strictly_decreasing(3.0)
    # the gaps between consecutive classes are equal in expectation
    assert np.ptp(prof.gap_means) < 6 * prof.gap_stderrs.max()


def test_conditional_profile_guards():
    with pytest.raises(ValueError):
        conditional_expectation_profile(8, 4, 10)
    with pytest.raises(ValueError):
        conditional_expectation_profile(2, 4, 1)


def test_jaccard_and_collision_rate():
    pool = random_distinct_kmers(10, 6, seed=0)
    A, B = pool[:6], pool[2:8]
    assert jaccard(A, B) == 0.5
    assert jaccard_collision_rate(A, A, 200) == 1.0
    assert jaccard_collision_rate(pool[:5], pool[5:], 200) == 0.0
    rate = jaccard_collision_rate(A, B, 4000, seed=3)
    assert abs(rate - 0.5) < 0.03
    g = jaccard_collision_rate(A, B, 2000, seed=3, family="gaussian")
    assert 0.0 < g < 1.0
    with pytest.raises(ValueError):
        jaccard_collision_rate(A, B, 10, family="sha")


def test_finite_density_target():
    assert finite_density_target(1000, 19) == pytest.approx((1 + 981 * 0.1) / 1000)
    assert finite_density_target(19, 19) == pytest.approx(1 / 19)


def test_expected_density_random_scheme():
    rep = expected_density_check(8, 9, 1007, 200, seed=4)
    assert rep.passed, rep.lines()
    assert abs(rep.checks[0].estimate - 0.2) < 0.01


def test_expected_density_gaussian_scheme():
    rep = expected_density_check(8, 19, 1007, 100, seed=5, scheme="gaussian")
    assert rep.passed, rep.lines()


def test_equivalence_suite_small():
    rep = equivalence_suite(cases=30, seed=2)
    assert rep.passed, rep.lines()


def test_report_csv_and_lines():
    rep = Report("demo")
    rep.add("x", 0.5, 0.5, 0.01, True)
    rep.add("y", 1.0, 0.0, 0.1, False, note="bad")
    buf = io.StringIO()
    write_report_csv([rep], buf)
    assert buf.getvalue().splitlines() == [
        "metric,estimate,target,half_width,verdict", "demo/x,0.5,0.5,0.01,PASS", "demo/y,1,0,0.1,FAIL"]
    assert not rep.passed
    assert rep.lines()[1].startswith("FAIL y:") and rep.lines()[1].endswith("(bad)")


def test_run_suite_all_smoke():
    reports = run_suite("all", trials=20, seed=0)
    names = [r.name for r in reports]
    assert "thm2" in names and "equivalence" in names
    with pytest.raises(ValueError):
        run_suite("lemma9")
