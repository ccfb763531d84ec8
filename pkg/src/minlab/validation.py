"""Monte-Carlo and small-instance oracles for the minimizer / Gaussian-filter results.

Every estimate is a pure function of ``(seed, trials)``. Confidence intervals
use the normal approximation at 99% (``Z99``).
"""
from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence as SequenceT

import numpy as np

from minlab._random import derive_seed, make_rng
from minlab.alphabet import DNA, Alphabet, Kmer, OneHotVector, Sequence, one_hot_matrix
from minlab.conv import equivalence_check
from minlab.hashing import GaussianOrdering, MultiplyShiftOrdering, make_ordering, new_gaussian_filter, new_multiply_shift
from minlab.metrics import degrees
from minlab.minimizers import TiePolicy, adjacent_share_rate, density, minhash_min, select_minimizers
from minlab.simulation import uniform_random_sequence

Z99 = 2.58


@dataclass(frozen=True)
class Check:
    metric: str
    estimate: float
    target: float
    half_width: float
    passed: bool
    note: str = ""

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        text = f"{verdict} {self.metric}: estimate={self.estimate:.6g} target={self.target:.6g} half_width={self.half_width:.3g}"
        return f"{text} ({self.note})" if self.note else text


@dataclass
class Report:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, metric, estimate, target, half_width, passed, note=""):
        self.checks.append(Check(metric, float(estimate), float(target), float(half_width), bool(passed), note))

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]


REPORT_COLUMNS = ("metric", "estimate", "target", "half_width", "verdict")


def write_report_csv(reports: SequenceT[Report], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for rep in reports:
        for c in rep.checks:
            writer.writerow([f"{rep.name}/{c.metric}", f"{c.estimate:.10g}", f"{c.target:.10g}",
                             f"{c.half_width:.10g}", "PASS" if c.passed else "FAIL"])


def _bit_matrix(S) -> np.ndarray:
    rows = [s.bits if isinstance(s, OneHotVector) else np.asarray(s) for s in S]
    return np.array(rows, dtype=np.float64)


# --- maximizer probabilities --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MaxProbabilityEstimate:
    probabilities: np.ndarray
    trials: int
    half_width: float
    ties_discarded: int


def estimate_max_probabilities(S, trials: int, seed: int = 0, chunk: int = 1 << 16) -> MaxProbabilityEstimate:
    """Tally which member of ``S`` attains the largest dot product with fresh Gaussian weights."""
    bits = _bit_matrix(S)
    n, d = bits.shape
    if n < 2:
        raise ValueError("need at least two vectors")
    if trials < 10_000:
        raise ValueError("trials must be >= 10^4")
    if len({tuple(r) for r in bits.tolist()}) != n:
        raise ValueError("duplicate vectors in S")
    if len(set(bits.sum(axis=1).tolist())) != 1:
        raise ValueError("all vectors must have the same number of set bits")
    rng = make_rng(seed, "max-probability")
    counts = np.zeros(n, dtype=np.int64)
    ties = 0
    done = 0
    while done < trials:
        c = min(chunk, trials - done)
        y = rng.standard_normal((c, d)) @ bits.T
        is_max = y == y.max(axis=1, keepdims=True)
        tied = is_max.sum(axis=1) > 1
        ties += int(tied.sum())
        counts += is_max[~tied].sum(axis=0)
        done += c
    effective = trials - ties
    p = counts / effective
    hw = Z99 * float(np.sqrt(np.max(p * (1 - p)) / effective))
    return MaxProbabilityEstimate(p, trials, hw, ties)


def check_degree_monotonicity(S, trials: int, seed: int = 0) -> Report:
    """Higher-degree members must be at least as likely to be the maximizer.

    A pair fails when ``P(x) < P(y) - 2 * half_width`` although
    ``degree(x) > degree(y)``. When every degree is equal the probabilities
    must also be uniform within the half-width.
    """
    S = list(S)
    est = estimate_max_probabilities(S, trials, seed)
    deg = degrees([s if isinstance(s, OneHotVector) else OneHotVector(s, 2) for s in S])
    p, hw = est.probabilities, est.half_width
    rep = Report("degree-monotonicity")
    rep.add("sum_probabilities", p.sum(), 1.0, hw, abs(p.sum() - 1.0) <= hw)
    for i, j in itertools.permutations(range(len(S)), 2):
        if deg[i] > deg[j]:
            diff = p[i] - p[j]
            rep.add(f"P(s{i})-P(s{j})|deg {deg[i]}>{deg[j]}", diff, 0.0, 2 * hw, diff >= -2 * hw)
    if len(set(deg.tolist())) == 1:
        for i in range(len(S)):
            rep.add(f"P(s{i})|equal-degree", p[i], 1 / len(S), hw, abs(p[i] - 1 / len(S)) <= hw)
    return rep


# --- conditional expectation given the maximizer -------------------------------------------

@dataclass(frozen=True, eq=False)
class ConditionalExpectationProfile:
    distances: np.ndarray  # one-hot L1 distance to the maximizer (even values)
    means: np.ndarray
    stderrs: np.ndarray
    counts: np.ndarray  # universe members per distance class
    gap_means: np.ndarray  # mean[i] - mean[i+1]
    gap_stderrs: np.ndarray
    trials: int

    def strictly_decreasing(self, z: float = 3.0) -> bool:
        return bool(np.all(self.gap_means > z * self.gap_stderrs))


def conditional_expectation_profile(k: int, sigma: int, trials: int, seed: int = 0,
                                    max_universe: int = 4096, chunk: int = 2048) -> ConditionalExpectationProfile:
    """Enumerate every one-hot k-mer, find the maximizer per trial, and average scores by distance to it.

    Standard errors come from per-trial class means, so within-trial
    correlation between classes is accounted for in the gap statistics.
    """
    size = sigma ** k
    if size > max_universe:
        raise ValueError(f"universe of {size} k-mers exceeds max_universe={max_universe}")
    if trials < 2:
        raise ValueError("trials must be >= 2")
    universe = np.array(list(itertools.product(range(sigma), repeat=k)), dtype=np.int16)
    U = one_hot_matrix(universe, sigma).astype(np.float64)
    # Hamming class (= one-hot L1 / 2) between every pair of universe members
    cls = (universe[:, None, :] != universe[None, :, :]).sum(axis=2).astype(np.int8)
    classes = np.arange(0, 2 * k + 1, 2)
    counts = np.bincount(cls[0], minlength=k + 1)
    rng = make_rng(seed, "conditional-expectation")
    sums = np.zeros(len(classes))
    sq = np.zeros(len(classes))
    gap_sum = np.zeros(len(classes) - 1)
    gap_sq = np.zeros(len(classes) - 1)
    done = 0
    while done < trials:
        c = min(chunk, trials - done)
        y = rng.standard_normal((c, U.shape[1])) @ U.T
        best = y.argmax(axis=1)
        rows = cls[best]
        per = np.stack([np.where(rows == j, y, 0.0).sum(axis=1) / counts[j] for j in range(k + 1)], axis=1)
        gaps = per[:, :-1] - per[:, 1:]
        sums += per.sum(axis=0)
        sq += (per ** 2).sum(axis=0)
        gap_sum += gaps.sum(axis=0)
        gap_sq += (gaps ** 2).sum(axis=0)
        done += c

    def _mean_se(s, s2):
        mean = s / trials
        var = np.maximum(s2 / trials - mean ** 2, 0.0) * trials / (trials - 1)
        return mean, np.sqrt(var / trials)

    means, ses = _mean_se(sums, sq)
    gm, gse = _mean_se(gap_sum, gap_sq)
    return ConditionalExpectationProfile(classes, means, ses, counts, gm, gse, trials)


# --- MinHash collisions --------------------------------------------------------------------

def jaccard(A, B) -> float:
    a = {x.codes if isinstance(x, Kmer) else tuple(x) for x in A}
    b = {x.codes if isinstance(x, Kmer) else tuple(x) for x in B}
    return len(a & b) / len(a | b)


def jaccard_collision_rate(A: SequenceT[Kmer], B: SequenceT[Kmer], trials: int, seed: int = 0,
                           family: str = "multiply-shift", alphabet: Alphabet = DNA) -> float:
    """Fraction of random orderings under which both sets share their minimum k-mer."""
    if not A or not B:
        raise ValueError("sets must be non-empty")
    k = A[0].k
    hits = 0
    for t in range(trials):
        s = derive_seed(seed, "jaccard", t)
        if family == "multiply-shift":
            ordering = MultiplyShiftOrdering(new_multiply_shift(k, s))
        elif family == "gaussian":
            ordering = GaussianOrdering(new_gaussian_filter(alphabet.size * k, s), alphabet.size)
        else:
            raise ValueError(f"unknown family {family!r}")
        hits += minhash_min(A, ordering).codes == minhash_min(B, ordering).codes
    return hits / trials


def random_distinct_kmers(n: int, k: int, seed: int, alphabet: Alphabet = DNA) -> list[Kmer]:
    rng = make_rng(seed, "distinct-kmers")
    seen: dict[tuple, None] = {}
    while len(seen) < n:
        seen.setdefault(tuple(rng.integers(0, alphabet.size, size=k).tolist()), None)
    return [Kmer(c, i) for i, c in enumerate(seen)]


# --- density and adjacency -----------------------------------------------------------------

def finite_density_target(n_kmers: int, w: int) -> float:
    """Expected random-minimizer density for a finite duplicate-free sequence.

    The first window always contributes one selection and each of the
    remaining windows adds a new one with probability 2/(w+1).
    """
    windows = n_kmers - w + 1
    return (1 + (windows - 1) * 2 / (w + 1)) / n_kmers


def _mean_se(values) -> tuple[float, float]:
    v = np.asarray(values, dtype=np.float64)
    return float(v.mean()), float(v.std(ddof=1) / np.sqrt(v.size))


def density_trials(k: int, w: int, length: int, trials: int, seed: int, scheme: str = "random",
                   alphabet: Alphabet = DNA, ties=TiePolicy.LEFTMOST) -> tuple[np.ndarray, np.ndarray]:
    """Per-trial density and adjacent-share rate on uniform random sequences."""
    dens = np.empty(trials)
    share = np.empty(trials)
    for t in range(trials):
        seq = uniform_random_sequence(length, alphabet, derive_seed(seed, "density-sequence", t))
        ordering = make_ordering(scheme, k, alphabet, derive_seed(seed, "density-ordering", t))
        sel = select_minimizers(seq, k, w, ordering, ties)
        dens[t] = density(sel).density
        share[t] = adjacent_share_rate(sel)
    return dens, share


def expected_density_check(k: int, w: int, length: int, trials: int, seed: int = 0, scheme: str = "random",
                           tolerance: float | None = None) -> Report:
    """Mean density on uniform sequences against ``2/(w+1)``, edge-corrected for finite length.

    Hash orderings must land within 3 standard errors of the finite-length
    target (or ``tolerance`` when given); other schemes within ``tolerance``
    (default 5% of the target).
    """
    dens, _ = density_trials(k, w, length, trials, seed, scheme)
    mean, se = _mean_se(dens)
    target = finite_density_target(length - k + 1, w)
    if tolerance is None:
        tolerance = 3 * se if scheme in ("random",) else 0.05 * target
    rep = Report(f"density[{scheme},k={k},w={w}]")
    rep.add("mean_density", mean, target, tolerance, abs(mean - target) <= tolerance,
            note=f"2/(w+1)={2 / (w + 1):.4g}, stderr={se:.2g}")
    return rep


def lemma2_check(k: int = 8, w: int = 19, length: int = 1007, trials: int = 400, seed: int = 0) -> Report:
    _, share = density_trials(k, w, length, trials, seed)
    mean, se = _mean_se(share)
    bound = (w - 1) / (w + 1) - 0.01
    rep = Report("lemma2")
    rep.add("adjacent_share_rate", mean, bound, se, mean >= bound, note="lower bound (w-1)/(w+1) - 0.01")
    return rep


def lemma1_check(trials: int = 10_000, seed: int = 0, k: int = 8) -> Report:
    """Collision rate of single-set MinHash against the Jaccard index."""
    pool = random_distinct_kmers(15, k, derive_seed(seed, "lemma1-pool"))
    A = pool[:8]
    B = pool[:5] + pool[8:10]
    C = pool[10:15]
    rep = Report("lemma1")
    t = jaccard(A, B)
    rate = jaccard_collision_rate(A, B, trials, derive_seed(seed, "lemma1-ab"))
    tol = max(0.02, Z99 * np.sqrt(t * (1 - t) / trials))
    rep.add("collision_rate[J=0.5]", rate, t, tol, abs(rate - t) <= tol)
    same = jaccard_collision_rate(A, A, min(trials, 1000), derive_seed(seed, "lemma1-aa"))
    rep.add("collision_rate[A=B]", same, 1.0, 0.0, same == 1.0)
    disjoint = jaccard_collision_rate(A[:5], C, min(trials, 1000), derive_seed(seed, "lemma1-disjoint"))
    rep.add("collision_rate[disjoint]", disjoint, 0.0, 0.02, disjoint <= 0.02)
    return rep


def thm2_check(trials: int = 1_000_000, seed: int = 0) -> Report:
    S = [OneHotVector.from_bits(b) for b in ("1100", "1010", "0011")]
    trials = max(trials, 10_000)
    est = estimate_max_probabilities(S, trials, derive_seed(seed, "thm2-three"))
    rep = Report("thm2")
    tol = max(0.005, est.half_width)
    for name, p, target in zip(("1100", "1010", "0011"), est.probabilities, (0.375, 0.25, 0.375)):
        rep.add(f"P(max={name})", p, target, tol, abs(p - target) <= tol)
    mono = check_degree_monotonicity(S, trials, derive_seed(seed, "thm2-mono"))
    rep.checks.extend(mono.checks)
    singles = [OneHotVector(np.eye(4, dtype=np.uint8)[i], 4) for i in range(4)]
    sym = check_degree_monotonicity(singles, trials, derive_seed(seed, "thm2-singletons"))
    rep.checks.extend(Check(f"singletons/{c.metric}", c.estimate, c.target, c.half_width, c.passed) for c in sym.checks)
    return rep


def thm3_check(trials: int = 10_000, seed: int = 0, k: int = 3, sigma: int = 4) -> Report:
    prof = conditional_expectation_profile(k, sigma, max(trials, 2), derive_seed(seed, "thm3"))
    rep = Report("thm3")
    for d, g, se in zip(prof.distances[:-1], prof.gap_means, prof.gap_stderrs):
        rep.add(f"mean(d={d})-mean(d={d + 2})", g, 0.0, 3 * se, g > 3 * se)
    return rep


def equivalence_suite(cases: int = 1000, seed: int = 0, k: int = 8, w: int = 19, length: int = 200,
                      alphabet: Alphabet = DNA) -> Report:
    """Randomised conv + max-pool vs minimizer agreement, plus all-tie poly-A inputs."""
    failures = 0
    for t in range(cases):
        seq = uniform_random_sequence(length, alphabet, derive_seed(seed, "equiv-seq", t))
        filt = new_gaussian_filter(alphabet.size * k, derive_seed(seed, "equiv-filter", t))
        ties = list(TiePolicy)[t % 3]
        failures += not equivalence_check(seq, k, w, filt, ties).passed
    rep = Report("equivalence")
    rep.add("random_cases_failed", failures, 0, 0, failures == 0, note=f"{cases} cases")
    poly_a = Sequence(np.zeros(k + 3 * w, dtype=np.int16), alphabet)
    filt = new_gaussian_filter(alphabet.size * k, derive_seed(seed, "equiv-polya"))
    for ties in TiePolicy:
        ok = equivalence_check(poly_a, k, w, filt, ties).passed
        rep.add(f"poly_a[{ties.value}]", int(ok), 1, 0, ok)
    return rep


SUITES: dict[str, Callable[..., list[Report]]] = {
    "lemma1": lambda trials, seed: [lemma1_check(trials or 10_000, seed)],
    "lemma2": lambda trials, seed: [lemma2_check(trials=max(trials or 400, 2), seed=seed)],
    "lemma3": lambda trials, seed: [expected_density_check(8, w, 1007, max(trials or 400, 2),
                                                           derive_seed(seed, "lemma3", w)) for w in (9, 19, 39)],
    "thm2": lambda trials, seed: [thm2_check(trials or 1_000_000, seed)],
    "thm3": lambda trials, seed: [thm3_check(trials or 10_000, seed)],
    "equivalence": lambda trials, seed: [equivalence_suite(trials or 1000, seed)],
}


def run_suite(name: str, trials: int | None = None, seed: int = 0) -> list[Report]:
    if name == "all":
        return [rep for key in SUITES for rep in SUITES[key](trials, seed)]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES) + ['all']}")
    return SUITES[name](trials, seed)
