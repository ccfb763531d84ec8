"""Seeded experiment drivers behind the CLI: tandem-repeat sweep and region densities.

Each trial derives its own seeds from ``(master seed, stream name, group, trial)``
and results are gathered in task order, so output does not depend on the
number of worker processes.
"""
from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence as SequenceT

import numpy as np

from minlab._random import derive_seed
from minlab.alphabet import DNA, Alphabet, Sequence, kmer_matrix
from minlab.hashing import make_ordering
from minlab.ingest import Region, extract_region
from minlab.metrics import distance_stats
from minlab.minimizers import TiePolicy, density, select_minimizers
from minlab.simulation import RepeatSpec, random_unit, tandem_repeat

CSV_COLUMNS = ("group", "scheme", "metric", "mean", "stderr", "trials", "seed")
SCHEME_LABELS = {"random": "random-minimizer", "gaussian": "gaussian-conv"}
SWEEP_METRICS = ("density", "dist_to_all", "dist_between_minimizers")
THREADS_ENV = "MINLAB_THREADS"


@dataclass(frozen=True)
class ExperimentResult:
    group: str
    scheme: str
    metric: str
    mean: float | None
    stderr: float | None
    trials: int
    seed: int

    @classmethod
    def from_samples(cls, group, scheme, metric, values: Iterable[float | None], seed: int) -> "ExperimentResult":
        v = np.array([x for x in values if x is not None], dtype=np.float64)
        if v.size < 2:
            raise ValueError(f"need at least 2 trials for a standard error ({group}/{scheme}/{metric})")
        return cls(str(group), scheme, metric, float(v.mean()), float(v.std(ddof=1) / math.sqrt(v.size)),
                   int(v.size), seed)

    def row(self) -> list[str]:
        fmt = lambda x: "" if x is None else format(x, ".10g")
        return [self.group, self.scheme, self.metric, fmt(self.mean), fmt(self.stderr), str(self.trials), str(self.seed)]


def write_csv(results: Iterable[ExperimentResult], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in results:
        writer.writerow(r.row())


def thread_count(value: str | None = None) -> int:
    raw = os.environ.get(THREADS_ENV, "1") if value is None else value
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def parallel_map(fn: Callable, tasks: SequenceT, threads: int = 1) -> list:
    """Ordered map over a process pool (or inline for one worker)."""
    if threads <= 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    chunksize = max(1, len(tasks) // (threads * 16))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, tasks, chunksize=chunksize))


@dataclass(frozen=True)
class SweepConfig:
    k: int = 8
    w: int = 19
    length: int = 1007
    mutation_rate: float = 0.1
    seed: int = 0
    ties: str = TiePolicy.LEFTMOST.value
    fixed_unit: bool = False
    substitution: str = "other"
    dedup_values: bool = False
    alphabet: Alphabet = DNA

    def __post_init__(self):
        if self.k < 1 or self.w < 1:
            raise ValueError("k and w must be >= 1")
        if self.length < self.k + self.w - 1:
            raise ValueError(f"length {self.length} too short for k={self.k}, w={self.w}")
        TiePolicy(self.ties)


def _scheme_metrics(seq: Sequence, all_kmers: np.ndarray, cfg: SweepConfig, scheme: str, seed: int):
    ordering = make_ordering(scheme, cfg.k, cfg.alphabet, seed)
    sel = select_minimizers(seq, cfg.k, cfg.w, ordering, cfg.ties)
    ds = distance_stats(sel, all_kmers, cfg.dedup_values)
    return density(sel).density, ds.mean_to_all, ds.mean_pairwise


def sweep_trial(task: tuple[int, int, SweepConfig]) -> dict[str, tuple]:
    r, t, cfg = task
    unit = random_unit(r, cfg.alphabet, derive_seed(cfg.seed, "sweep-unit", r)) if cfg.fixed_unit else None
    spec = RepeatSpec(r, cfg.length, cfg.mutation_rate, derive_seed(cfg.seed, "sweep-sequence", r, t))
    seq = tandem_repeat(spec, cfg.alphabet, cfg.substitution, unit)
    codes, valid = kmer_matrix(seq, cfg.k)
    all_kmers = np.ascontiguousarray(codes[valid])
    return {s: _scheme_metrics(seq, all_kmers, cfg, s, derive_seed(cfg.seed, f"sweep-{s}", r, t))
            for s in SCHEME_LABELS}


def run_sweep(cfg: SweepConfig, repeat_lengths: Iterable[int], trials: int, threads: int = 1) -> list[ExperimentResult]:
    """Mean and standard error of density and distance metrics per repeat length and scheme."""
    repeat_lengths = list(repeat_lengths)
    if trials < 2:
        raise ValueError("trials must be >= 2")
    for r in repeat_lengths:
        if not 1 <= r <= cfg.length:
            raise ValueError(f"repeat length {r} outside [1, {cfg.length}]")
    tasks = [(r, t, cfg) for r in repeat_lengths for t in range(trials)]
    outcomes = parallel_map(sweep_trial, tasks, threads)
    results = []
    for gi, r in enumerate(repeat_lengths):
        block = outcomes[gi * trials:(gi + 1) * trials]
        for scheme, label in SCHEME_LABELS.items():
            for mi, metric in enumerate(SWEEP_METRICS):
                values = [o[scheme][mi] for o in block]
                results.append(ExperimentResult.from_samples(r, label, metric, values, cfg.seed))
    return results


def region_trial(task) -> dict[str, float]:
    seq, idx, t, k, w, seed, ties, alphabet = task
    out = {}
    for s in SCHEME_LABELS:
        ordering = make_ordering(s, k, alphabet, derive_seed(seed, f"region-{s}", idx, t))
        out[s] = density(select_minimizers(seq, k, w, ordering, ties)).density
    return out


def has_window(seq: Sequence, k: int, w: int) -> bool:
    _, valid = kmer_matrix(seq, k)
    if valid.shape[0] < w:
        return False
    return bool(np.convolve(valid.astype(np.int32), np.ones(w, dtype=np.int32), mode="valid").max() > 0)


def run_regions(seqs: Mapping[str, Sequence], regions: SequenceT[Region], k: int = 8, w: int = 19,
                trials: int = 400, seed: int = 0, ties=TiePolicy.LEFTMOST, threads: int = 1,
                alphabet: Alphabet = DNA) -> list[ExperimentResult]:
    """Density per region for both schemes; the sequence is fixed, each trial draws a fresh ordering.

    Regions too short (or too gappy) for a single window produce one
    ``insufficient_length`` row per scheme with empty statistics.
    """
    if trials < 2:
        raise ValueError("trials must be >= 2")
    ties = TiePolicy(ties).value
    extracted = [extract_region(seqs, reg) for reg in regions]
    tasks = [(seq, i, t, k, w, seed, ties, alphabet)
             for i, seq in enumerate(extracted) if has_window(seq, k, w) for t in range(trials)]
    outcomes = iter(parallel_map(region_trial, tasks, threads))
    results = []
    for reg, seq in zip(regions, extracted):
        if not has_window(seq, k, w):
            results.extend(ExperimentResult(reg.label, label, "insufficient_length", None, None, 0, seed)
                           for label in SCHEME_LABELS.values())
            continue
        block = [next(outcomes) for _ in range(trials)]
        for s, label in SCHEME_LABELS.items():
            results.append(ExperimentResult.from_samples(reg.label, label, "density", [b[s] for b in block], seed))
    return results
