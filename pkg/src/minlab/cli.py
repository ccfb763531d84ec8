"""``minlab`` command line: sweep, telomere, validate, density.

Exit codes: 0 success, 1 failed validation, 2 usage error, 3 I/O or parse error.
"""
from __future__ import annotations

import argparse
import contextlib
import sys

from minlab import __version__
from minlab.alphabet import DNA, parse_sequence
from minlab.experiments import SweepConfig, run_regions, run_sweep, thread_count, write_csv
from minlab.hashing import SCHEMES, make_ordering
from minlab.ingest import FormatError, read_fasta, read_regions
from minlab.minimizers import TiePolicy, adjacent_share_rate, density, select_minimizers
from minlab.validation import SUITES, run_suite, write_report_csv

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
TIE_CHOICES = [t.value for t in TiePolicy]


class UsageError(Exception):
    pass


def parse_int_list(text: str) -> list[int]:
    """``"1-30"``, ``"1,2,5"`` or mixtures such as ``"1-5,10"``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty integer list {text!r}")
    return out


def _common(p, trials=None):
    p.add_argument("--k", type=int, default=8, help="k-mer length (default 8)")
    p.add_argument("--w", type=int, default=19, help="window size in k-mers (default 19)")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--ties", choices=TIE_CHOICES, default="leftmost")
    if trials is not None:
        p.add_argument("--trials", type=int, default=trials)
    p.add_argument("--out", help="write CSV here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="tandem-repeat sweep: density and distance metrics per repeat length")
    _common(sw, trials=400)
    sw.add_argument("--length", type=int, default=1007)
    sw.add_argument("--repeat-lengths", type=parse_int_list, default=list(range(1, 31)), metavar="LIST",
                    help="e.g. 1-30 or 2,5,18 (default 1-30)")
    sw.add_argument("--mutation-rate", type=float, default=0.1)
    sw.add_argument("--fixed-unit", action="store_true", help="one repeat unit per repeat length instead of per trial")
    sw.add_argument("--substitution", choices=("other", "any"), default="other",
                    help="draw substituted symbols from the other sigma-1 letters (default) or from all")
    sw.add_argument("--dedup-values", action="store_true", help="count repeated minimizer k-mer values once")

    tel = sub.add_parser("telomere", help="density per annotated region for random vs Gaussian schemes")
    _common(tel, trials=400)
    tel.add_argument("--fasta", required=True)
    tel.add_argument("--regions", required=True, help="BED-like TSV: name, start, end[, label]")

    val = sub.add_parser("validate", help="run Monte-Carlo validation suites")
    val.add_argument("suite", choices=sorted(SUITES) + ["all"])
    val.add_argument("--trials", type=int, default=None, help="override each suite's default trial count")
    val.add_argument("--seed", type=int, default=0)
    val.add_argument("--out", help="write the CSV report here")

    den = sub.add_parser("density", help="density report for one sequence")
    _common(den)
    src = den.add_mutually_exclusive_group(required=True)
    src.add_argument("--fasta")
    src.add_argument("--sequence", help="inline sequence")
    den.add_argument("--name", help="FASTA record to use (default: first)")
    den.add_argument("--scheme", choices=SCHEMES, default="random")
    return parser


@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def cmd_sweep(args) -> int:
    cfg = SweepConfig(k=args.k, w=args.w, length=args.length, mutation_rate=args.mutation_rate, seed=args.seed,
                      ties=args.ties, fixed_unit=args.fixed_unit, substitution=args.substitution,
                      dedup_values=args.dedup_values)
    if not 0.0 <= args.mutation_rate <= 1.0:
        raise UsageError("--mutation-rate must lie in [0, 1]")
    rows = run_sweep(cfg, args.repeat_lengths, args.trials, thread_count())
    with _output(args.out) as fh:
        write_csv(rows, fh)
    return EXIT_OK


def cmd_telomere(args) -> int:
    seqs = read_fasta(args.fasta)
    regions = read_regions(args.regions)
    rows = run_regions(seqs, regions, args.k, args.w, args.trials, args.seed, args.ties, thread_count())
    with _output(args.out) as fh:
        write_csv(rows, fh)
    return EXIT_OK


def cmd_validate(args) -> int:
    reports = run_suite(args.suite, args.trials, args.seed)
    for rep in reports:
        for line in rep.lines():
            print(f"[{rep.name}] {line}")
    if args.out:
        with _output(args.out) as fh:
            write_report_csv(reports, fh)
    ok = all(r.passed for r in reports)
    print("ALL PASS" if ok else "SOME CHECKS FAILED")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_density(args) -> int:
    if args.fasta:
        seqs = read_fasta(args.fasta)
        if args.name is not None:
            if args.name not in seqs:
                raise UsageError(f"no record named {args.name!r} in {args.fasta}")
            seq = seqs[args.name]
        else:
            seq = next(iter(seqs.values()))
    else:
        seq = parse_sequence(args.sequence, DNA)
    ordering = make_ordering(args.scheme, args.k, DNA, args.seed)
    sel = select_minimizers(seq, args.k, args.w, ordering, args.ties)
    rep = density(sel)
    share = adjacent_share_rate(sel) if len(sel) > 1 else float("nan")
    with _output(args.out) as fh:
        print(f"density\t{rep.density:.10g}", file=fh)
        print(f"distinct_selections\t{rep.distinct}", file=fh)
        print(f"windows\t{rep.windows}", file=fh)
        print(f"kmers\t{rep.total_kmers}", file=fh)
        print(f"adjacent_share_rate\t{share:.10g}", file=fh)
    return EXIT_OK


COMMANDS = {"sweep": cmd_sweep, "telomere": cmd_telomere, "validate": cmd_validate, "density": cmd_density}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (OSError, FormatError, KeyError) as exc:
        print(f"minlab: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, ValueError) as exc:
        print(f"minlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
