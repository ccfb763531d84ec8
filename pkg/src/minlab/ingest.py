"""FASTA and BED-style region input for the telomere experiment."""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Mapping

from minlab.alphabet import DNA, Alphabet, Sequence, parse_sequence


class FormatError(ValueError):
    """Malformed input file; carries the path and 1-based line number."""

    def __init__(self, message: str, path=None, line: int | None = None):
        self.path = None if path is None else os.fspath(path)
        self.line = line
        where = self.path or "<input>"
        if line is not None:
            where = f"{where}:{line}"
        super().__init__(f"{where}: {message}")


def iter_fasta(path, alphabet: Alphabet = DNA) -> Iterator[tuple[str, Sequence]]:
    """Yield ``(name, Sequence)`` records one at a time.

    The name is the first whitespace-delimited token of the header. Letters are
    case-folded; anything outside the alphabet becomes a gap.
    """
    name = None
    chunks: list[str] = []
    header_line = 0
    seen_any = False
    with open(path, "r", encoding="utf-8", newline=None) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith(">"):
                if name is not None:
                    yield name, parse_sequence("".join(chunks), alphabet)
                tokens = line[1:].split()
                if not tokens:
                    raise FormatError("empty FASTA header", path, lineno)
                name, chunks, header_line = tokens[0], [], lineno
                seen_any = True
            elif line.startswith(";"):
                continue
            else:
                if name is None:
                    raise FormatError("sequence data before first '>' header", path, lineno)
                chunks.append(line)
    if not seen_any:
        raise FormatError("no FASTA records found", path, header_line or None)
    yield name, parse_sequence("".join(chunks), alphabet)


def read_fasta(path, alphabet: Alphabet = DNA) -> dict[str, Sequence]:
    out: dict[str, Sequence] = {}
    for name, seq in iter_fasta(path, alphabet):
        if name in out:
            raise FormatError(f"duplicate sequence name {name!r}", path)
        out[name] = seq
    return out


@dataclass(frozen=True)
class Region:
    name: str
    start: int
    end: int
    label: str = ""

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise ValueError(f"invalid region {self.name}:{self.start}-{self.end}; need 0 <= start < end")
        if not self.label:
            object.__setattr__(self, "label", f"{self.name}:{self.start}-{self.end}")

    def __len__(self):
        return self.end - self.start


def read_regions(path) -> list[Region]:
    """Parse ``name<TAB>start<TAB>end[<TAB>label]`` lines (0-based, half-open); '#' lines are skipped."""
    regions = []
    with open(path, "r", encoding="utf-8", newline=None) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip() or line.startswith("#") or line.startswith(("track", "browser")):
                continue
            fields = line.split("\t")
            if len(fields) < 3:
                fields = line.split()
            if len(fields) < 3:
                raise FormatError("expected at least 3 fields: name, start, end", path, lineno)
            try:
                start, end = int(fields[1]), int(fields[2])
            except ValueError:
                raise FormatError(f"non-numeric coordinates {fields[1]!r}, {fields[2]!r}", path, lineno) from None
            label = fields[3].strip() if len(fields) > 3 else ""
            try:
                regions.append(Region(fields[0].strip(), start, end, label))
            except ValueError as exc:
                raise FormatError(str(exc), path, lineno) from None
    return regions


def extract_region(seqs: Mapping[str, Sequence], region: Region) -> Sequence:
    if region.name not in seqs:
        raise KeyError(f"unknown sequence {region.name!r}")
    seq = seqs[region.name]
    if region.end > len(seq):
        raise ValueError(f"region {region.label} ends at {region.end} beyond sequence length {len(seq)}")
    return seq[region.start:region.end]
