"""Exact censuses of overlapping length-m symbol blocks."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .sequences import SymbolSequence

# missing_blocks() materialises all p**m codes; refuse beyond this.
_ENUMERATION_CAP = 1 << 24
# bincount over the full code space is faster than np.unique below this size
_BINCOUNT_CAP = 1 << 22


@dataclass(frozen=True)
class BlockCensus:
    """Counts of every observed m-block, keyed by base-p code (MSB first)."""

    m: int
    p: int
    counts: dict[int, int]
    total_windows: int

    def decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            out.append(code % self.p)
            code //= self.p
        return tuple(reversed(out))

    def count_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        codes = np.fromiter(self.counts.keys(), dtype=np.int64, count=len(self.counts))
        counts = np.fromiter(self.counts.values(), dtype=np.int64, count=len(self.counts))
        order = np.argsort(codes)
        return codes[order], counts[order]


def _window_codes(symbols: np.ndarray, m: int, p: int) -> np.ndarray:
    n = symbols.size - m + 1
    codes = np.zeros(n, dtype=np.int64)
    for j in range(m):
        codes *= p
        codes += symbols[j : j + n]
    return codes


def _tally(codes: np.ndarray, p: int, m: int) -> dict[int, int]:
    if p**m <= _BINCOUNT_CAP:
        counts = np.bincount(codes, minlength=0)
        observed = np.flatnonzero(counts)
        return {int(c): int(counts[c]) for c in observed}
    values, counts = np.unique(codes, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


def check_code_width(p: int, m: int) -> None:
    if p**m >= 1 << 63:
        raise ValueError(f"block code overflow: p={p}, m={m} exceeds 63-bit codes")


def count_blocks(seq: SymbolSequence, m: int) -> BlockCensus:
    """Census of all overlapping m-windows (stride 1), exact integer counts."""
    if m < 1:
        raise ValueError(f"block length must be >= 1, got {m}")
    if m > len(seq):
        raise ValueError(f"block length {m} exceeds sequence length {len(seq)}")
    check_code_width(seq.p, m)
    codes = _window_codes(seq.symbols, m, seq.p)
    return BlockCensus(m=m, p=seq.p, counts=_tally(codes, seq.p, m), total_windows=codes.size)


def count_blocks_chunked(
    seq: SymbolSequence, m: int, boundaries: list[int], threads: int = 1
) -> BlockCensus:
    """Census computed chunk-wise and merged by addition.

    ``boundaries`` are interior split points of the sequence; chunks overlap by
    m-1 symbols so every window is counted exactly once.  The merged census is
    identical to the single-pass one for any choice of boundaries or threads.
    """
    if m < 1:
        raise ValueError(f"block length must be >= 1, got {m}")
    if m > len(seq):
        raise ValueError(f"block length {m} exceeds sequence length {len(seq)}")
    check_code_width(seq.p, m)
    n = len(seq)
    cuts = [0] + sorted(int(b) for b in boundaries) + [n]
    if any(b <= 0 or b >= n for b in boundaries):
        raise ValueError("chunk boundaries must be interior split points")
    spans = [(lo, min(hi + m - 1, n)) for lo, hi in zip(cuts[:-1], cuts[1:])]
    spans = [(lo, hi) for lo, hi in spans if hi - lo >= m]

    def job(span: tuple[int, int]) -> dict[int, int]:
        lo, hi = span
        codes = _window_codes(seq.symbols[lo:hi], m, seq.p)
        return _tally(codes, seq.p, m)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(job, spans))
    else:
        partials = [job(s) for s in spans]

    merged: dict[int, int] = {}
    for part in partials:
        for code, count in part.items():
            merged[code] = merged.get(code, 0) + count
    return BlockCensus(m=m, p=seq.p, counts=merged, total_windows=n - m + 1)


def observed_block_set(census: BlockCensus) -> set[tuple[int, ...]]:
    return {census.decode(code) for code in census.counts}


def missing_blocks(census: BlockCensus) -> set[tuple[int, ...]]:
    """All p**m blocks with zero count.  Unobserved, not necessarily forbidden."""
    total = census.p**census.m
    if total > _ENUMERATION_CAP:
        raise ValueError(f"cannot enumerate {total} blocks (p={census.p}, m={census.m})")
    observed = np.fromiter(census.counts.keys(), dtype=np.int64, count=len(census.counts))
    absent = np.setdiff1d(np.arange(total, dtype=np.int64), observed, assume_unique=False)
    return {census.decode(int(code)) for code in absent}


def census_to_csv(census: BlockCensus, labels: dict[int, str] | None = None) -> str:
    """CSV rows (block, count, frequency) in ascending code order."""
    from .fileio import fmt

    def name(block: tuple[int, ...]) -> str:
        if labels:
            return "-".join(labels.get(s, str(s)) for s in block)
        return "-".join(str(s) for s in block)

    lines = ["block,count,frequency"]
    for code in sorted(census.counts):
        count = census.counts[code]
        lines.append(f"{name(census.decode(code))},{count},{fmt(count / census.total_windows)}")
    return "\n".join(lines) + "\n"
