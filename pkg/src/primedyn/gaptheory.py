"""Admissibility of gap-residue blocks, Hardy-Littlewood constants, block densities.

Gap residues live in {0, 2, 4} (mod 6).  A residue block is obstructed by the
prime 3 exactly when the cumulative half-gap sums hit every residue class mod
3; such a block can only ever occur as the initial segment of the gap sequence
starting at the prime 3 itself.  That single exceptional prefix is computed
from a real prime table, not hard-coded.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .primes import first_n_primes, sieve_upto

DEFAULT_CUTOFF = 10**6
_VALID_RESIDUES = (0, 2, 4)


@dataclass(frozen=True)
class GapResidueBlock:
    """A residue tuple with its admissibility verdict.

    verdict is one of "admissible-generic", "admissible-exceptional" (the
    block occurs only as the prefix starting at prime 3), or "forbidden"
    (with the obstructing witness prime).
    """

    residues: tuple[int, ...]
    verdict: str
    witness_prime: int | None = None

    @property
    def is_admissible(self) -> bool:
        return self.verdict.startswith("admissible")


@dataclass(frozen=True)
class HLValue:
    """A truncated Hardy-Littlewood constant with its truncation error bound."""

    offsets: tuple[int, ...]
    value: float
    prime_cutoff: int
    tail_error_bound: float


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def covering_check(half_gaps: tuple[int, ...], r: int) -> bool:
    """True iff the cumulative sums {0, h1, h1+h2, ...} cover all residues mod r."""
    if not half_gaps:
        raise ValueError("half_gaps must be non-empty")
    if any(h < 1 for h in half_gaps):
        raise ValueError("half_gaps must be positive")
    if not _is_prime(r):
        raise ValueError(f"witness must be prime, got {r}")
    seen = {0}
    total = 0
    for h in half_gaps:
        total += h
        seen.add(total % r)
    return len(seen) == r


@lru_cache(maxsize=None)
def _true_gap_prefix(m: int) -> tuple[int, ...]:
    # gap residues mod 6 of the real prime sequence starting at 3
    table = first_n_primes(m + 2)
    gaps = np.diff(table.primes[1:])
    return tuple(int(g) % 6 for g in gaps)


def _check_residues(residues: tuple[int, ...]) -> tuple[int, ...]:
    residues = tuple(int(r) for r in residues)
    if not residues:
        raise ValueError("residue block must be non-empty")
    if any(r not in _VALID_RESIDUES for r in residues):
        raise ValueError(f"residues must be in {_VALID_RESIDUES}, got {residues}")
    return residues


def is_admissible_gap_block(residues: tuple[int, ...]) -> GapResidueBlock:
    """Classify a residue block as generic, exceptional, or forbidden (witness 3)."""
    residues = _check_residues(residues)
    cums = set()
    total = 0
    for r in residues:
        total += r // 2
        cums.add(total % 3)
    if not (1 in cums and 2 in cums):
        return GapResidueBlock(residues, "admissible-generic")
    if residues == _true_gap_prefix(len(residues)):
        return GapResidueBlock(residues, "admissible-exceptional")
    return GapResidueBlock(residues, "forbidden", witness_prime=3)


def enumerate_gap_blocks(
    m: int,
) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Exhaustive (admissible, forbidden) classification of all 3^m residue blocks."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if m > 20:
        raise ValueError(f"m={m} too large for 3^m enumeration")
    prefix_half = tuple(r // 2 for r in _true_gap_prefix(m))
    admissible: list[tuple[int, ...]] = []
    forbidden: list[tuple[int, ...]] = []
    total = 3**m
    chunk = 1 << 20
    for lo in range(0, total, chunk):
        codes = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        digits = np.empty((codes.size, m), dtype=np.int8)
        rem = codes.copy()
        for j in range(m - 1, -1, -1):
            digits[:, j] = rem % 3
            rem //= 3
        cums = np.cumsum(digits, axis=1) % 3
        covering = (cums == 1).any(axis=1) & (cums == 2).any(axis=1)
        for row, cov in zip(digits.tolist(), covering.tolist()):
            block = tuple(2 * h for h in row)
            if not cov or tuple(row) == prefix_half:
                admissible.append(block)
            else:
                forbidden.append(block)
    return admissible, forbidden


@lru_cache(maxsize=8)
def _odd_primes(cutoff: int) -> np.ndarray:
    primes = sieve_upto(cutoff).primes
    return primes[primes > 2].astype(np.float64)


@lru_cache(maxsize=None)
def _hl_log_tail(m: int, min_q_exclusive: float, cutoff: int) -> float:
    """Sum over odd primes min_q < q <= cutoff of the generic log factor
    log(1 - (m+1)/q) - (m+1) log(1 - 1/q)."""
    qs = _odd_primes(cutoff)
    qs = qs[qs > min_q_exclusive]
    return float(np.sum(np.log1p(-(m + 1) / qs) - (m + 1) * np.log1p(-1.0 / qs)))


@lru_cache(maxsize=None)
def hl_constant(offsets: tuple[int, ...], cutoff: int = DEFAULT_CUTOFF) -> HLValue:
    """Truncated Hardy-Littlewood constant for the cumulative half-offsets.

    C = 2^m * prod over odd primes q <= cutoff of (1 - w(q)/q) / (1 - 1/q)^(m+1),
    where w(q) counts distinct residues of {0, offsets...} mod q.  Accumulated
    in log space; w(q) = m+1 for every q above the largest offset, which makes
    the bulk of the product a single vectorized sum.  Returns value 0 for
    tuples covering all residues mod some small q.
    """
    offsets = tuple(int(g) for g in offsets)
    if not offsets or any(b <= a for a, b in zip((0,) + offsets, offsets)):
        raise ValueError(f"offsets must be strictly increasing positive, got {offsets}")
    if cutoff < 100:
        raise ValueError(f"cutoff must be >= 100, got {cutoff}")
    m = len(offsets)
    tail_bound = 1.0 / (cutoff * math.log(cutoff))
    points = (0,) + offsets
    log_sum = m * math.log(2.0)
    for q in range(3, offsets[-1] + 1, 2):
        if q > cutoff or not _is_prime(q):
            continue
        w = len({x % q for x in points})
        if w == q:
            return HLValue(offsets, 0.0, cutoff, tail_bound)
        log_sum += math.log1p(-w / q) - (m + 1) * math.log1p(-1.0 / q)
    log_sum += _hl_log_tail(m, float(max(offsets[-1], 2)), cutoff)
    return HLValue(offsets, math.exp(log_sum), cutoff, tail_bound)


def _odd_prime_divisors(n: int) -> list[int]:
    out = []
    d = 3
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 2
    while n % 2 == 0:
        n //= 2
    if n > 1:
        out.append(n)
    return out


def hl_single_gap(g1: int, cutoff: int = DEFAULT_CUTOFF) -> float:
    """C(g1) via the closed form C(1) * prod over odd primes q | g1 of (q-1)/(q-2)."""
    if g1 < 1:
        raise ValueError(f"g1 must be >= 1, got {g1}")
    value = hl_constant((1,), cutoff).value
    for q in _odd_prime_divisors(g1):
        value *= (q - 1) / (q - 2)
    return value


@lru_cache(maxsize=None)
def aux_products(cutoff: int = DEFAULT_CUTOFF) -> tuple[float, float]:
    """The auxiliary constants
    a = prod_{q >= 5} (1 - 2/q)/(1 - 1/q)^3 and
    b = prod_{q >= 5} (1 - 3/q)/(1 - 1/q)^3, truncated at ``cutoff``."""
    if cutoff < 100:
        raise ValueError(f"cutoff must be >= 100, got {cutoff}")
    qs = _odd_primes(cutoff)
    qs = qs[qs >= 5]
    base = 3.0 * np.log1p(-1.0 / qs)
    log_a = float(np.sum(np.log1p(-2.0 / qs) - base))
    log_b = float(np.sum(np.log1p(-3.0 / qs) - base))
    return math.exp(log_a), math.exp(log_b)


def residue_density(residue: int, order: int, cutoff: int = DEFAULT_CUTOFF) -> float:
    """Density of one gap residue class from truncated constant sums.

    Keeps the first ``order`` terms of each class sum (gaps up to 6*order) and
    normalizes over everything retained, so the three densities sum to 1.
    """
    if residue not in _VALID_RESIDUES:
        raise ValueError(f"residue must be in {_VALID_RESIDUES}, got {residue}")
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    values = {g: hl_single_gap(g, cutoff) for g in range(1, 3 * order + 1)}
    total = sum(values.values())
    wanted = {0: 0, 2: 1, 4: 2}[residue]
    return sum(v for g, v in values.items() if g % 3 == wanted) / total


def _index_starts(residues: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Cumulative residue classes mod 3 and the per-position index start offsets.

    Index i_j may reuse i_{j-1} only when the cumulative class steps from 0 up
    to 1 or 2, which keeps the offsets 3 i_j + c_j strictly increasing; in all
    other cases it starts at i_{j-1} + 1.  Position 1 behaves as if following a
    virtual (i_0, c_0) = (0, 0).
    """
    cums = []
    total = 0
    for r in residues:
        total += r // 2
        cums.append(total % 3)
    prev = [0] + cums[:-1]
    starts = tuple(0 if (a == 0 and b != 0) else 1 for a, b in zip(prev, cums))
    return tuple(cums), starts


def block_density_numerator(
    residues: tuple[int, ...], order: int, cutoff: int = DEFAULT_CUTOFF
) -> float:
    """Truncated sum of Hardy-Littlewood constants over all offset tuples
    congruent to the block, each index taking its first ``order`` values."""
    residues = _check_residues(residues)
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    verdict = is_admissible_gap_block(residues)
    if not verdict.is_admissible:
        raise ValueError(f"density undefined for forbidden block {residues}")
    cums, starts = _index_starts(residues)

    def expand(j: int, prev_index: int, offsets: tuple[int, ...]) -> float:
        if j == len(residues):
            return hl_constant(offsets, cutoff).value
        first = prev_index + starts[j]
        total = 0.0
        for i in range(first, first + order):
            total += expand(j + 1, i, offsets + (3 * i + cums[j],))
        return total

    return expand(0, 0, ())


@lru_cache(maxsize=None)
def _normalization(m: int, order: int, cutoff: int) -> float:
    admissible, _ = enumerate_gap_blocks(m)
    return sum(block_density_numerator(block, order, cutoff) for block in admissible)


def block_density(
    residues: tuple[int, ...], order: int, cutoff: int = DEFAULT_CUTOFF
) -> float:
    """Truncated density of an admissible block, normalized over all admissible
    blocks of the same size at the same truncation order."""
    residues = _check_residues(residues)
    numerator = block_density_numerator(residues, order, cutoff)
    return numerator / _normalization(len(residues), order, cutoff)
