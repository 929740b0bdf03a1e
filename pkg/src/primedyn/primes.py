"""Deterministic prime generation and the logarithmic-integral baseline."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

# Odd numbers covered per sieve segment. 1<<18 odds -> 256 KiB working mask,
# small enough to stay cache-resident while keeping per-segment overhead low.
DEFAULT_SEGMENT_ODDS = 1 << 18


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``upper_bound``, in ascending order."""

    upper_bound: int
    primes: np.ndarray  # int64, strictly increasing

    @property
    def count(self) -> int:
        return int(self.primes.size)

    def __len__(self) -> int:
        return self.count


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def sieve_upto(n: int, segment_odds: int = DEFAULT_SEGMENT_ODDS) -> PrimeTable:
    """Segmented sieve of Eratosthenes over [2, n].

    Memory is proportional to the segment size, not to ``n``; the result is
    identical for every segment size.
    """
    n = int(n)
    if n < 2:
        raise ValueError(f"empty range: sieve_upto requires n >= 2, got {n}")
    base = _simple_sieve(math.isqrt(n))
    odd_base = base[base > 2]
    chunks = [np.array([2], dtype=np.int64)]
    span = 2 * segment_odds
    low = 3
    while low <= n:
        high = min(low + span, n + 2)  # exclusive, odd-aligned
        count = (high - low + 1) // 2
        mask = np.ones(count, dtype=bool)
        for p in odd_base:
            p = int(p)
            start = max(p * p, ((low + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start >= high:
                continue
            mask[(start - low) // 2 :: p] = False
        chunks.append(low + 2 * np.flatnonzero(mask).astype(np.int64))
        low = high if high % 2 == 1 else high + 1
    primes = np.concatenate(chunks)
    return PrimeTable(upper_bound=n, primes=primes[primes <= n])


def nth_prime_bound(n: int) -> int:
    """Upper bound for the n-th prime: n(log n + log log n) for n >= 6."""
    if n < 6:
        return 13
    x = float(n)
    bound = x * (math.log(x) + math.log(math.log(x)))
    if bound > 2**62:
        raise ValueError(f"prime bound estimate overflows for n={n}")
    return int(bound) + 1


def first_n_primes(n: int, segment_odds: int = DEFAULT_SEGMENT_ODDS) -> PrimeTable:
    """Exactly the first ``n`` primes (sieve with an over-allocating bound, retry on shortfall)."""
    n = int(n)
    if n < 1:
        raise ValueError(f"first_n_primes requires n >= 1, got {n}")
    bound = nth_prime_bound(n)
    while True:
        table = sieve_upto(bound, segment_odds=segment_odds)
        if table.count >= n:
            primes = table.primes[:n]
            return PrimeTable(upper_bound=int(primes[-1]), primes=primes)
        if bound > 2**62:
            raise ValueError(f"prime bound estimate overflows for n={n}")
        bound = bound + bound // 4 + 16


def logarithmic_integral(x: float) -> float:
    """Offset logarithmic integral: the integral of dt/log(t) from 2 to x."""
    x = float(x)
    if x < 2:
        raise ValueError(f"logarithmic_integral requires x >= 2, got {x}")
    if x == 2:
        return 0.0
    value, _ = quad(lambda t: 1.0 / math.log(t), 2.0, x, epsabs=1e-9, epsrel=1e-12, limit=200)
    return value
