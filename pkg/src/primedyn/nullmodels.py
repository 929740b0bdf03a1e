"""Stochastic baselines: i.i.d. symbol streams, pair-encoded streams, Cramer pseudo-primes."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .primes import PrimeTable
from .sequences import SymbolSequence, TRANSITION_LABELS

# All generators run on PCG64: a named, seedable algorithm with a stable
# cross-platform stream, so seeded statistics are reproducible everywhere.


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class NullSpec:
    """Null-model specification. ``kind`` is one of t1u, t1w, t2, t3.

    t1u: length i.i.d. uniform symbols over an alphabet of size p.
    t1w: length i.i.d. symbols with the given weights.
    t2:  overlapping-pair encoding of a fresh 2-symbol t1 stream
         (weight_a = probability of symbol A).
    t3:  modified Cramer model: each odd x in [3, xmax] is a pseudo-prime
         independently with probability min(1, 2/log x); evens never.
    """

    kind: str
    length: int = 0
    seed: int = 0
    p: int = 2
    weights: tuple[float, ...] = field(default_factory=tuple)
    weight_a: float = 0.5
    xmax: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("t1u", "t1w", "t2", "t3"):
            raise ValueError(f"unknown null model kind {self.kind!r}")
        if self.kind == "t3":
            if self.xmax < 5:
                raise ValueError(f"t3 needs xmax >= 5, got {self.xmax}")
        elif self.length < 1:
            raise ValueError(f"need length >= 1, got {self.length}")
        if self.kind in ("t1u", "t2") and self.p < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.p}")
        if self.kind == "t1w":
            w = np.asarray(self.weights, dtype=float)
            if w.size < 2 or (w < 0).any() or abs(w.sum() - 1.0) > 1e-12:
                raise ValueError("weights must be >= 0 and sum to 1 within 1e-12")
        if self.kind == "t2" and not 0.0 < self.weight_a < 1.0:
            raise ValueError(f"weight_a must be in (0, 1), got {self.weight_a}")


def generate_null(spec: NullSpec) -> SymbolSequence | PrimeTable:
    """Deterministic draw for the given spec: a SymbolSequence, or a pseudo-prime
    table for the Cramer model."""
    rng = _rng(spec.seed)
    prov = {"kind": "null", "model": spec.kind, "seed": spec.seed}
    if spec.kind == "t1u":
        symbols = rng.integers(0, spec.p, size=spec.length)
        return SymbolSequence(p=spec.p, symbols=symbols.astype(np.uint8), provenance=prov)
    if spec.kind == "t1w":
        w = np.asarray(spec.weights, dtype=float)
        symbols = rng.choice(w.size, size=spec.length, p=w / w.sum())
        return SymbolSequence(
            p=w.size,
            symbols=symbols.astype(np.uint8),
            provenance=prov | {"weights": list(map(float, w))},
        )
    if spec.kind == "t2":
        base = (rng.random(spec.length + 1) >= spec.weight_a).astype(np.uint8)
        return SymbolSequence(
            p=4,
            symbols=2 * base[:-1] + base[1:],
            labels=dict(TRANSITION_LABELS),
            provenance=prov | {"weight_a": spec.weight_a},
        )
    # t3: odd integers are pseudo-prime with probability min(1, 2/log x);
    # 3, 5, 7 are always included since 2/log x > 1 there.
    odds = np.arange(3, spec.xmax + 1, 2, dtype=np.int64)
    probs = np.minimum(1.0, 2.0 / np.log(odds))
    keep = rng.random(odds.size) < probs
    return PrimeTable(upper_bound=spec.xmax, primes=odds[keep])


def type2_counts(m: int) -> tuple[int, int]:
    """(admissible, forbidden) block counts for the pair-encoded null model:
    2^(m+1) admissible and 2^m (2^m - 2) forbidden out of 4^m."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    admissible = 2 ** (m + 1)
    forbidden = 2**m * (2**m - 2)
    assert admissible + forbidden == 4**m
    return admissible, forbidden


def type2_recursion_check(m_max: int) -> bool:
    """Verify F(m) = 4 F(m-1) + 2 A(m-1) against the closed form up to m_max."""
    if m_max < 2:
        raise ValueError(f"m_max must be >= 2, got {m_max}")
    for m in range(2, m_max + 1):
        adm_prev, forb_prev = type2_counts(m - 1)
        adm, forb = type2_counts(m)
        if forb != 4 * forb_prev + 2 * adm_prev:
            return False
        if adm != 4**m - forb:
            return False
    return True
