"""Symbolic sequences built from primes: residue classes, transitions, gap residues."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .primes import PrimeTable

SYM_MAGIC = b"PDSYMSEQ"

# The two positive-density residue classes for each supported modulus,
# (class encoded 0, class encoded 1), plus the finitely many primes outside them.
_TWO_CLASS = {3: (1, 2), 4: (1, 3), 6: (1, 5)}

TRANSITION_LABELS = {0: "AA", 1: "AB", 2: "BA", 3: "BB"}
GAP_LABELS_MOD6 = {0: "A", 1: "B", 2: "C"}  # sexy-like, twin-like, cousin-like


@dataclass(frozen=True)
class SymbolSequence:
    """A finite sequence over the alphabet {0, ..., p-1} plus provenance."""

    p: int
    symbols: np.ndarray  # uint8
    labels: dict[int, str] | None = None
    provenance: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.p < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.p}")
        if self.p > 256:
            raise ValueError(f"alphabet size must fit in one byte, got {self.p}")
        symbols = np.ascontiguousarray(self.symbols, dtype=np.uint8)
        if symbols.size < 1:
            raise ValueError("symbol sequence must be non-empty")
        if symbols.max() >= self.p:
            raise ValueError("symbol out of range for alphabet")
        object.__setattr__(self, "symbols", symbols)

    def __len__(self) -> int:
        return int(self.symbols.size)

    def label(self, symbol: int) -> str:
        if self.labels and symbol in self.labels:
            return self.labels[symbol]
        return str(symbol)

    def frequencies(self) -> np.ndarray:
        return np.bincount(self.symbols, minlength=self.p) / len(self)


def prime_residues(primes: PrimeTable, k: int) -> SymbolSequence:
    """Sequence of p(n) mod k, re-encoded onto the residues actually occurring.

    Residues are mapped to 0..p-1 in ascending residue order.  Transient
    residues (primes dividing k) are kept, so e.g. for k=4 the single prime 2
    contributes a third symbol.
    """
    if k < 2:
        raise ValueError(f"modulus must be >= 2, got {k}")
    if primes.count < 1:
        raise ValueError("empty prime table")
    residues = primes.primes % k
    occurring = np.unique(residues)
    symbols = np.searchsorted(occurring, residues).astype(np.uint8)
    labels = {i: str(int(r)) for i, r in enumerate(occurring)}
    return SymbolSequence(
        p=len(occurring),
        symbols=symbols,
        labels=labels,
        provenance={"kind": "prime_residues", "modulus": k},
    )


def two_class_sequence(primes: PrimeTable, k: int) -> SymbolSequence:
    """Two-symbol residue sequence for a modulus with exactly two prime classes.

    Drops the finitely many primes outside the two positive-density classes
    (2 for k=4; 3 for k=3; 2 and 3 for k=6).  Symbol 0 is the smaller residue
    class, symbol 1 the larger.
    """
    if k not in _TWO_CLASS:
        raise ValueError(f"unsupported modulus {k}: need k in {sorted(_TWO_CLASS)}")
    lo, hi = _TWO_CLASS[k]
    residues = primes.primes % k
    kept = residues[(residues == lo) | (residues == hi)]
    if kept.size == 0:
        raise ValueError("no primes left after dropping transient residues")
    return SymbolSequence(
        p=2,
        symbols=(kept == hi).astype(np.uint8),
        labels={0: "A", 1: "B"},
        provenance={"kind": "two_class", "modulus": k, "classes": [lo, hi]},
    )


def transition_sequence(base: SymbolSequence) -> SymbolSequence:
    """Overlapping-pair encoding of a binary sequence onto {AA, AB, BA, BB}.

    Sliding window of width 2, stride 1: output length is len(base) - 1 and
    symbol = 2*s[i] + s[i+1].
    """
    if base.p != 2:
        raise ValueError(f"transition sequence needs a 2-symbol base, got p={base.p}")
    if len(base) < 2:
        raise ValueError("base sequence too short for pair encoding")
    s = base.symbols
    return SymbolSequence(
        p=4,
        symbols=(2 * s[:-1] + s[1:]).astype(np.uint8),
        labels=dict(TRANSITION_LABELS),
        provenance={"kind": "transition", "base": base.provenance},
    )


def gap_residues(primes: PrimeTable, k: int = 6) -> SymbolSequence:
    """Residues mod k of consecutive prime gaps, starting from the gap 5 - 3.

    Gaps from prime 3 onward are all even, so only even residues occur and
    residue 2j is encoded as symbol j.  The single odd gap 3 - 2 is transient
    and discarded.  For k=6 the classes are sexy-like (0), twin-like (2) and
    cousin-like (4), labelled A, B, C.
    """
    if k % 2 != 0:
        raise ValueError(f"gap residue modulus must be even, got {k}")
    if primes.count < 3:
        raise ValueError("need at least three primes for a gap residue sequence")
    start = 1 if int(primes.primes[0]) == 2 else 0
    gaps = np.diff(primes.primes[start:])
    residues = gaps % k
    labels = dict(GAP_LABELS_MOD6) if k == 6 else {j: str(2 * j) for j in range(k // 2)}
    return SymbolSequence(
        p=k // 2,
        symbols=(residues // 2).astype(np.uint8),
        labels=labels,
        provenance={"kind": "gap_residues", "modulus": k},
    )


def write_sequence(path, seq: SymbolSequence) -> None:
    """Write the .sym format: magic, one-line JSON header, one byte per symbol."""
    from .fileio import atomic_write_bytes

    header = {
        "p": seq.p,
        "length": len(seq),
        "labels": None if seq.labels is None else {str(k): v for k, v in seq.labels.items()},
        "provenance": seq.provenance,
    }
    payload = SYM_MAGIC + json.dumps(header, sort_keys=True).encode() + b"\n" + seq.symbols.tobytes()
    atomic_write_bytes(path, payload)


def read_sequence(path) -> SymbolSequence:
    with open(path, "rb") as fh:
        magic = fh.read(len(SYM_MAGIC))
        if magic != SYM_MAGIC:
            raise ValueError(f"cannot read sequence: bad magic in {path}")
        header_line = fh.readline()
        try:
            header = json.loads(header_line)
        except json.JSONDecodeError as exc:
            raise ValueError(f"cannot read sequence: corrupt header in {path}") from exc
        symbols = np.frombuffer(fh.read(), dtype=np.uint8)
    if symbols.size != header["length"]:
        raise ValueError(f"cannot read sequence: truncated payload in {path}")
    labels = header.get("labels")
    return SymbolSequence(
        p=int(header["p"]),
        symbols=symbols,
        labels=None if labels is None else {int(k): v for k, v in labels.items()},
        provenance=header.get("provenance", {}),
    )
