"""Reference chaotic maps and their symbolizations."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sequences import SymbolSequence

MAP_NAMES = ("logistic", "tent", "shift", "gauss")


@dataclass(frozen=True)
class OrbitSpec:
    """An orbit request: which map, where to start, how long.

    ``x0=None`` draws the start point uniformly from (0, 1) with the seed,
    rejecting coarse dyadic rationals whose orbits are exceptional.  The
    shift map ignores x0: its orbit is constructed symbol-exactly from a
    seeded fair-bit stream (see iterate_map).
    """

    kind: str
    length: int
    x0: float | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in MAP_NAMES:
            raise ValueError(f"unknown map {self.kind!r}: need one of {MAP_NAMES}")
        if self.length < 1:
            raise ValueError(f"orbit length must be >= 1, got {self.length}")
        if self.x0 is not None and not 0.0 <= self.x0 <= 1.0:
            raise ValueError(f"x0 must be in [0, 1], got {self.x0}")


def _draw_x0(seed: int) -> float:
    rng = np.random.Generator(np.random.PCG64(seed))
    while True:
        x = float(rng.random())
        # reject dyadic rationals with denominator <= 2^32: their doubling
        # orbits terminate and their logistic orbits hit the fixed point 0
        if x > 0.0 and (x * 2.0**32) != int(x * 2.0**32):
            return x


def _logistic_orbit(x0: float, length: int) -> np.ndarray:
    out = np.empty(length)
    x = x0
    for t in range(length):
        out[t] = x
        x = 4.0 * x * (1.0 - x)
    return out


def _shift_orbit(seed: int, length: int) -> np.ndarray:
    # Floating-point doubling collapses to 0 within ~53 steps, so the orbit is
    # assembled from an i.i.d. fair-bit stream instead: x_t has bit j equal to
    # b_{t+j}, which makes x_{t+1} = 2 x_t mod 1 exact at 53-bit resolution.
    rng = np.random.Generator(np.random.PCG64(seed))
    bits = rng.integers(0, 2, size=length + 53).astype(np.float64)
    windows = np.lib.stride_tricks.sliding_window_view(bits, 53)[:length]
    weights = 0.5 ** np.arange(1, 54)
    return windows @ weights


def iterate_map(spec: OrbitSpec) -> np.ndarray:
    """Orbit of the requested map as an array of length ``spec.length``.

    logistic: x -> 4x(1-x) iterated in double precision.
    tent:     conjugated from a logistic orbit via x = (2/pi) asin(sqrt(y)),
              which is exact for the fully chaotic parameter.
    shift:    symbol-exact doubling orbit from a seeded fair-bit stream.
    gauss:    x -> 1/x mod 1, with 0 mapped to 0.
    """
    if spec.kind == "shift":
        return _shift_orbit(spec.seed, spec.length)
    x0 = spec.x0 if spec.x0 is not None else _draw_x0(spec.seed)
    if spec.kind == "logistic":
        return _logistic_orbit(x0, spec.length)
    if spec.kind == "tent":
        y = _logistic_orbit(math.sin(math.pi * x0 / 2.0) ** 2, spec.length)
        return (2.0 / math.pi) * np.arcsin(np.sqrt(y))
    out = np.empty(spec.length)
    x = x0
    for t in range(spec.length):
        out[t] = x
        x = 0.0 if x == 0.0 else (1.0 / x) % 1.0
    return out


def symbolize_orbit(
    orbit: np.ndarray, p: int, spec: OrbitSpec | None = None
) -> SymbolSequence:
    """Homogeneous p-cell partition of [0, 1]: symbol = floor(p x), clamped at x=1."""
    if p < 2:
        raise ValueError(f"alphabet size must be >= 2, got {p}")
    orbit = np.asarray(orbit, dtype=float)
    if orbit.size < 1:
        raise ValueError("empty orbit")
    if float(orbit.min()) < 0.0 or float(orbit.max()) > 1.0:
        raise ValueError("orbit values must lie in [0, 1]")
    symbols = np.minimum((orbit * p).astype(np.int64), p - 1).astype(np.uint8)
    prov: dict = {"kind": "chaotic_map", "partition": p}
    if spec is not None:
        prov |= {"map": spec.kind, "length": spec.length, "seed": spec.seed, "x0": spec.x0}
    return SymbolSequence(p=p, symbols=symbols, provenance=prov)


def map_sequence(spec: OrbitSpec, p: int) -> SymbolSequence:
    return symbolize_orbit(iterate_map(spec), p, spec)
