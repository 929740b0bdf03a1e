"""Chaos-game rendering of symbol streams and box-counting dimension."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .sequences import SymbolSequence

TRIANGLE = ((0.0, 0.0), (1.0, 0.0), (0.5, 1.0))
SQUARE = ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0))


@dataclass(frozen=True)
class IFSConfig:
    """Vertex polygon, contraction factor, raster width, and burn-in length."""

    vertex_count: int = 4
    contraction: float = 0.5
    width: int = 1024
    burn_in: int = 100

    def __post_init__(self) -> None:
        if self.vertex_count not in (3, 4):
            raise ValueError(f"vertex_count must be 3 or 4, got {self.vertex_count}")
        if not 0.0 < self.contraction < 1.0:
            raise ValueError(f"contraction must be in (0, 1), got {self.contraction}")
        if self.width < 16:
            raise ValueError(f"width must be >= 16, got {self.width}")
        if self.burn_in < 0:
            raise ValueError(f"burn_in must be >= 0, got {self.burn_in}")

    @property
    def vertices(self) -> np.ndarray:
        return np.array(TRIANGLE if self.vertex_count == 3 else SQUARE)


@dataclass(frozen=True)
class OccupancyGrid:
    """Raster of attractor visits: counts[iy, ix] with y increasing upward."""

    width: int
    counts: np.ndarray
    points_plotted: int

    @property
    def occupied(self) -> np.ndarray:
        return self.counts > 0


def chaos_game_render(source: SymbolSequence, config: IFSConfig) -> OccupancyGrid:
    """Iterate x <- x + c (v[s] - x) from the polygon centroid, one step per
    symbol, discard the first burn_in points, and bin the rest on a WxW grid."""
    if source.p != config.vertex_count:
        raise ValueError(
            f"alphabet size {source.p} does not match vertex count {config.vertex_count}"
        )
    if len(source) <= config.burn_in:
        raise ValueError(f"need more than burn_in={config.burn_in} symbols, got {len(source)}")
    verts = config.vertices
    c = config.contraction
    targets = verts[source.symbols]
    start = verts.mean(axis=0)
    # x_{t+1} = (1-c) x_t + c v_t is a first-order IIR filter; lfilter keeps
    # the strictly sequential semantics at native speed.
    xs = lfilter([c], [1.0, c - 1.0], targets[:, 0], zi=[(1.0 - c) * start[0]])[0]
    ys = lfilter([c], [1.0, c - 1.0], targets[:, 1], zi=[(1.0 - c) * start[1]])[0]
    xs = xs[config.burn_in :]
    ys = ys[config.burn_in :]
    w = config.width
    ix = np.minimum((xs * w).astype(np.int64), w - 1)
    iy = np.minimum((ys * w).astype(np.int64), w - 1)
    counts = np.bincount(iy * w + ix, minlength=w * w).reshape(w, w)
    return OccupancyGrid(width=w, counts=counts, points_plotted=int(xs.size))


def box_counting_dimension(grid: OccupancyGrid, scales: tuple[int, ...]) -> float:
    """Least-squares slope of log(occupied boxes) against log(1/box size)."""
    if len(scales) < 3:
        raise ValueError(f"need at least 3 scales, got {len(scales)}")
    if any(grid.width % s != 0 for s in scales):
        raise ValueError(f"every scale must divide the width {grid.width}")
    if grid.points_plotted == 0 or not grid.occupied.any():
        raise ValueError("empty grid")
    occ = grid.occupied
    w = grid.width
    boxes = []
    for s in scales:
        boxes.append(occ.reshape(w // s, s, w // s, s).any(axis=(1, 3)).sum())
    slope, _ = np.polyfit(np.log(1.0 / np.asarray(scales, float)), np.log(boxes), 1)
    return float(slope)


def default_scales(width: int) -> tuple[int, ...]:
    scales = [s for s in (4, 8, 16, 32, 64) if width % s == 0 and s < width]
    if len(scales) < 3:
        raise ValueError(f"width {width} too small for default box-counting scales")
    return tuple(scales)


def grid_similarity(g1: OccupancyGrid, g2: OccupancyGrid) -> float:
    """Jaccard index of the two occupied-pixel sets."""
    if g1.width != g2.width:
        raise ValueError(f"grid widths differ: {g1.width} vs {g2.width}")
    a, b = g1.occupied, g2.occupied
    union = np.logical_or(a, b).sum()
    if union == 0:
        return 1.0
    return float(np.logical_and(a, b).sum() / union)


def stray_fraction(subset: OccupancyGrid, superset: OccupancyGrid) -> float:
    """Fraction of subset pixels not covered by the superset render."""
    if subset.width != superset.width:
        raise ValueError(f"grid widths differ: {subset.width} vs {superset.width}")
    occupied = subset.occupied.sum()
    strays = np.logical_and(subset.occupied, ~superset.occupied).sum()
    return float(strays / occupied)


def to_pgm(grid: OccupancyGrid) -> bytes:
    """Binary PGM (P5, maxval 255) with log-scaled visit counts, y up."""
    counts = grid.counts.astype(np.float64)
    top = counts.max()
    img = np.zeros_like(counts) if top <= 0 else 255.0 * np.log1p(counts) / np.log1p(top)
    raster = img[::-1, :].astype(np.uint8)  # row 0 at the top of the image
    header = f"P5\n{grid.width} {grid.width}\n255\n".encode()
    return header + raster.tobytes()


def points_csv(source: SymbolSequence, config: IFSConfig) -> str:
    """Optional (x, y) point cloud export of the rendered trajectory."""
    from .fileio import fmt

    verts = config.vertices
    c = config.contraction
    targets = verts[source.symbols]
    start = verts.mean(axis=0)
    xs = lfilter([c], [1.0, c - 1.0], targets[:, 0], zi=[(1.0 - c) * start[0]])[0]
    ys = lfilter([c], [1.0, c - 1.0], targets[:, 1], zi=[(1.0 - c) * start[1]])[0]
    lines = ["x,y"]
    for x, y in zip(xs[config.burn_in :], ys[config.burn_in :]):
        lines.append(f"{fmt(x)},{fmt(y)}")
    return "\n".join(lines) + "\n"
