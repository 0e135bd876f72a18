"""Turns drawn brush strokes into a normalized target density over the arena.

This is the single source of truth for stroke semantics: any client-side
preview must match what these functions produce.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import gaussian_filter

from .core import Vec2

GRID_SIZE = 50
SMOOTH_SIGMA = 1.5  # cells
SMOOTH_TRUNCATE = 4.0  # kernel cut-off, in sigmas
EPS_FLOOR = 1e-6


class Brush(enum.Enum):
    ATTRACT = "attract"
    REPEL = "repel"


@dataclass(frozen=True)
class Stroke:
    brush: Brush
    radius: float  # arena units
    points: tuple[Vec2, ...]

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError(f"stroke radius must be > 0, got {self.radius}")
        if not self.points:
            raise ValueError("stroke needs at least one point")
        for p in self.points:
            if not (p.is_finite() and 0.0 <= p.x <= 1.0 and 0.0 <= p.y <= 1.0):
                raise ValueError(f"stroke point outside arena: {p}")


@dataclass(frozen=True)
class TargetDistribution:
    """Normalized density grid plus the unnormalized layer it was built from.

    `raw` is kept so later strokes can overlay on top of this target.
    `grid[i, j]` covers x in [i/G, (i+1)/G), y in [j/G, (j+1)/G).
    """

    grid: np.ndarray
    raw: np.ndarray
    generation: int = 0

    @property
    def grid_size(self) -> int:
        return self.grid.shape[0]

    @staticmethod
    def uniform(grid_size: int = GRID_SIZE, generation: int = 0) -> "TargetDistribution":
        raw = np.zeros((grid_size, grid_size))
        return smooth_and_normalize(raw, generation=generation)


def cell_centers(grid_size: int) -> np.ndarray:
    """(G, G, 2) array of cell center coordinates; [i, j] -> (x_i, y_j)."""
    c = (np.arange(grid_size) + 0.5) / grid_size
    out = np.empty((grid_size, grid_size, 2))
    out[:, :, 0] = c[:, None]
    out[:, :, 1] = c[None, :]
    return out


def _covered_cells(stroke: Stroke, grid_size: int) -> np.ndarray:
    """Boolean grid of cells whose center lies within `radius` of the stroke path."""
    centers = cell_centers(grid_size)
    cx = centers[:, :, 0]
    cy = centers[:, :, 1]
    covered = np.zeros((grid_size, grid_size), dtype=bool)
    pts = stroke.points
    segments = [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)] or [(pts[0], pts[0])]
    r2 = stroke.radius * stroke.radius
    for a, b in segments:
        dx, dy = b.x - a.x, b.y - a.y
        seg2 = dx * dx + dy * dy
        if seg2 == 0.0:
            d2 = (cx - a.x) ** 2 + (cy - a.y) ** 2
        else:
            t = np.clip(((cx - a.x) * dx + (cy - a.y) * dy) / seg2, 0.0, 1.0)
            d2 = (cx - (a.x + t * dx)) ** 2 + (cy - (a.y + t * dy)) ** 2
        covered |= d2 <= r2
    return covered


def rasterize(
    strokes: list[Stroke],
    base: TargetDistribution | np.ndarray | None = None,
    grid_size: int = GRID_SIZE,
) -> np.ndarray:
    """Stamp strokes onto the base's unnormalized layer (or zeros).

    Each stroke adds +1 (attract) or -1 (repel) to every cell whose center lies
    within its radius of the interpolated path; repeated strokes accumulate.
    """
    if isinstance(base, TargetDistribution):
        raw = base.raw.copy()
    elif base is not None:
        raw = np.array(base, dtype=float, copy=True)
    else:
        raw = np.zeros((grid_size, grid_size))
    for stroke in strokes:
        sign = 1.0 if stroke.brush is Brush.ATTRACT else -1.0
        raw[_covered_cells(stroke, raw.shape[0])] += sign
    return raw


def smooth_and_normalize(
    raw: np.ndarray,
    sigma: float = SMOOTH_SIGMA,
    floor: float = EPS_FLOOR,
    generation: int = 0,
) -> TargetDistribution:
    """Gaussian-smooth the signed layer, floor it, and normalize to a density.

    An empty or all-repel canvas is not an error: it yields the uniform density.
    """
    if not np.all(np.isfinite(raw)):
        raise ValueError("raw layer contains non-finite values")
    smoothed = gaussian_filter(raw, sigma=sigma, truncate=SMOOTH_TRUNCATE, mode="reflect")
    clamped = np.maximum(smoothed, floor)
    grid = clamped / clamped.sum()
    return TargetDistribution(grid=grid, raw=np.array(raw, dtype=float, copy=True), generation=generation)


def validate_density(grid: np.ndarray, tol: float = 1e-9) -> None:
    if np.any(grid <= 0):
        raise ValueError("density has non-positive cells")
    if abs(float(grid.sum()) - 1.0) > tol:
        raise ValueError(f"density sums to {grid.sum()!r}, not 1")


def strokes_from_wire(items: list[dict]) -> list[Stroke]:
    """Parse the wire-format stroke list; raises ValueError on malformed input."""
    strokes = []
    for item in items:
        try:
            brush = Brush(item["brush"])
            radius = float(item["radius"])
            points = tuple(Vec2(float(x), float(y)) for x, y in item["points"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed stroke: {exc}") from exc
        strokes.append(Stroke(brush=brush, radius=radius, points=points))
    return strokes


def strokes_to_wire(strokes: list[Stroke]) -> list[dict]:
    return [
        {
            "brush": s.brush.value,
            "radius": s.radius,
            "points": [[p.x, p.y] for p in s.points],
        }
        for s in strokes
    ]


def save_grid_text(path, raw: np.ndarray) -> None:
    """Plain-text grid fixture: G lines of G space-separated reals (row = x index)."""
    np.savetxt(path, raw, fmt="%.17g")


def load_grid_text(path) -> np.ndarray:
    grid = np.loadtxt(path)
    if grid.ndim != 2 or grid.shape[0] != grid.shape[1]:
        raise ValueError(f"expected a square grid in {path}")
    return grid
