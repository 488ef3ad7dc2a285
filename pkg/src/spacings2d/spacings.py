"""Axis spacings and the grid of two-dimensional spacings (cell areas)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DomainError
from .pattern import PointPattern


@dataclass(frozen=True, eq=False)
class SpacingsGrid:
    """The n x-spacings and n y-spacings of a pattern with ``m = n - 1`` points.

    Cell areas ``dx[i] * dy[j]`` are produced on demand; the n x n grid is
    only materialized by :meth:`areas`.
    """

    dx: np.ndarray
    dy: np.ndarray

    def __post_init__(self):
        dx = np.array(self.dx, dtype=np.float64)
        dy = np.array(self.dy, dtype=np.float64)
        if dx.ndim != 1 or dx.shape != dy.shape or dx.size == 0:
            raise ContractError("dx and dy must be non-empty vectors of equal length")
        dx.setflags(write=False)
        dy.setflags(write=False)
        object.__setattr__(self, "dx", dx)
        object.__setattr__(self, "dy", dy)

    @property
    def n(self) -> int:
        return self.dx.shape[0]

    def area(self, i: int, j: int) -> float:
        """Area of cell (i, j), 0-based."""
        return float(self.dx[i] * self.dy[j])

    def areas(self) -> np.ndarray:
        return np.outer(self.dx, self.dy)

    def __eq__(self, other):
        if not isinstance(other, SpacingsGrid):
            return NotImplemented
        return np.array_equal(self.dx, other.dx) and np.array_equal(self.dy, other.dy)

    __hash__ = None


def axis_spacings(coords) -> np.ndarray:
    """Gaps between sorted coordinates in [0, 1], with 0 and 1 appended.

    Ties give exact zero spacings.
    """
    c = np.asarray(coords, dtype=np.float64).ravel()
    if np.isnan(c).any() or (c < 0.0).any() or (c > 1.0).any():
        raise DomainError("axis coordinates must lie in [0, 1]")
    return np.diff(np.concatenate(([0.0], np.sort(c, kind="stable"), [1.0])))


def compute_grid(pattern: PointPattern) -> SpacingsGrid:
    if not pattern.window.is_unit:
        raise ContractError("compute_grid needs a pattern on the unit window; call rescale_to_unit first")
    return SpacingsGrid(axis_spacings(pattern.x), axis_spacings(pattern.y))


def scaled_spacings(grid: SpacingsGrid) -> tuple[np.ndarray, np.ndarray]:
    """``(n * dx, n * dy)``; their outer product is ``n**2 * A``."""
    n = grid.n
    return n * grid.dx, n * grid.dy
