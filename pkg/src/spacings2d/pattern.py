"""Planar point patterns in axis-aligned rectangular windows."""
from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EmptyPatternError, ParseError


@dataclass(frozen=True)
class Window:
    x0: float
    x1: float
    y0: float
    y1: float

    def __post_init__(self):
        for v in (self.x0, self.x1, self.y0, self.y1):
            if not math.isfinite(v):
                raise DomainError(f"window bounds must be finite, got {self}")
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise DomainError(f"window must satisfy x0 < x1 and y0 < y1, got {self}")

    @classmethod
    def unit(cls) -> Window:
        return cls(0.0, 1.0, 0.0, 1.0)

    @classmethod
    def parse(cls, text: str) -> Window:
        """Parse ``"x0:x1,y0:y1"``."""
        try:
            xs, ys = text.split(",")
            x0, x1 = (float(s) for s in xs.split(":"))
            y0, y1 = (float(s) for s in ys.split(":"))
        except ValueError:
            raise ValueError(f"window must look like x0:x1,y0:y1, got {text!r}") from None
        return cls(x0, x1, y0, y1)

    @property
    def is_unit(self) -> bool:
        return (self.x0, self.x1, self.y0, self.y1) == (0.0, 1.0, 0.0, 1.0)

    def contains(self, x: float, y: float) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1


@dataclass(frozen=True, eq=False)
class PointPattern:
    """``m >= 1`` events in a closed window, kept as a read-only (m, 2) array."""

    window: Window
    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64, copy=True).reshape(-1, 2)
        if pts.shape[0] == 0:
            raise EmptyPatternError("point pattern has no points")
        if not np.isfinite(pts).all():
            raise DomainError("point coordinates must be finite")
        w = self.window
        inside = (pts[:, 0] >= w.x0) & (pts[:, 0] <= w.x1) & (pts[:, 1] >= w.y0) & (pts[:, 1] <= w.y1)
        if not inside.all():
            k = int(np.argmin(inside))
            x, y = pts[k]
            raise DomainError(f"point {k + 1} ({x!r}, {y!r}) lies outside the window {w}")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def m(self) -> int:
        return self.points.shape[0]

    @property
    def x(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.points[:, 1]

    def __len__(self):
        return self.m

    def __eq__(self, other):
        if not isinstance(other, PointPattern):
            return NotImplemented
        return self.window == other.window and np.array_equal(self.points, other.points)

    __hash__ = None


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def load_pattern(source, window: Window) -> PointPattern:
    """Read ``x,y`` lines from a text stream (or string).

    A single header line is skipped when its first field is not numeric.
    Blank lines are ignored.  Line numbers in errors are 1-based file lines.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    points = []
    seen_first = False
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split(",")
        if not seen_first:
            seen_first = True
            if not _is_number(fields[0].strip()):
                continue
        if len(fields) != 2:
            raise ParseError(lineno, f"expected two comma-separated values, got {line!r}")
        try:
            x, y = float(fields[0]), float(fields[1])
        except ValueError:
            raise ParseError(lineno, f"cannot parse {line!r} as two reals") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ParseError(lineno, f"non-finite coordinate in {line!r}")
        if not window.contains(x, y):
            raise DomainError(f"point {len(points) + 1} ({x!r}, {y!r}) on line {lineno} lies outside the window {window}")
        points.append((x, y))
    if not points:
        raise EmptyPatternError("input contains no data lines")
    return PointPattern(window, np.array(points))


def rescale_to_unit(pattern: PointPattern) -> PointPattern:
    w = pattern.window
    if w.is_unit:
        return pattern
    x = (pattern.x - w.x0) / (w.x1 - w.x0)
    y = (pattern.y - w.y0) / (w.y1 - w.y0)
    # rounding can push an edge point a hair outside [0, 1]
    pts = np.clip(np.column_stack([x, y]), 0.0, 1.0)
    return PointPattern(Window.unit(), pts)
