"""Statistic kernels g applied to the scaled cell areas ``n**2 A_ij``.

Each kernel records which of the four regularity conditions of the
asymptotic normality theorem it satisfies (continuity on [0, inf), finite
second moment, and the two domination conditions).  The flags are asserted,
not checked: the domination functions cannot be verified mechanically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _accel
from .errors import DegenerateSpacingError, UnknownKernelError
from .moments import MomentSet


@dataclass(frozen=True)
class GFunction:
    name: str
    eval: Callable = field(repr=False)
    requires_positive: bool = False
    conditions: tuple = (True, True, True, True)
    closed_moments: MomentSet | None = None
    # location of a derivative jump, used to split quadrature
    kink: float | None = None
    # index of the compiled kernel in _accel; None means use ``eval``
    code: int | None = None
    notes: str = ""

    def __call__(self, t):
        return self.eval(t)


def _neglog(t):
    return -np.log(t)


_EULER = float(np.euler_gamma)
_ZETA2 = math.pi**2 / 6.0

_BUILTINS = {
    "square": GFunction(
        "square",
        eval=np.square,
        closed_moments=MomentSet.build(4.0, 80.0, 8.0, method="closed_form"),
        code=_accel.SQUARE,
    ),
    "absdev": GFunction(
        "absdev",
        eval=lambda t: np.abs(np.asarray(t) - 1.0),
        kink=1.0,
        code=_accel.ABSDEV,
    ),
    "neglog": GFunction(
        "neglog",
        eval=_neglog,
        requires_positive=True,
        # continuous only on (0, inf); covered by the theorem's hypotheses only loosely
        conditions=(False, True, True, True),
        closed_moments=MomentSet.build(2.0 * _EULER, _ZETA2, -1.0, method="closed_form"),
        code=_accel.NEGLOG,
        notes="unbounded at 0; asymptotic normality checked empirically only",
    ),
    "identity": GFunction(
        "identity",
        eval=lambda t: np.asarray(t, dtype=np.float64) * 1.0,
        closed_moments=MomentSet.build(1.0, 1.0, 1.0, method="closed_form"),
        code=_accel.IDENTITY,
        notes="statistic is identically n**2; no test",
    ),
}


def available() -> list[str]:
    return sorted(_BUILTINS)


def builtin(name: str) -> GFunction:
    try:
        return _BUILTINS[name]
    except KeyError:
        raise UnknownKernelError(f"unknown kernel {name!r}; available: {', '.join(available())}") from None


def evaluate(g: GFunction, t: float) -> float:
    t = float(t)
    if not t >= 0.0:
        raise ValueError(f"kernel argument must be non-negative, got {t!r}")
    if g.requires_positive and t == 0.0:
        raise DegenerateSpacingError(f"{g.name} is undefined at 0 (a tied coordinate gave a zero spacing)")
    return float(g.eval(t))
