"""The additive statistic V = sum_ij g(n**2 A_ij), its exponential twin G_n,
standardization, the asymptotic test, and the S_n / R_n split."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.stats import norm

from . import _accel, _rng
from .errors import ContractError, DegenerateSpacingError, DegenerateStatisticError
from .gfun import GFunction
from .moments import Estimate, MomentSet
from .pattern import PointPattern, rescale_to_unit
from .spacings import SpacingsGrid, compute_grid, scaled_spacings

SIDES = ("two", "upper", "lower")
SMALL_SAMPLE_M = 50


@dataclass(frozen=True, eq=False)
class ExponentialSamplePair:
    xs: np.ndarray
    ys: np.ndarray
    xbar: float
    ybar: float

    @classmethod
    def from_arrays(cls, xs, ys) -> ExponentialSamplePair:
        xs = np.array(xs, dtype=np.float64).ravel()
        ys = np.array(ys, dtype=np.float64).ravel()
        if xs.size == 0 or xs.shape != ys.shape:
            raise ContractError("xs and ys must be non-empty and of equal length")
        if not ((xs > 0).all() and (ys > 0).all()):
            raise ContractError("exponential samples must be strictly positive")
        xs.setflags(write=False)
        ys.setflags(write=False)
        return cls(xs, ys, float(xs.mean()), float(ys.mean()))

    @classmethod
    def draw(cls, n: int, rng: np.random.Generator) -> ExponentialSamplePair:
        xs, ys = rng.standard_exponential((2, n))
        return cls.from_arrays(xs, ys)

    @property
    def n(self) -> int:
        return self.xs.shape[0]


@dataclass(frozen=True)
class TestResult:
    __test__ = False  # not a pytest class

    statistic: float
    n: int
    z: float
    p_asymptotic: float
    g_name: str
    moments: MomentSet
    sided: str = "two"
    p_monte_carlo: float | None = None
    warnings: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["moments"] = self.moments.to_dict()
        d["warnings"] = list(self.warnings)
        return d


def _kernel_sum(u, v, g: GFunction) -> float:
    if g.requires_positive and ((u <= 0).any() or (v <= 0).any()):
        raise DegenerateSpacingError(f"{g.name} is undefined at 0 (a tied coordinate gave a zero spacing)")
    return _accel.pair_sum(u, v, g.code, g.eval)


def v2_statistic(grid: SpacingsGrid, g: GFunction) -> float:
    u, v = scaled_spacings(grid)
    return _kernel_sum(u, v, g)


def gn_statistic(sample: ExponentialSamplePair, g: GFunction) -> float:
    return _kernel_sum(sample.xs / sample.xbar, sample.ys / sample.ybar, g)


def standardize(v: float, n: int, moments: MomentSet) -> float:
    if moments.degenerate:
        raise DegenerateStatisticError("limiting variance is zero; the statistic cannot be standardized")
    return (v - n * n * moments.mu) / (n**1.5 * math.sqrt(moments.sigma2))


def p_value(z: float, sided: str = "two") -> float:
    if sided == "two":
        return float(min(1.0, 2.0 * norm.sf(abs(z))))
    if sided == "upper":
        return float(norm.sf(z))
    if sided == "lower":
        return float(norm.cdf(z))
    raise ValueError(f"sided must be one of {SIDES}, got {sided!r}")


def asymptotic_test(pattern: PointPattern, g: GFunction, moments: MomentSet, sided: str = "two") -> TestResult:
    if sided not in SIDES:
        raise ValueError(f"sided must be one of {SIDES}, got {sided!r}")
    grid = compute_grid(rescale_to_unit(pattern))
    v = v2_statistic(grid, g)
    z = standardize(v, grid.n, moments)
    warnings = ("small-sample",) if pattern.m < SMALL_SAMPLE_M else ()
    return TestResult(
        statistic=v,
        n=grid.n,
        z=z,
        p_asymptotic=p_value(z, sided),
        g_name=g.name,
        moments=moments,
        sided=sided,
        warnings=warnings,
    )


def decompose_sr(sample: ExponentialSamplePair, g: GFunction, moments: MomentSet) -> tuple[float, float]:
    """Split ``G_n - n**2 mu`` into the U-statistic part S_n and the remainder R_n.

    ``S_n = sum_ij [g(x_i y_j) - mu - c (x_i - 1) - c (y_j - 1)]``; the linear
    terms are summed in closed form.
    """
    n = sample.n
    mu, c = moments.mu, moments.c
    raw = _kernel_sum(sample.xs, sample.ys, g)
    lin = math.fsum(sample.xs - 1.0) + math.fsum(sample.ys - 1.0)
    s = raw - n * n * mu - c * n * lin
    r = gn_statistic(sample, g) - n * n * mu - s
    return s, r


def lemma1_estimate(g: GFunction, t: float, n: int, reps: int, seed: int) -> Estimate:
    """Monte Carlo ``E g(t Xbar Ybar)`` with its standard error.

    The mean of n unit exponentials is drawn directly as Gamma(n, 1/n).
    """
    if not t > 0:
        raise ValueError(f"t must be positive, got {t!r}")
    if n < 1 or reps < 2:
        raise ValueError("need n >= 1 and reps >= 2")
    rng = _rng.stream(seed, _rng.LEMMA1)
    xbar, ybar = rng.gamma(n, 1.0 / n, size=(2, reps))
    with np.errstate(all="ignore"):
        vals = np.asarray(g.eval(t * xbar * ybar), dtype=np.float64)
    if not np.isfinite(vals).all():
        raise DegenerateSpacingError(f"{g.name}: kernel hit an invalid argument")
    return Estimate(float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(reps)))
