"""Null samplers, Monte Carlo p-values, convergence diagnostics and
alternative point-process generators.

Every replicate draws from its own stream keyed by (seed, replicate index),
so results do not depend on ``workers``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import stats

from . import _rng
from .errors import DegenerateStatisticError, InfeasibleError
from .gfun import GFunction
from .moments import MomentSet
from .pattern import PointPattern, Window, rescale_to_unit
from .spacings import SpacingsGrid, axis_spacings, compute_grid
from .stat import ExponentialSamplePair, _kernel_sum, decompose_sr, standardize, v2_statistic

SAMPLERS = ("uniform", "moran")
KINDS = ("uniform", "matern_cluster", "ssi", "gradient")
MIN_MC_B = 99
MIN_DIAGNOSTIC_REPS = 200
SSI_MAX_REJECTIONS = 1_000_000

_KIND_PARAMS = {
    "uniform": (),
    "matern_cluster": ("parent_count", "offspring_mean", "radius"),
    "ssi": ("inhibition_distance",),
    "gradient": ("beta",),
}


@dataclass(frozen=True)
class NormalityReport:
    n: int
    reps: int
    g_name: str
    mean_z: float
    var_z: float
    ks_distance: float
    seed: int

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    m: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        missing = [p for p in _KIND_PARAMS[self.kind] if p not in self.params]
        if missing:
            raise ValueError(f"{self.kind} needs parameters {missing}")
        for name in _KIND_PARAMS[self.kind]:
            value = self.params[name]
            # beta = 0 and inhibition_distance = 0 are the uniform special cases
            if name in ("beta", "inhibition_distance"):
                ok = value >= 0
            else:
                ok = value > 0
            if not (ok and math.isfinite(value)):
                raise ValueError(f"{self.kind} parameter {name} out of range: {value!r}")
        if self.kind == "matern_cluster" and self.params["parent_count"] < 1:
            raise ValueError("parent_count must be >= 1")


def _map(fn, count, workers=1):
    if workers <= 1 or count < 2:
        return [fn(k) for k in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(count), chunksize=max(1, count // (4 * workers))))


# -- null samplers -----------------------------------------------------------


def sample_uniform_pattern(m: int, seed: int) -> PointPattern:
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    rng = _rng.stream(seed, _rng.PATTERN)
    return PointPattern(Window.unit(), rng.random((m, 2)))


def moran_grid(ex, ey) -> SpacingsGrid:
    """Spacings ``E_i / sum(E)`` on each axis from given exponential draws."""
    ex = np.asarray(ex, dtype=np.float64)
    ey = np.asarray(ey, dtype=np.float64)
    return SpacingsGrid(ex / ex.sum(), ey / ey.sum())


def sample_null_spacings_moran(n: int, seed: int) -> SpacingsGrid:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    ex, ey = _rng.stream(seed, _rng.MORAN).standard_exponential((2, n))
    return moran_grid(ex, ey)


def _null_spacings(n, rng, sampler):
    """(dx, dy) of one null replicate; same arithmetic as the public samplers."""
    if sampler == "moran":
        ex, ey = rng.standard_exponential((2, n))
        return ex / ex.sum(), ey / ey.sum()
    pts = rng.random((n - 1, 2))
    return axis_spacings(pts[:, 0]), axis_spacings(pts[:, 1])


def null_statistics(g: GFunction, n: int, reps: int, seed: int, sampler: str = "moran", workers: int = 1) -> np.ndarray:
    """``reps`` draws of V at size n under the null; entry k uses stream k."""
    if sampler not in SAMPLERS:
        raise ValueError(f"sampler must be one of {SAMPLERS}, got {sampler!r}")
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")

    def one(k):
        dx, dy = _null_spacings(n, _rng.stream(seed, _rng.NULL_REPLICATE, n, k), sampler)
        # equals v2_statistic(SpacingsGrid(dx, dy), g) without the wrapper overhead
        return _kernel_sum(n * dx, n * dy, g)

    return np.array(_map(one, reps, workers))


# -- Monte Carlo test --------------------------------------------------------


def _oriented(z, sided):
    if sided == "two":
        return np.abs(z)
    if sided == "upper":
        return z
    if sided == "lower":
        return -z
    raise ValueError(f"sided must be one of two/upper/lower, got {sided!r}")


def mc_pvalue(
    pattern: PointPattern,
    g: GFunction,
    moments: MomentSet,
    B: int,
    seed: int,
    sampler: str = "moran",
    sided: str = "two",
    workers: int = 1,
) -> float:
    """Add-one Monte Carlo p-value ``(1 + #{z_b >= z_obs}) / (B + 1)`` on |z| (two-sided)."""
    if B < MIN_MC_B:
        raise ValueError(f"B must be >= {MIN_MC_B}, got {B}")
    if moments.degenerate:
        raise DegenerateStatisticError("limiting variance is zero; no Monte Carlo test")
    grid = compute_grid(rescale_to_unit(pattern))
    n = grid.n
    z_obs = _oriented(standardize(v2_statistic(grid, g), n, moments), sided)
    null_v = null_statistics(g, n, B, seed, sampler, workers)
    z_null = _oriented((null_v - n * n * moments.mu) / (n**1.5 * math.sqrt(moments.sigma2)), sided)
    return (1 + int(np.count_nonzero(z_null >= z_obs))) / (B + 1)


# -- diagnostics -------------------------------------------------------------


def normality_diagnostic(
    g: GFunction, moments: MomentSet, n: int, reps: int, seed: int, workers: int = 1
) -> NormalityReport:
    if reps < MIN_DIAGNOSTIC_REPS:
        raise ValueError(f"reps must be >= {MIN_DIAGNOSTIC_REPS}, got {reps}")
    if moments.degenerate:
        raise DegenerateStatisticError("limiting variance is zero; nothing converges to a normal law")
    v = null_statistics(g, n, reps, seed, "moran", workers)
    z = (v - n * n * moments.mu) / (n**1.5 * math.sqrt(moments.sigma2))
    return NormalityReport(
        n=n,
        reps=reps,
        g_name=g.name,
        mean_z=float(z.mean()),
        var_z=float(z.var(ddof=1)),
        ks_distance=float(stats.kstest(z, "norm").statistic),
        seed=seed,
    )


def remainder_diagnostic(
    g: GFunction, moments: MomentSet, n_grid, reps: int, seed: int, workers: int = 1
) -> list[tuple[int, float]]:
    """Mean of ``R_n**2 / n**3`` over ``reps`` exponential sample pairs, per n."""
    n_grid = [int(n) for n in n_grid]
    if not n_grid or any(b <= a for a, b in zip(n_grid, n_grid[1:])) or n_grid[0] < 1:
        raise ValueError(f"n_grid must be strictly ascending positive integers, got {n_grid}")
    if reps < MIN_DIAGNOSTIC_REPS:
        raise ValueError(f"reps must be >= {MIN_DIAGNOSTIC_REPS}, got {reps}")
    out = []
    for n in n_grid:

        def one(k, n=n):
            sample = ExponentialSamplePair.draw(n, _rng.stream(seed, _rng.EXP_PAIR, n, k))
            _, r = decompose_sr(sample, g, moments)
            return r * r / n**3

        out.append((n, math.fsum(_map(one, reps, workers)) / reps))
    return out


# -- alternatives ------------------------------------------------------------


def _disk_offspring(rng, centers, radius):
    """One offspring per center, uniform in the disk and redrawn until inside the unit square."""
    out = np.empty_like(centers)
    todo = np.arange(len(centers))
    while todo.size:
        r = radius * np.sqrt(rng.random(todo.size))
        theta = 2.0 * math.pi * rng.random(todo.size)
        cand = centers[todo] + np.column_stack([r * np.cos(theta), r * np.sin(theta)])
        ok = ((cand >= 0.0) & (cand <= 1.0)).all(axis=1)
        out[todo[ok]] = cand[ok]
        todo = todo[~ok]
    return out


def _matern_cluster(rng, m, parent_count, offspring_mean, radius):
    parents = rng.random((int(round(parent_count)), 2))
    counts = rng.poisson(offspring_mean, len(parents))
    pool = _disk_offspring(rng, np.repeat(parents, counts, axis=0), radius)
    if len(pool) > m:
        pool = pool[np.sort(rng.choice(len(pool), m, replace=False))]
    elif len(pool) < m:
        extra = parents[rng.integers(len(parents), size=m - len(pool))]
        pool = np.concatenate([pool, _disk_offspring(rng, extra, radius)])
    return pool


def _ssi(rng, m, distance, batch=1024):
    accepted = np.empty((m, 2))
    count = 0
    rejections = 0
    d2 = distance * distance
    props = rng.random((batch, 2))
    pos = 0
    while count < m:
        if pos >= len(props):
            props = rng.random((batch, 2))
            pos = 0
        cand = props[pos:]
        if count and distance > 0:
            diff = cand[:, None, :] - accepted[None, :count, :]
            ok = (diff * diff).sum(axis=2).min(axis=1) >= d2
            hits = np.flatnonzero(ok)
        else:
            hits = np.zeros(1, dtype=np.intp)
        skipped = len(cand) if hits.size == 0 else int(hits[0])
        rejections += skipped
        if rejections >= SSI_MAX_REJECTIONS:
            raise InfeasibleError(
                f"inhibition distance {distance!r} is infeasible: {SSI_MAX_REJECTIONS} consecutive "
                f"rejections after placing {count} of {m} points"
            )
        if hits.size == 0:
            pos = len(props)
            continue
        accepted[count] = cand[skipped]
        count += 1
        rejections = 0
        pos += skipped + 1
    return accepted


def _gradient(rng, m, beta):
    """Density proportional to x**beta on the unit square, by rejection."""
    out = []
    have = 0
    while have < m:
        cand = rng.random((2 * m, 2))
        keep = cand[rng.random(2 * m) <= cand[:, 0] ** beta]
        out.append(keep[: m - have])
        have += len(out[-1])
    return np.concatenate(out)


def generate(spec: GeneratorSpec, seed: int) -> PointPattern:
    """Exactly ``spec.m`` points on the unit square from the requested process."""
    if spec.kind == "uniform":
        return sample_uniform_pattern(spec.m, seed)
    rng = _rng.stream(seed, _rng.GENERATOR)
    p = spec.params
    if spec.kind == "matern_cluster":
        pts = _matern_cluster(rng, spec.m, p["parent_count"], p["offspring_mean"], p["radius"])
    elif spec.kind == "ssi":
        pts = _ssi(rng, spec.m, p["inhibition_distance"])
    else:
        pts = _gradient(rng, spec.m, p["beta"])
    return PointPattern(Window.unit(), pts)


def simulate_pvalues(
    spec: GeneratorSpec,
    g: GFunction,
    moments: MomentSet,
    reps: int,
    B: int,
    seed: int,
    sampler: str = "moran",
    sided: str = "two",
    workers: int = 1,
) -> np.ndarray:
    """Monte Carlo p-values of ``reps`` patterns drawn from ``spec``."""
    if reps < 1:
        raise ValueError(f"reps must be >= 1, got {reps}")

    def one(k):
        pattern = generate(spec, _rng.derive_seed(seed, _rng.OUTER_PATTERN, k))
        return mc_pvalue(pattern, g, moments, B, _rng.derive_seed(seed, _rng.OUTER_NULL, k), sampler, sided)

    return np.array(_map(one, reps, workers))


def power_estimate(
    spec: GeneratorSpec,
    g: GFunction,
    moments: MomentSet,
    level: float,
    reps: int,
    B: int,
    seed: int,
    sampler: str = "moran",
    sided: str = "two",
    workers: int = 1,
) -> float:
    """Fraction of generated patterns rejected at ``level``."""
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level!r}")
    p = simulate_pvalues(spec, g, moments, reps, B, seed, sampler, sided, workers)
    return float(np.mean(p <= level))
