"""Limiting moments mu, eta, c and sigma2 = 2 (eta - c**2) of a kernel g.

All moments are integrals against the product of two unit exponential
densities.  The quadrature integrates in two stages: the inner integral
``h(x) = E g(x Y)`` at every outer node, then ``E h(X)``, ``E h(X)**2`` and
``E X h(X)``.  Each half-line is split in two; the finite piece uses
Gauss-Legendre under the map ``y = b u**6`` (absorbs log singularities at the
origin), the infinite piece a shifted Gauss-Laguerre rule.  Kernels with a
kink at ``t*`` split the inner integral at ``y = t*/x``.
"""
from __future__ import annotations

import functools
import math
from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING, NamedTuple

import numpy as np
from scipy.special import roots_laguerre, roots_legendre

from . import _rng
from .errors import DegenerateSpacingError, NumericalConsistencyError, NumericalDomainError

if TYPE_CHECKING:
    from .gfun import GFunction

METHODS = ("closed_form", "quadrature", "monte_carlo")
DEGENERATE_TOL = 1e-12
MIN_NODES = 16
MIN_ORACLE_SAMPLES = 10_000
_MAP_POWER = 6


class Estimate(NamedTuple):
    value: float
    err: float


@dataclass(frozen=True)
class MomentSet:
    mu: float
    eta: float
    c: float
    sigma2: float
    method: str
    err: float = 0.0
    degenerate: bool = False
    # per-moment standard errors (mu, eta, c); monte_carlo only
    se: tuple | None = None

    @classmethod
    def build(cls, mu, eta, c, method, err=0.0, se=None) -> MomentSet:
        if method not in METHODS:
            raise ValueError(f"unknown method {method!r}")
        sigma2 = 2.0 * (eta - c * c)
        if sigma2 < 0.0:
            # sampling noise can push the estimate below zero; that is not a bug
            if sigma2 > -DEGENERATE_TOL or method == "monte_carlo":
                sigma2 = 0.0
            else:
                raise NumericalConsistencyError(f"negative limiting variance {sigma2!r} (eta={eta!r}, c={c!r})")
        return cls(
            mu=float(mu),
            eta=float(eta),
            c=float(c),
            sigma2=float(sigma2),
            method=method,
            err=float(err),
            degenerate=bool(sigma2 < DEGENERATE_TOL),
            se=None if se is None else tuple(float(s) for s in se),
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["se"] is None:
            del d["se"]
        else:
            d["se"] = dict(zip(("mu", "eta", "c"), d["se"]))
        return d


@functools.lru_cache(maxsize=None)
def _base_rules(nodes):
    nl = nodes // 2
    u, wu = roots_legendre(nl)
    u = (u + 1.0) / 2.0
    wu = wu / 2.0
    s, ws = roots_laguerre(nodes - nl)
    return u, wu, s, ws


def _half_line_rule(split, nodes):
    """Nodes/weights for ``int_0^inf f(y) exp(-y) dy`` split at ``split`` (broadcast over rows)."""
    u, wu, s, ws = _base_rules(nodes)
    b = np.asarray(split, dtype=np.float64)[..., None]
    p = _MAP_POWER
    y1 = b * u**p
    w1 = wu * np.exp(-y1) * b * p * u ** (p - 1)
    y2 = b + s
    w2 = ws * np.exp(-b)
    return np.concatenate([y1, y2], axis=-1), np.concatenate([w1, w2], axis=-1)


@functools.lru_cache(maxsize=64)
def _quadrature(g: GFunction, nodes: int) -> dict:
    x, wx = _half_line_rule(1.0, nodes)
    split = g.kink / x if g.kink is not None else np.ones_like(x)
    y, wy = _half_line_rule(split, nodes)
    t = x[:, None] * y
    with np.errstate(all="ignore"):
        vals = np.asarray(g.eval(t), dtype=np.float64)
    bad = ~np.isfinite(vals)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise NumericalDomainError(
            f"{g.name}: non-finite value at quadrature node x={x[i]!r}, y={y[i, j]!r} (t={t[i, j]!r})"
        )
    h = (vals * wy).sum(axis=1)
    hy = (vals * y * wy).sum(axis=1)
    mu = wx @ h
    return {
        "mu": mu,
        "eta": wx @ (h * h) - mu * mu,
        "c": (wx * x) @ h - mu,
        # same covariance with the exponential factors' roles swapped
        "c_swapped": wx @ hy - mu,
    }


def _with_error(g, nodes, key):
    if nodes < MIN_NODES:
        raise ValueError(f"nodes must be >= {MIN_NODES}, got {nodes}")
    full = _quadrature(g, nodes)[key]
    half = _quadrature(g, nodes // 2)[key]
    return Estimate(float(full), float(abs(full - half)))


def mu_quadrature(g: GFunction, nodes: int = 128) -> Estimate:
    """``E g(X Y)`` with error estimate ``|Q(nodes) - Q(nodes // 2)|``."""
    return _with_error(g, nodes, "mu")


def eta_quadrature(g: GFunction, nodes: int = 128) -> Estimate:
    return _with_error(g, nodes, "eta")


def c_quadrature(g: GFunction, nodes: int = 128) -> Estimate:
    return _with_error(g, nodes, "c")


def c_swapped_quadrature(g: GFunction, nodes: int = 128) -> Estimate:
    """``Cov(g(X Y), Y)`` integrating over x innermost; equals :func:`c_quadrature` by symmetry."""
    return _with_error(g, nodes, "c_swapped")


def quadrature_moments(g: GFunction, nodes: int = 128) -> MomentSet:
    parts = [mu_quadrature(g, nodes), eta_quadrature(g, nodes), c_quadrature(g, nodes)]
    return MomentSet.build(*(p.value for p in parts), method="quadrature", err=max(p.err for p in parts))


def compute_moments(g: GFunction, nodes: int = 128) -> MomentSet:
    """Closed-form moments when the kernel carries them, quadrature otherwise."""
    if g.closed_moments is not None:
        return g.closed_moments
    return quadrature_moments(g, nodes)


def mc_oracle(g: GFunction, samples: int = 1_000_000, seed: int = 0) -> MomentSet:
    """Plain Monte Carlo estimates from iid exponential triples (X, Y, Y').

    ``se`` holds the standard error of each estimate (from its influence
    function); ``err`` is three times the largest of them.
    """
    if samples < MIN_ORACLE_SAMPLES:
        raise ValueError(f"samples must be >= {MIN_ORACLE_SAMPLES}, got {samples}")
    rng = _rng.stream(seed, _rng.ORACLE)
    x, y, y2 = rng.standard_exponential((3, samples))
    with np.errstate(all="ignore"):
        a = np.asarray(g.eval(x * y), dtype=np.float64)
        b = np.asarray(g.eval(x * y2), dtype=np.float64)
    if not (np.isfinite(a).all() and np.isfinite(b).all()):
        raise DegenerateSpacingError(f"{g.name}: kernel hit an invalid argument while sampling")
    mu = a.mean()
    ab = a * b
    xa = x * a
    eta = ab.mean() - mu * mu
    c = xa.mean() - mu
    root = math.sqrt(samples)
    se = (
        a.std() / root,
        (ab - 2.0 * mu * a).std() / root,
        (xa - a).std() / root,
    )
    return MomentSet.build(mu, eta, c, method="monte_carlo", err=3.0 * max(se), se=se)
