import math

import numpy as np
import pytest
from scipy import integrate, special

from spacings2d import gfun
from spacings2d.errors import NumericalConsistencyError, NumericalDomainError
from spacings2d.gfun import GFunction
from spacings2d.moments import (
    MomentSet,
    c_quadrature,
    c_swapped_quadrature,
    compute_moments,
    eta_quadrature,
    mc_oracle,
    mu_quadrature,
    quadrature_moments,
)


def ek(k):
    """E X**k for a unit exponential."""
    return math.factorial(k)


SQUARE_ORACLE = {
    "mu": ek(2) * ek(2),
    "eta": ek(4) * ek(2) ** 2 - (ek(2) * ek(2)) ** 2,
    "c": ek(3) * ek(2) - ek(2) * ek(2),
}
# E[-ln X] = -digamma(1), Var ln X = trigamma(1), E[X ln X] = digamma(2)
NEGLOG_ORACLE = {
    "mu": -2 * special.digamma(1.0),
    "eta": special.polygamma(1, 1.0),
    "c": -(special.digamma(2.0) - special.digamma(1.0)),
}
IDENTITY_ORACLE = {"mu": 1.0, "eta": ek(2) - 1.0, "c": ek(2) - 1.0}


def absdev_oracle():
    """Independent route: E|xY - 1| = 1 - x + 2x exp(-1/x), then adaptive quadrature in x."""

    def h(x):
        return 1.0 - x + 2.0 * x * math.exp(-1.0 / x) if x > 0 else 1.0

    def q(f):
        return integrate.quad(lambda x: f(x) * math.exp(-x), 0, np.inf, epsabs=1e-13, epsrel=1e-13, limit=200)[0]

    mu = q(h)
    return {"mu": mu, "eta": q(lambda x: h(x) ** 2) - mu * mu, "c": q(lambda x: x * h(x)) - mu}


def test_oracle_values_match_stated_constants():
    assert SQUARE_ORACLE == {"mu": 4, "eta": 80, "c": 8}
    assert NEGLOG_ORACLE["mu"] == pytest.approx(1.1544313, abs=1e-7)
    assert NEGLOG_ORACLE["eta"] == pytest.approx(1.6449341, abs=1e-7)
    assert NEGLOG_ORACLE["c"] == pytest.approx(-1.0, abs=1e-14)


def test_absdev_inner_integral_formula():
    rng = np.random.default_rng(5)
    y = rng.standard_exponential(2_000_000)
    for x in (0.3, 1.0, 2.5):
        est = np.abs(x * y - 1).mean()
        se = np.abs(x * y - 1).std() / math.sqrt(y.size)
        assert abs(est - (1 - x + 2 * x * math.exp(-1 / x))) < 4 * se


@pytest.mark.parametrize(
    "name, oracle, tol",
    [("square", SQUARE_ORACLE, 1e-6), ("identity", IDENTITY_ORACLE, 1e-9), ("neglog", NEGLOG_ORACLE, 1e-5)],
)
def test_quadrature_matches_closed_forms(name, oracle, tol):
    g = gfun.builtin(name)
    assert mu_quadrature(g, 128).value == pytest.approx(oracle["mu"], abs=tol)
    assert eta_quadrature(g, 128).value == pytest.approx(oracle["eta"], abs=tol * (100 if name == "square" else 1))
    assert c_quadrature(g, 128).value == pytest.approx(oracle["c"], abs=tol * (10 if name == "square" else 1))


def test_quadrature_matches_adaptive_oracle_for_absdev():
    g = gfun.builtin("absdev")
    oracle = absdev_oracle()
    assert mu_quadrature(g, 128).value == pytest.approx(oracle["mu"], abs=1e-7)
    assert eta_quadrature(g, 128).value == pytest.approx(oracle["eta"], abs=1e-7)
    assert c_quadrature(g, 128).value == pytest.approx(oracle["c"], abs=1e-7)


def test_error_estimate_is_half_rule_difference():
    g = gfun.builtin("absdev")
    est = mu_quadrature(g, 64)
    assert est.err == pytest.approx(abs(est.value - mu_quadrature(g, 32).value), abs=0)
    assert est.err < 1e-5


def test_c_symmetry(kernel):
    assert c_quadrature(kernel, 128).value == pytest.approx(c_swapped_quadrature(kernel, 128).value, abs=1e-10)


def test_doubling_nodes_changes_little(kernel):
    for f in (mu_quadrature, eta_quadrature, c_quadrature):
        assert abs(f(kernel, 128).value - f(kernel, 64).value) < 1e-5


def test_nodes_precondition():
    with pytest.raises(ValueError):
        mu_quadrature(gfun.builtin("square"), 8)


def test_non_finite_kernel_names_the_node():
    bad = GFunction("bad", eval=lambda t: np.where(t > 5.0, np.inf, t))
    with pytest.raises(NumericalDomainError, match="x="):
        mu_quadrature(bad, 32)


def test_compute_moments_closed_forms():
    sq = compute_moments(gfun.builtin("square"))
    assert (sq.mu, sq.eta, sq.c, sq.sigma2) == (4, 80, 8, 32)
    assert sq.method == "closed_form"
    ident = compute_moments(gfun.builtin("identity"))
    assert ident.sigma2 == 0 and ident.degenerate
    nl = compute_moments(gfun.builtin("neglog"))
    assert nl.sigma2 == pytest.approx(2 * (math.pi**2 / 6 - 1), abs=1e-12)
    assert nl.sigma2 == pytest.approx(1.2898681, abs=1e-7)


def test_compute_moments_quadrature_for_absdev():
    m = compute_moments(gfun.builtin("absdev"))
    assert m.method == "quadrature"
    assert m.sigma2 == pytest.approx(2 * (m.eta - m.c**2), abs=1e-12)
    assert not m.degenerate


def test_quadrature_identity_is_degenerate():
    m = quadrature_moments(gfun.builtin("identity"))
    assert m.degenerate and m.sigma2 == 0.0


def test_sigma2_clamp_and_raise():
    assert MomentSet.build(1.0, 1.0 - 1e-14, 1.0, "quadrature").sigma2 == 0.0
    with pytest.raises(NumericalConsistencyError):
        MomentSet.build(1.0, 0.5, 1.0, "quadrature")


def _within_3se(oracle_ms, values):
    return all(abs(getattr(oracle_ms, k) - values[k]) <= 3 * se for k, se in zip(("mu", "eta", "c"), oracle_ms.se))


@pytest.fixture(scope="module")
def oracles():
    return {name: mc_oracle(gfun.builtin(name), 1_000_000, seed=7) for name in gfun.available()}


def test_mc_oracle_square(oracles):
    assert abs(oracles["square"].mu - 4.0) <= 3 * oracles["square"].se[0]


def test_mc_oracle_identity(oracles):
    assert abs(oracles["identity"].c - 1.0) <= 3 * oracles["identity"].se[2]


def test_mc_oracle_agrees_with_quadrature_for_every_builtin(oracles):
    for name, ms in oracles.items():
        q = quadrature_moments(gfun.builtin(name), 128)
        assert _within_3se(ms, {"mu": q.mu, "eta": q.eta, "c": q.c}), name
        assert ms.method == "monte_carlo"
        assert ms.err == pytest.approx(3 * max(ms.se))


def test_mc_oracle_deterministic():
    g = gfun.builtin("absdev")
    assert mc_oracle(g, 20_000, 3) == mc_oracle(g, 20_000, 3)
    assert mc_oracle(g, 20_000, 3) != mc_oracle(g, 20_000, 4)


def test_mc_oracle_sample_floor():
    with pytest.raises(ValueError):
        mc_oracle(gfun.builtin("square"), 100, 0)
