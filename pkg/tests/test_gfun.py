import math

import numpy as np
import pytest

from spacings2d import gfun
from spacings2d.errors import DegenerateSpacingError, UnknownKernelError


@pytest.mark.parametrize(
    "name, t, expected",
    [("square", 2.0, 4.0), ("absdev", 1.0, 0.0), ("neglog", 1.0, 0.0), ("square", 0.0, 0.0), ("absdev", 0.5, 0.5)],
)
def test_builtin_values(name, t, expected):
    assert gfun.evaluate(gfun.builtin(name), t) == expected


def test_neglog_at_zero_is_degenerate():
    with pytest.raises(DegenerateSpacingError):
        gfun.evaluate(gfun.builtin("neglog"), 0.0)


def test_negative_argument_rejected():
    with pytest.raises(ValueError):
        gfun.evaluate(gfun.builtin("square"), -1.0)


def test_unknown_name_lists_available():
    with pytest.raises(UnknownKernelError, match="absdev, identity, neglog, square"):
        gfun.builtin("cubic")


def test_metadata():
    assert gfun.builtin("neglog").requires_positive
    assert not gfun.builtin("neglog").conditions[0]
    for name in ("square", "absdev", "identity"):
        g = gfun.builtin(name)
        assert not g.requires_positive
        assert math.isfinite(gfun.evaluate(g, 0.0))
    assert gfun.builtin("absdev").closed_moments is None


@pytest.mark.parametrize("name", ["absdev", "identity"])
def test_continuity_on_sampled_grid(name):
    g = gfun.builtin(name)
    t = np.arange(0.0, 100.0 + 1e-4, 1e-4)
    assert np.max(np.abs(np.diff(g.eval(t)))) < 1e-2


def test_square_continuity_on_sampled_grid():
    # the jump grows like 2 t h, reaching 0.02 at t = 100
    g = gfun.builtin("square")
    h = 1e-4
    t = np.arange(0.0, 100.0 + h, h)
    jumps = np.abs(np.diff(g.eval(t)))
    assert np.all(jumps <= 2 * t[1:] * h + 1e-12)
    assert np.max(jumps[t[1:] <= 50.0]) < 1e-2


def test_identity_sums_to_n_squared(rng):
    g = gfun.builtin("identity")
    for n in (2, 7, 40):
        dx = rng.dirichlet(np.ones(n))
        dy = rng.dirichlet(np.ones(n))
        total = math.fsum(g.eval(np.outer(n * dx, n * dy)).ravel())
        assert total == pytest.approx(n * n, rel=1e-12)


def test_vectorized_eval_matches_scalar(kernel):
    t = np.array([0.25, 1.0, 3.5])
    assert kernel.eval(t).tolist() == [gfun.evaluate(kernel, x) for x in t]
