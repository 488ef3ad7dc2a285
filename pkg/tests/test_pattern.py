import io

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spacings2d.errors import DomainError, EmptyPatternError, ParseError
from spacings2d.pattern import PointPattern, Window, load_pattern, rescale_to_unit
from spacings2d.spacings import compute_grid

UNIT = Window.unit()


def test_single_point():
    p = load_pattern("0.5,0.5\n", UNIT)
    assert p.m == 1
    assert p.points.tolist() == [[0.5, 0.5]]


def test_header_is_skipped():
    p = load_pattern(io.StringIO("x,y\n0.2,0.5\n0.6,0.9\n"), UNIT)
    assert p.m == 2
    assert p.points.tolist() == [[0.2, 0.5], [0.6, 0.9]]


def test_point_outside_window_is_named():
    with pytest.raises(DomainError, match="point 1"):
        load_pattern("0.5,1.5\n", UNIT)


@pytest.mark.parametrize(
    "text, line",
    [
        ("0.1,0.2\n0.3\n", 2),
        ("0.1,0.2\n0.3,abc\n", 2),
        ("x,y\n0.1,0.2,0.3\n", 2),
        ("0.1,0.2\nnan,0.5\n", 2),
        ("x,y\nfoo,bar\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        load_pattern(text, UNIT)
    assert info.value.line == line


@pytest.mark.parametrize("text", ["", "x,y\n", "\n\n"])
def test_empty_input(text):
    with pytest.raises(EmptyPatternError):
        load_pattern(text, UNIT)


def test_boundary_points_allowed():
    p = load_pattern("0,0\n1,1\n", UNIT)
    assert p.m == 2


def test_window_validation():
    with pytest.raises(DomainError):
        Window(1.0, 0.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        Window(0.0, 1.0, 2.0, 2.0)
    assert Window.parse("2:4,6:10") == Window(2.0, 4.0, 6.0, 10.0)
    with pytest.raises(ValueError):
        Window.parse("0:1")


def test_pattern_is_read_only():
    p = PointPattern(UNIT, [[0.1, 0.2]])
    with pytest.raises(ValueError):
        p.points[0, 0] = 0.3


@pytest.mark.parametrize(
    "point, window, expected",
    [
        ((5.0, 5.0), Window(0, 10, 0, 10), (0.5, 0.5)),
        ((0.0, 0.0), UNIT, (0.0, 0.0)),
        ((3.0, 7.0), Window(2, 4, 6, 10), (0.5, 0.25)),
    ],
)
def test_rescale_examples(point, window, expected):
    p = rescale_to_unit(PointPattern(window, [point]))
    assert p.window.is_unit
    assert p.points[0].tolist() == pytest.approx(expected, abs=1e-15)


coords = st.floats(0.0, 1.0, allow_nan=False)


@given(st.lists(st.tuples(coords, coords), min_size=1, max_size=30))
def test_rescale_idempotent_on_unit(points):
    p = PointPattern(UNIT, points)
    assert rescale_to_unit(p) == p
    assert rescale_to_unit(rescale_to_unit(p)) == p


@given(
    st.lists(st.tuples(coords, coords), min_size=1, max_size=30),
    st.floats(-50, 50),
    st.floats(0.5, 20),
    st.floats(-50, 50),
    st.floats(0.5, 20),
)
def test_grid_invariant_under_affine_window_change(points, x0, wx, y0, wy):
    base = np.array(points)
    window = Window(x0, x0 + wx, y0, y0 + wy)
    moved = np.column_stack([x0 + base[:, 0] * wx, y0 + base[:, 1] * wy])
    moved = np.clip(moved, [window.x0, window.y0], [window.x1, window.y1])
    g1 = compute_grid(PointPattern(UNIT, base))
    g2 = compute_grid(rescale_to_unit(PointPattern(window, moved)))
    np.testing.assert_allclose(g2.dx, g1.dx, atol=1e-12)
    np.testing.assert_allclose(g2.dy, g1.dy, atol=1e-12)
