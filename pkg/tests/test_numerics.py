import math

import numpy as np
import pytest

from accrete.errors import BracketError, DomainError, IntegrationError, QuadratureError
from accrete.numerics import TimeSeries, adaptive_quad, find_root, rk4_path


class TestTimeSeries:
    def test_interpolation(self):
        s = TimeSeries(np.array([0.0, 1.0, 2.0]), np.array([0.0, 2.0, 2.0]))
        assert s(0.5) == 1.0
        assert s(1.5) == 2.0
        assert s(np.array([0.25, 1.0])).tolist() == [0.5, 2.0]

    def test_out_of_range_raises(self):
        s = TimeSeries(np.array([0.0, 1.0]), np.array([0.0, 1.0]))
        with pytest.raises(DomainError):
            s(-0.1)
        with pytest.raises(DomainError):
            s(1.1)

    def test_tiny_slack_at_the_ends(self):
        # callers form t_end by summation; absorb their last-bit dust
        s = TimeSeries(np.array([0.0, 1.0]), np.array([0.0, 1.0]))
        assert s(1.0 + 1e-13) == pytest.approx(1.0)

    def test_slope_uses_left_segment_at_nodes(self):
        s = TimeSeries(np.array([0.0, 1.0, 2.0]), np.array([0.0, 1.0, 3.0]))
        assert s.slope(0.5) == 1.0
        assert s.slope(1.0) == 1.0
        assert s.slope(1.5) == 2.0
        assert s.slope(0.0) == 1.0  # clamped to the first segment

    def test_validation(self):
        with pytest.raises(ValueError):
            TimeSeries(np.array([0.0, 0.0]), np.array([1.0, 2.0]))
        with pytest.raises(ValueError):
            TimeSeries(np.array([0.0]), np.array([1.0]))
        with pytest.raises(ValueError):
            TimeSeries(np.array([0.0, 1.0]), np.array([1.0, math.inf]))


class TestRK4:
    def test_exponential(self):
        (y,) = rk4_path(lambda t, y: y, 1.0, 0.0, 1.0, 200)
        assert y(1.0) == pytest.approx(math.e, rel=1e-10)

    def test_vector_system(self):
        # harmonic oscillator: (cos t, -sin t) from (1, 0)
        def f(t, y):
            return np.array([y[1], -y[0]])

        ys = rk4_path(f, np.array([1.0, 0.0]), 0.0, math.pi, 400)
        assert ys[0](math.pi) == pytest.approx(-1.0, abs=1e-9)
        assert ys[1](math.pi) == pytest.approx(0.0, abs=1e-9)

    def test_fourth_order_convergence(self):
        # y' = cos(t) y, measure error at t=2 against the exact solution
        exact = math.exp(math.sin(2.0))
        errs = []
        for n in (20, 40, 80):
            (y,) = rk4_path(lambda t, y: math.cos(t) * y, 1.0, 0.0, 2.0, n)
            errs.append(abs(y(2.0) - exact))
        orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
        for order in orders:
            assert 3.7 <= order <= 4.3

    def test_nonfinite_derivative_aborts(self):
        with np.errstate(divide="ignore"):
            with pytest.raises(IntegrationError):
                rk4_path(lambda t, y: 1.0 / (t - 0.5), 0.0, 0.0, 1.0, 4)

    def test_node_grid(self):
        (y,) = rk4_path(lambda t, y: 0.0, 3.0, 0.0, 1.0, 5)
        assert y.times.size == 6
        assert np.all(y.values == 3.0)


class TestQuadrature:
    def test_polynomial(self):
        assert adaptive_quad(lambda x: x * x, 0.0, 1.0, 1e-12) == pytest.approx(
            1.0 / 3.0, abs=1e-12
        )

    def test_log_kernel(self):
        val = adaptive_quad(lambda r: 2.0 / r, 1.0, 2.0, 1e-13)
        assert val == pytest.approx(2.0 * math.log(2.0), abs=1e-12)

    def test_empty_interval_is_exact_zero(self):
        assert adaptive_quad(lambda x: math.nan, 2.0, 2.0, 1e-10) == 0.0

    def test_reversed_bounds_flip_sign(self):
        fwd = adaptive_quad(lambda x: x, 0.0, 1.0, 1e-12)
        rev = adaptive_quad(lambda x: x, 1.0, 0.0, 1e-12)
        assert rev == -fwd

    def test_unresolvable_integrand_raises(self):
        with pytest.raises(QuadratureError):
            adaptive_quad(lambda x: 1.0 / x, 0.0, 1.0, 1e-10)


class TestRootFinding:
    def test_cubic(self):
        root = find_root(lambda x: x**3 - 2.0, 0.0, 2.0, 1e-14)
        assert root == pytest.approx(2.0 ** (1.0 / 3.0), rel=1e-12)

    def test_exact_endpoint(self):
        assert find_root(lambda x: x - 1.0, 1.0, 2.0, 1e-12) == 1.0

    def test_no_sign_change_raises(self):
        with pytest.raises(BracketError):
            find_root(lambda x: x * x + 1.0, -1.0, 1.0, 1e-12)

    def test_steep_function(self):
        root = find_root(lambda x: math.tanh(50.0 * (x - 0.3)), 0.0, 1.0, 1e-13)
        assert root == pytest.approx(0.3, abs=1e-12)
