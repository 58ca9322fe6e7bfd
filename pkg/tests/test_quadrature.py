import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rough_hausdorff.quadrature import (
    Annulus,
    Ball,
    DivergentIntegralError,
    RadialIntegrand,
    Shell,
    integrate_halfline,
    integrate_interval,
    integrate_region,
    integrate_sphere,
    sphere_surface,
)


def test_halfline_truncated_power():
    # antiderivative oracle: -(2/3) t^{-3/2} evaluated at 1
    f = RadialIntegrand(lambda t: np.where(t > 1.0, t ** -2.5, 0.0), math.inf, -2.5)
    res = integrate_halfline(f, 1e-10)
    assert res.value == pytest.approx(2.0 / 3.0, abs=1e-10)
    assert res.converged
    assert res.abs_error_estimate + res.tail_bound <= 1e-10 + 1e-12 * res.value


def test_halfline_exponential():
    f = RadialIntegrand(lambda t: np.exp(-t), 0.0, -math.inf)
    assert integrate_halfline(f, 1e-10).value == pytest.approx(1.0, abs=1e-10)


def test_halfline_harmonic_divergence_declared():
    f = RadialIntegrand(lambda t: np.where(t < 1.0, 1.0 / t, 0.0), -1.0, -math.inf)
    with pytest.raises(DivergentIntegralError):
        integrate_halfline(f, 1e-9)


def test_halfline_divergence_detected_without_declaration():
    # declared exponents lie: claim fast decay but the integrand is 1/t
    f = RadialIntegrand(lambda t: 1.0 / t, 0.5, -1.5)
    with pytest.raises((DivergentIntegralError, ArithmeticError)):
        integrate_halfline(f, 1e-9)


@pytest.mark.parametrize("expo,lo,expected", [
    (-2.5, 1.0, 2.0 / 3.0),
    (-1.5, 1.0, 2.0),
    (-3.0, 2.0, 1.0 / 8.0),
])
def test_tail_bound_sound_on_power_laws(expo, lo, expected):
    # the reported tail bound must dominate the true truncated mass
    f = RadialIntegrand(lambda t: np.where(t > lo, t ** expo, 0.0), math.inf, expo)
    res = integrate_halfline(f, 1e-8)
    assert res.value == pytest.approx(expected, rel=1e-8)
    true_truncation = abs(expected - res.value)
    assert res.tail_bound + res.abs_error_estimate >= true_truncation


def test_sphere_measures():
    assert integrate_sphere(2, lambda p: np.ones(p.shape[0]), 1e-12).value == pytest.approx(2 * math.pi, abs=1e-12)
    assert integrate_sphere(3, lambda p: np.ones(p.shape[0]), 1e-10).value == pytest.approx(4 * math.pi, rel=1e-10)
    assert integrate_sphere(1, lambda p: p[:, 0], 1e-12).value == 0.0
    assert sphere_surface(2) == pytest.approx(2 * math.pi)
    assert sphere_surface(3) == pytest.approx(4 * math.pi)


def test_trapezoid_spectral_accuracy_small_node_count():
    # 2 + cos(theta) integrates to 4 pi; spectral accuracy within 64 nodes
    from rough_hausdorff.quadrature import sphere_nodes

    for level in (1, 2):  # 32 and 64 nodes
        pts, w = sphere_nodes(2, level)
        val = float(np.dot(w, 2.0 + pts[:, 0]))
        if len(w) <= 64 and abs(val - 4 * math.pi) < 1e-12:
            return
    raise AssertionError("trapezoid rule not spectrally accurate within 64 nodes")


def test_region_integrals():
    res = integrate_region(1, lambda x: np.ones(x.shape[0]), Ball(2.0), 1e-9,
                           radial_exponent_at_zero=0.0)
    assert res.value == pytest.approx(4.0, abs=1e-8)
    res = integrate_region(2, lambda x: np.linalg.norm(x, axis=1), Ball(1.0), 1e-9,
                           radial_exponent_at_zero=1.0)
    assert res.value == pytest.approx(2 * math.pi / 3, rel=1e-8)
    res = integrate_region(1, lambda x: np.ones(x.shape[0]), Annulus(0), 1e-10)
    assert res.value == pytest.approx(1.0, abs=1e-10)


def test_shell_region_to_infinity():
    res = integrate_region(1, lambda x: np.linalg.norm(x, axis=1) ** -3.0, Shell(1.0, math.inf),
                           1e-10, radial_exponent_at_infinity=-3.0)
    assert res.value == pytest.approx(1.0, abs=1e-9)  # 2 int_1^inf r^-3 dr


def test_interval_jump_alignment():
    res = integrate_interval(lambda t: np.where(t <= 3.0, 1.0, 0.0), 1.0, 8.0, 1e-12, align=(3.0,))
    assert res.value == pytest.approx(2.0, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=-0.9, max_value=3.0), st.floats(min_value=-4.0, max_value=-1.1))
def test_power_pair_halfline_matches_antiderivative(e0, einf):
    # t^{e0} on (0,1] glued to t^{einf} on (1,inf): value 1/(e0+1) - 1/(einf+1)
    def ev(t):
        t = np.asarray(t, dtype=float)
        out = np.empty_like(t)
        low = t <= 1.0
        out[low] = t[low] ** e0
        out[~low] = t[~low] ** einf
        return out

    expected = 1.0 / (e0 + 1.0) - 1.0 / (einf + 1.0)
    res = integrate_halfline(RadialIntegrand(ev, e0, einf), 1e-9)
    assert res.value == pytest.approx(expected, rel=1e-7)
