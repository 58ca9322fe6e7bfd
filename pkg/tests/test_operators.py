import math

import numpy as np
import pytest

from rough_hausdorff.functions import (
    AngularProfile,
    TestFunction,
    indicator_shell,
    kernel_presets,
    lipschitz_presets,
    separable,
)
from rough_hausdorff.operators import (
    CommutatorOperator,
    HausdorffOperator,
    adjoint_hardy_apply,
    hardy_apply,
    lipschitz_pointwise_bound,
)

HARDY1 = HausdorffOperator(kernel_presets("hardy", 1), AngularProfile.constant(1.0, 1), 1)
ADJ1 = HausdorffOperator(kernel_presets("adjoint_hardy"), AngularProfile.constant(1.0, 1), 1)


def test_hardy_preset_examples():
    f = indicator_shell(1, 0.0, 1.0)
    assert HARDY1.apply(f, [2.0]) == pytest.approx(1.0, rel=1e-8)
    assert HARDY1.apply(f, [0.5]) == pytest.approx(2.0, rel=1e-8)
    assert hardy_apply(f, [2.0], 1) == pytest.approx(1.0, rel=1e-8)


def test_adjoint_hardy_example():
    f = indicator_shell(1, 0.0, 2.0)
    assert adjoint_hardy_apply(f, [1.0], 1) == pytest.approx(2 * math.log(2), rel=1e-9)
    assert ADJ1.apply(f, [1.0]) == pytest.approx(2 * math.log(2), rel=1e-9)


def test_zero_input():
    zero = separable(1, lambda r: np.zeros_like(np.asarray(r, dtype=float)), support=(0.5, 1.0))
    assert HARDY1.apply(zero, [2.0]) == 0.0


@pytest.mark.parametrize("n", [1, 2])
def test_preset_equivalence_random_points(n):
    # rough transform with the hardy / adjoint presets against the direct
    # region-integral oracles
    rng = np.random.default_rng(42)
    op_h = HausdorffOperator(kernel_presets("hardy", n), AngularProfile.constant(1.0, n), n)
    op_a = HausdorffOperator(kernel_presets("adjoint_hardy"), AngularProfile.constant(1.0, n), n)
    f = indicator_shell(n, 0.5, 2.0)
    g = separable(n, lambda r: np.asarray(r) ** 0.5, support=(0.25, 4.0))
    for _ in range(12):
        r = float(10.0 ** rng.uniform(-1, 1))
        x = np.zeros(n)
        x[0] = r
        for fn in (f, g):
            hv = op_h.apply(fn, x, tol=1e-10)
            ho = hardy_apply(fn, x, n, tol=1e-10)
            assert hv == pytest.approx(ho, rel=1e-6, abs=1e-12)
            av = op_a.apply(fn, x, tol=1e-10)
            ao = adjoint_hardy_apply(fn, x, n, tol=1e-10)
            assert av == pytest.approx(ao, rel=1e-6, abs=1e-12)


def test_linearity():
    rng = np.random.default_rng(1)
    f = indicator_shell(1, 0.5, 2.0)
    g = separable(1, lambda r: np.exp(-np.asarray(r, dtype=float)), support=(0.0, 8.0),
                  exponents=(0.0, None))
    for _ in range(100):
        a, b = rng.uniform(-2, 2, 2)
        r = 10.0 ** rng.uniform(-1, 1)
        comb = TestFunction(
            dim=1,
            general=lambda x, _a=a, _b=b: _a * f(x) + _b * g(x),
            support=(0.0, 8.0),
            radial_exponent_at_zero=0.0,
            jumps=(0.5, 2.0),
        )
        lhs = HARDY1.apply(comb, [r], tol=1e-10)
        rhs = a * HARDY1.apply(f, [r], tol=1e-10) + b * HARDY1.apply(g, [r], tol=1e-10)
        assert lhs == pytest.approx(rhs, abs=1e-8, rel=1e-8)


def test_commutator_example_and_identity():
    f = indicator_shell(1, 0.0, 1.0)
    b = lipschitz_presets("power", 1.0, 1)
    cop = CommutatorOperator(HARDY1, b)
    # b(x) = |x|: H^b f(2) = 2*Hf(2) - H(|y| f)(2) = 2 - 1/2
    assert cop.apply(f, [2.0]) == pytest.approx(1.5, rel=1e-8)
    assert cop.apply_expanded(f, [2.0]) == pytest.approx(1.5, rel=1e-8)


def test_commutator_with_constant_symbol_vanishes():
    bc = lipschitz_presets("constant", 1.0, 1)
    f = indicator_shell(1, 0.0, 1.0)
    assert CommutatorOperator(HARDY1, bc).apply(f, [2.0]) == pytest.approx(0.0, abs=1e-12)


def test_commutator_identity_many_points():
    rng = np.random.default_rng(9)
    op = HausdorffOperator(kernel_presets("hardy", 2), AngularProfile.constant(1.0, 2), 2)
    b = lipschitz_presets("power", 0.5, 2)
    cop = CommutatorOperator(op, b)
    f = separable(2, lambda r: np.asarray(r) ** 0.5, lambda p: 2.0 + p[:, 0], support=(0.25, 4.0))
    for _ in range(10):
        r = 10.0 ** rng.uniform(-0.7, 0.7)
        x = np.array([r, 0.0])
        direct = cop.apply(f, x, tol=1e-10)
        expanded = cop.apply_expanded(f, x, tol=1e-10)
        assert direct == pytest.approx(expanded, rel=1e-6, abs=1e-10)


def test_separable_fast_path_matches_nested():
    om = AngularProfile.from_expression("2 + cos(theta)", 2, nonvanishing=True)
    op = HausdorffOperator(kernel_presets("hardy", 2), om, 2)
    f_sep = separable(2, lambda r: np.where((np.asarray(r) > 0.5) & (np.asarray(r) <= 2.0),
                                            np.asarray(r) ** 0.5, 0.0),
                      lambda p: 2.0 + p[:, 0], support=(0.5, 2.0))
    f_gen = TestFunction(dim=2, general=lambda x: f_sep(x), support=(0.5, 2.0))
    for r in (0.8, 1.3, 2.6):
        v1 = op.apply(f_sep, [r, 0.0], tol=1e-10)
        v2 = op.apply(f_gen, [r, 0.0], tol=1e-10)
        assert v1 == pytest.approx(v2, rel=1e-8, abs=1e-10)


def test_radial_covariance():
    om = AngularProfile.from_expression("2 + cos(theta)", 2, nonvanishing=True)
    op = HausdorffOperator(kernel_presets("hardy", 2), om, 2)
    f = TestFunction(dim=2, general=lambda x: np.where(np.linalg.norm(x, axis=1) <= 2.0, 1.0, 0.0),
                     support=(0.0, 2.0), radial_exponent_at_zero=0.0)
    r = 1.3
    vals = [op.apply(f, r * np.array([math.cos(a), math.sin(a)]), tol=1e-11)
            for a in (0.0, 1.0, 2.5)]
    assert max(vals) - min(vals) <= 1e-10 * max(abs(v) for v in vals)


def test_image_reuses_pointwise_values():
    f = indicator_shell(1, 0.0, 1.0)
    img = HARDY1.image(f)
    vals = img.radial_values(np.array([2.0, 2.0, 0.5]))
    assert vals[0] == vals[1]
    assert vals[0] == pytest.approx(1.0, rel=1e-8)
    assert vals[2] == pytest.approx(2.0, rel=1e-8)


def test_lipschitz_pointwise_bound_examples():
    b = lipschitz_presets("power", 1.0, 2)
    assert lipschitz_pointwise_bound(b, [1.0, 0.0], 1.0, [0.0, 1.0]) == pytest.approx(2.0)
    b5 = lipschitz_presets("power", 0.5, 2)
    val = lipschitz_pointwise_bound(b5, [4.0, 0.0], 0.5, [0.0, 1.0])
    assert val == pytest.approx(2.0 * math.sqrt(3.0))
    # t -> inf limit: bound -> ||b|| |x|^beta
    big_t = lipschitz_pointwise_bound(b5, [4.0, 0.0], 1e9, [0.0, 1.0])
    assert big_t == pytest.approx(2.0, rel=1e-8)


def test_origin_rejected():
    f = indicator_shell(1, 0.0, 1.0)
    with pytest.raises(ValueError):
        HARDY1.apply(f, [0.0])
