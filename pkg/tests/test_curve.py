"""Curve layer: kinematics, acceleration, geodesic and dependence
predicates, and the slant-curve generator."""

from __future__ import annotations

import math

import numpy as np
import pytest

from paraslant.curve import (
    PARAM,
    Curve,
    covariant_accel,
    dependence_case,
    generate_slant,
    get_context,
    is_geodesic,
    kinematics,
)
from paraslant.errors import NonPolynomialInput, NotConstantSpeed, NotSlant
from paraslant.expr import evaluate, evaluate_all, parse_expr
from paraslant.fixtures import example2_null_slant, radical_constant
from paraslant.structure import SampleOptions


def test_kinematics_timelike_slant(curves1):
    kin = kinematics(curves1["a"])
    assert kin.causal == "timelike" and kin.epsilon1 == -1
    assert kin.slant_constant == pytest.approx(1.0, abs=1e-12)
    for t in (-2.0, -1.0, -0.5):
        assert evaluate(kin.delta, {PARAM: t}) == pytest.approx(1.0 / t, abs=1e-12)
        assert evaluate(kin.alpha, {PARAM: t}) == pytest.approx(1.0 / (2.0 * t), abs=1e-12)
        assert evaluate(kin.beta, {PARAM: t}) == pytest.approx(1.0 / (2.0 * t), abs=1e-12)


def test_kinematics_legendre(curves2):
    kin = kinematics(curves2["legendre"])
    assert kin.causal == "spacelike" and kin.epsilon1 == 1
    assert kin.slant_constant == 0.0
    assert evaluate(kin.alpha, {PARAM: 0.8}) == pytest.approx(1.0, abs=1e-12)
    assert evaluate(kin.delta, {PARAM: 0.8}) == pytest.approx(-1.0, abs=1e-12)


def test_kinematics_characteristic_line(curves2):
    kin = kinematics(curves2["xi-line"])
    assert kin.causal == "spacelike"
    assert kin.slant_constant == pytest.approx(1.0, abs=1e-15)


def test_kinematics_not_slant(ex2):
    curve = Curve("wobble", ex2, tuple(map(parse_expr, ("t^2", "0", "1 + t^2"))), (0.4, 1.4))
    with pytest.raises(NotSlant):
        kinematics(curve)


def test_kinematics_not_normalized(ex2):
    curve = Curve("fast", ex2, tuple(map(parse_expr, ("t^2", "0", "1/2"))), (0.4, 1.4))
    with pytest.raises(NotConstantSpeed):
        kinematics(curve)


def test_kinematics_domain_violation(ex2):
    curve = Curve("escape", ex2, tuple(map(parse_expr, ("0", "0", "t"))), (-1.0, 1.0))
    with pytest.raises(ValueError):
        kinematics(curve)


def test_covariant_accel_values(curves1, curves2, curves_flat):
    assert covariant_accel(curves2["xi-line"], 0.4) == pytest.approx([0.0, 0.0, 0.0], abs=1e-14)
    assert covariant_accel(curves1["b"], 0.7) == pytest.approx(
        [4.0 / 3.0, 2.0 / 3.0, -4.0 / 3.0], abs=1e-12
    )
    assert covariant_accel(curves_flat["null-legendre-line"], 0.2) == pytest.approx(
        [0.0, 0.0, 0.0], abs=1e-15
    )


def test_is_geodesic(curves1, curves2):
    ok, res = is_geodesic(curves2["xi-line"])
    assert ok and res < 1e-12
    ok, res = is_geodesic(curves2["log-geodesic"])
    assert ok and res < 1e-12
    ok, res = is_geodesic(curves1["a"])
    assert not ok and res > 0.1


def test_dependence_cases(curves1, curves2):
    assert dependence_case(curves2["xi-line"], 0.5).kind == "tangent-collinear-xi"
    log_case = dependence_case(curves2["log-geodesic"], 0.5)
    assert log_case.kind == "tangent-xi-plus-phi" and log_case.sign == 1
    assert dependence_case(curves1["a"], -1.0).kind == "independent"
    assert dependence_case(curves1["b"], 0.0).kind == "independent"


def test_dependence_dichotomy(curves1, curves2):
    """Independence holds exactly when epsilon1 - c^2 is away from zero."""
    for curve in (*curves1.values(), *curves2.values()):
        kin = kinematics(curve)
        case = dependence_case(curve, float(np.mean(curve.interval)))
        gap = abs(kin.epsilon1 - kin.slant_constant**2)
        if gap > 1e-9:
            assert case.kind == "independent"
        else:
            assert case.kind != "independent"
            assert case.residual < 1e-9


def test_unit_slant_with_unit_constant_is_geodesic(curves1, curves2):
    for curve in (curves1["xi-line"], curves2["xi-line"], curves2["log-geodesic"]):
        kin = kinematics(curve)
        assert kin.epsilon1 == 1 and abs(kin.slant_constant**2 - 1.0) < 1e-12
        _, res = is_geodesic(curve)
        assert res < 1e-8


def test_dependent_branch_curves_have_null_acceleration(ex2):
    """Non-geodesic curves on the dependent branch still have null
    acceleration, which is why the Frenet taxonomy excludes them."""
    curve = Curve(
        "dependent", ex2, tuple(map(parse_expr, ("t^2", "t^2", "1 + t"))), (-0.5, 1.0)
    )
    kin = kinematics(curve)
    assert kin.epsilon1 == 1 and kin.slant_constant == pytest.approx(1.0)
    _, res = is_geodesic(curve)
    assert res > 0.1
    ctx = get_context(curve)
    g_acc = ctx.dot(ctx.accel, ctx.accel)
    for t in (-0.3, 0.1, 0.6):
        assert abs(evaluate(g_acc, {PARAM: t})) < 1e-12


# -- generator -------------------------------------------------------------------


def test_generate_slant_zero_constant_keeps_height(ex2):
    curve = generate_slant(ex2, "t^2 - 1", "3*t", 0.0, 0.5)
    assert evaluate(curve.components[2], {PARAM: 0.77}) == 0.5


def test_generate_slant_quadratic_height(ex1):
    curve = generate_slant(ex1, "t", "t", 1.0, 1.0)
    for t in (-0.5, 0.0, 0.8):
        assert evaluate(curve.components[2], {PARAM: t}) == pytest.approx(1 + t - t * t, abs=1e-15)


def test_generate_slant_is_symbolically_slant(ex1):
    rng = np.random.default_rng(17)
    curve = generate_slant(ex1, "0.3*t^2 - t", "0.5*t^3 + 0.25", 0.75, 1.0)
    ctx = get_context(curve)
    from paraslant.expr import differentiate

    rate = differentiate(ctx.eta_velocity, PARAM)
    for t in rng.uniform(-1.0, 1.0, size=100):
        assert abs(evaluate(rate, {PARAM: float(t)})) < 1e-12
        assert evaluate(ctx.eta_velocity, {PARAM: float(t)}) == pytest.approx(0.75, abs=1e-12)


def test_generate_slant_rejects_non_polynomial(ex1):
    with pytest.raises(NonPolynomialInput):
        generate_slant(ex1, "0", "-2*sqrt(-t)", 1.0, 1.0)
    with pytest.raises(NonPolynomialInput):
        generate_slant(ex1, "1/t", "t", 1.0, 1.0)


def test_series_null_curve_is_null_and_slant():
    curve = example2_null_slant()
    kin = kinematics(curve, SampleOptions(count=40, tolerance=1e-9))
    assert kin.causal == "null" and kin.epsilon1 == 0
    assert kin.slant_constant == pytest.approx(1.0, abs=1e-12)
    ctx = get_context(curve)
    g_acc = ctx.dot(ctx.accel, ctx.accel)
    for t in (-0.25, 0.0, 0.25):
        assert evaluate(g_acc, {PARAM: t}) == pytest.approx(1.0, abs=1e-10)


def test_radical_constant_satisfies_cubic():
    a = radical_constant()
    assert abs(a**3 - a - 2.0) < 1e-12
