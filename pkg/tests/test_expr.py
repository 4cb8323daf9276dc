"""Expression kernel: evaluation, exact differentiation, simplification,
polynomial helpers and the text syntax."""

from __future__ import annotations

import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from paraslant import expr as ex
from paraslant.errors import (
    DomainViolation,
    NonPolynomialInput,
    ParseError,
    UnboundVariable,
)


def test_polynomial_arithmetic():
    e = ex.parse_expr("x*y + z")
    assert ex.evaluate(e, {"x": 2, "y": 3, "z": 1}) == 7


def test_reciprocal_value():
    assert ex.evaluate(ex.parse_expr("1/(2*z)"), {"z": 0.5}) == 1.0


def test_sqrt_domain_guard():
    with pytest.raises(DomainViolation):
        ex.evaluate(ex.parse_expr("sqrt(z)"), {"z": -1.0})


def test_unbound_variable():
    with pytest.raises(UnboundVariable):
        ex.evaluate(ex.parse_expr("x + q"), {"x": 1.0})


def test_division_by_zero():
    with pytest.raises(DomainViolation):
        ex.evaluate(ex.parse_expr("1/x"), {"x": 0.0})


def test_log_domain():
    with pytest.raises(DomainViolation):
        ex.evaluate(ex.parse_expr("log(x)"), {"x": -2.0})
    assert ex.evaluate(ex.parse_expr("log(x)"), {"x": 1.0}) == 0.0


def test_evaluation_deterministic():
    e = ex.parse_expr("sinh(x)*cos(y) + sqrt(z)/x - 0.37*x^3")
    p = {"x": 1.234567, "y": -0.87, "z": 2.5}
    assert ex.evaluate(e, p) == ex.evaluate(e, p)


def test_derivative_of_reciprocal():
    d = ex.differentiate(ex.parse_expr("1/(2*z)"), "z")
    assert ex.evaluate(d, {"z": 1.0}) == pytest.approx(-0.5, abs=1e-15)


def test_derivative_of_sinh_at_zero():
    d = ex.differentiate(ex.parse_expr("sinh(t)"), "t")
    assert ex.evaluate(d, {"t": 0.0}) == 1.0


def test_abs_signum_derivative_at_zero():
    d_abs = ex.differentiate(ex.parse_expr("abs(x)"), "x")
    d_sign = ex.differentiate(ex.parse_expr("sign(x)"), "x")
    assert ex.evaluate(d_abs, {"x": 2.0}) == 1.0
    assert ex.evaluate(d_abs, {"x": -2.0}) == -1.0
    assert ex.evaluate(d_sign, {"x": 0.5}) == 0.0
    with pytest.raises(DomainViolation):
        ex.evaluate(d_abs, {"x": 0.0})
    with pytest.raises(DomainViolation):
        ex.evaluate(d_sign, {"x": 0.0})
    # plain signum is still defined at zero
    assert ex.evaluate(ex.parse_expr("sign(x)"), {"x": 0.0}) == 0.0


def test_fractional_power_and_negative_base():
    assert ex.evaluate(ex.parse_expr("t^(3/2)"), {"t": 4.0}) == 8.0
    assert ex.evaluate(ex.parse_expr("t^3"), {"t": -2.0}) == -8.0
    with pytest.raises(DomainViolation):
        ex.evaluate(ex.parse_expr("t^(1/2)"), {"t": -1.0})
    with pytest.raises(TypeError):
        ex.Var("t") ** ex.Var("u")


def test_derivative_vs_central_difference(expr_gen):
    """Finite-difference oracle: 100 random pairs, relative error < 1e-6."""
    h = 1e-5
    checked = 0
    while checked < 100:
        f, p = expr_gen.smooth_pair("x")
        exact = ex.evaluate(ex.differentiate(f, "x"), p)
        hi = dict(p, x=p["x"] + h)
        lo = dict(p, x=p["x"] - h)
        approx = (ex.evaluate(f, hi) - ex.evaluate(f, lo)) / (2 * h)
        assert abs(approx - exact) / abs(exact) < 1e-6
        checked += 1


def test_fractional_power_derivative():
    d = ex.differentiate(ex.parse_expr("t^(3/2)"), "t")
    assert ex.evaluate(d, {"t": 4.0}) == pytest.approx(1.5 * 2.0, rel=1e-15)


# -- hypothesis strategies over raw (unfolded) trees -------------------------

_leaves = st.one_of(
    st.floats(min_value=-2.0, max_value=2.0).map(lambda v: ex.Const(round(v, 4))),
    st.sampled_from(["x", "y", "z"]).map(ex.Var),
)


def _branch(children):
    pair = st.tuples(children, children)
    return st.one_of(
        pair.map(lambda ab: ex.Add(*ab)),
        pair.map(lambda ab: ex.Sub(*ab)),
        pair.map(lambda ab: ex.Mul(*ab)),
        pair.map(lambda ab: ex.Div(*ab)),
        children.map(lambda a: ex.Pow(a, 2)),
        children.map(ex.Sinh),
        children.map(ex.Cosh),
        children.map(ex.Sin),
        children.map(ex.Cos),
        children.map(lambda a: ex.Sqrt(ex.Abs(a))),
        children.map(ex.Abs),
    )


_trees = st.recursive(_leaves, _branch, max_leaves=8)
_bindings = st.fixed_dictionaries(
    {v: st.floats(min_value=0.1, max_value=1.9) for v in ("x", "y", "z")}
)


def _try_eval(e, binding):
    try:
        v = ex.evaluate(e, binding)
    except (DomainViolation, OverflowError):
        assume(False)
    assume(math.isfinite(v) and abs(v) < 1e8)
    return v


@given(e=_trees, binding=_bindings)
@settings(max_examples=60, deadline=None)
def test_simplify_preserves_value(e, binding):
    value = _try_eval(e, binding)
    simplified = ex.simplify(e)
    assert ex.evaluate(simplified, binding) == pytest.approx(value, abs=1e-12, rel=1e-12)


@given(f=_trees, g=_trees, binding=_bindings)
@settings(max_examples=60, deadline=None)
def test_product_rule(f, g, binding):
    _try_eval(f, binding)
    _try_eval(g, binding)
    left = _try_eval(ex.differentiate(ex.Mul(f, g), "x"), binding)
    df, dg = ex.differentiate(f, "x"), ex.differentiate(g, "x")
    right = _try_eval(ex.Add(ex.Mul(df, g), ex.Mul(f, dg)), binding)
    assert left == pytest.approx(right, abs=1e-12, rel=1e-9)


@given(
    f=_trees,
    g=_trees,
    binding=_bindings,
    a=st.floats(min_value=-3, max_value=3),
    b=st.floats(min_value=-3, max_value=3),
)
@settings(max_examples=50, deadline=None)
def test_differentiation_is_linear(f, g, binding, a, b):
    combo = ex.Add(ex.Mul(ex.Const(a), f), ex.Mul(ex.Const(b), g))
    left = _try_eval(ex.differentiate(combo, "y"), binding)
    right_expr = ex.Add(
        ex.Mul(ex.Const(a), ex.differentiate(f, "y")),
        ex.Mul(ex.Const(b), ex.differentiate(g, "y")),
    )
    right = _try_eval(right_expr, binding)
    assert left == pytest.approx(right, abs=1e-12, rel=1e-9)


@given(e=_trees, binding=_bindings)
@settings(max_examples=50, deadline=None)
def test_text_round_trip(e, binding):
    value = _try_eval(e, binding)
    rebuilt = ex.parse_expr(ex.to_text(e))
    assert ex.evaluate(rebuilt, binding) == pytest.approx(value, abs=1e-12, rel=1e-12)


# -- parser behavior -----------------------------------------------------------


def test_parser_whitespace_insensitive():
    a = ex.parse_expr("4*x^2 + 2*z")
    b = ex.parse_expr("4 * x ^ 2+2*z")
    p = {"x": 1.3, "z": 0.4}
    assert ex.evaluate(a, p) == ex.evaluate(b, p)


def test_parser_precedence():
    assert ex.evaluate(ex.parse_expr("2 + 3*4^2"), {}) == 50.0
    assert ex.evaluate(ex.parse_expr("-2^2"), {}) == -4.0
    assert ex.evaluate(ex.parse_expr("(1 + 1)^3"), {}) == 8.0
    assert ex.evaluate(ex.parse_expr("6/3/2"), {}) == 1.0


def test_parser_rational_exponent_forms():
    assert ex.evaluate(ex.parse_expr("x^(-1/2)"), {"x": 4.0}) == 0.5
    assert ex.evaluate(ex.parse_expr("x^-1"), {"x": 4.0}) == 0.25


def test_parser_errors_carry_position():
    with pytest.raises(ParseError):
        ex.parse_expr("2*(x + ")
    with pytest.raises(ParseError):
        ex.parse_expr("frob(x)")
    with pytest.raises(ParseError):
        ex.parse_expr("x^y")
    err = None
    try:
        ex.parse_expr("1 + $")
    except ParseError as caught:
        err = caught
    assert err is not None and err.column == 5


def test_simplify_folds_constants():
    e = ex.Add(ex.Mul(ex.Const(0.0), ex.Var("q")), ex.Mul(ex.Const(1.0), ex.Var("x")))
    s = ex.simplify(e)
    assert isinstance(s, ex.Var) and s.name == "x"
    assert ex.variables(s) == frozenset({"x"})


def test_polynomial_helpers():
    coeffs = ex.polynomial_coefficients(ex.parse_expr("(1 - t)*(1 + t)"), "t")
    assert coeffs == [1.0, 0.0, -1.0]
    anti = ex.polynomial_antiderivative(ex.parse_expr("1 - 2*t"), "t")
    assert ex.evaluate(anti, {"t": 2.0}) == pytest.approx(2.0 - 4.0)
    with pytest.raises(NonPolynomialInput):
        ex.polynomial_coefficients(ex.parse_expr("sqrt(t)"), "t")
    with pytest.raises(NonPolynomialInput):
        ex.polynomial_coefficients(ex.parse_expr("1/t"), "t")
    with pytest.raises(NonPolynomialInput):
        ex.polynomial_coefficients(ex.parse_expr("x + t"), "t")


def test_substitute_composes():
    e = ex.parse_expr("2*x + z")
    composed = ex.substitute(e, {"x": ex.parse_expr("t^2"), "z": ex.Var("t")})
    assert ex.evaluate(composed, {"t": 3.0}) == 21.0
    assert ex.variables(composed) == frozenset({"t"})
