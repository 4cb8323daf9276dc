"""Parametrized curves inside a structure chart.

A curve carries three symbolic components in the parameter t together with
an open interval and a reference to its ambient structure.  This module
classifies causal character, extracts the slant constant, composes the
characteristic functions along the curve, and provides the covariant
acceleration, geodesic and linear-dependence predicates, and a generator of
polynomial slant curves used to build test corpora.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .errors import NonPolynomialInput, NotConstantSpeed, NotSlant
from .expr import (
    Const,
    ScalarExpr,
    Var,
    add,
    differentiate,
    div,
    evaluate,
    evaluate_all,
    mul,
    polynomial_antiderivative,
    polynomial_coefficients,
    sub,
    substitute,
    variables,
)
from .structure import (
    Matrix,
    ParacontactStructure,
    SampleOptions,
    Vector,
    as_expr,
)

PARAM = "t"


@dataclass(frozen=True, eq=False)
class Curve:
    """Path t -> (x(t), y(t), z(t)) in the chart of a structure."""

    name: str
    structure: ParacontactStructure
    components: Vector
    interval: tuple[float, float]

    def point_at(self, t: float) -> dict[str, float]:
        coords = self.structure.chart.coordinates
        values = evaluate_all(list(self.components), {PARAM: t})
        return dict(zip(coords, values))

    def sample_params(self, count: int, seed: int) -> list[float]:
        lo, hi = self.interval
        lo = max(lo, -10.0) if math.isfinite(lo) else -10.0
        hi = min(hi, 10.0) if math.isfinite(hi) else 10.0
        rng = np.random.default_rng(seed)
        return [float(v) for v in rng.uniform(lo, hi, size=count)]


class CurveContext:
    """Symbolic machinery along one curve: everything composed into t."""

    def __init__(self, curve: Curve):
        self.curve = curve
        structure = curve.structure
        coords = structure.chart.coordinates
        self.subs = dict(zip(coords, curve.components))
        self.velocity: Vector = tuple(differentiate(c, PARAM) for c in curve.components)  # type: ignore[assignment]
        self.metric_t: Matrix = tuple(
            tuple(self.along(e) for e in row) for row in structure.metric.entries
        )  # type: ignore[assignment]
        self.phi_t: Matrix = tuple(
            tuple(self.along(e) for e in row) for row in structure.phi
        )  # type: ignore[assignment]
        self.xi_t: Vector = tuple(self.along(e) for e in structure.xi)  # type: ignore[assignment]
        self.eta_t: Vector = tuple(self.along(e) for e in structure.eta)  # type: ignore[assignment]
        self.speed_sq = self.dot(self.velocity, self.velocity)
        self.eta_velocity = add(
            add(mul(self.eta_t[0], self.velocity[0]), mul(self.eta_t[1], self.velocity[1])),
            mul(self.eta_t[2], self.velocity[2]),
        )
        self.phi_velocity = self.apply_phi(self.velocity)

    def along(self, e: ScalarExpr) -> ScalarExpr:
        return substitute(e, self.subs)

    def apply_phi(self, v: Vector) -> Vector:
        return tuple(
            add(add(mul(self.phi_t[i][0], v[0]), mul(self.phi_t[i][1], v[1])), mul(self.phi_t[i][2], v[2]))
            for i in range(3)
        )  # type: ignore[return-value]

    def dot(self, v: Sequence[ScalarExpr], w: Sequence[ScalarExpr]) -> ScalarExpr:
        total: ScalarExpr = Const(0.0)
        for i in range(3):
            for j in range(3):
                total = add(total, mul(self.metric_t[i][j], mul(v[i], w[j])))
        return total

    @cached_property
    def gamma_t(self) -> tuple[Matrix, Matrix, Matrix]:
        gamma = self.curve.structure.connection.gamma
        return tuple(
            tuple(tuple(self.along(e) for e in row) for row in plane) for plane in gamma
        )  # type: ignore[return-value]

    def covariant(self, v: Sequence[ScalarExpr]) -> Vector:
        """Covariant derivative of a field along the curve, in the tangent
        direction: dV^k/dt + gamma^k_ij(gamma(t)) v^i V^j."""
        out = []
        for k in range(3):
            total = differentiate(v[k], PARAM)
            for i in range(3):
                for j in range(3):
                    total = add(total, mul(self.gamma_t[k][i][j], mul(self.velocity[i], v[j])))
            out.append(total)
        return tuple(out)  # type: ignore[return-value]

    @cached_property
    def accel(self) -> Vector:
        return self.covariant(self.velocity)

    @cached_property
    def alpha_t(self) -> ScalarExpr:
        return self.along(self.curve.structure.characteristic_alpha)

    @cached_property
    def beta_t(self) -> ScalarExpr:
        return self.along(self.curve.structure.characteristic_beta)


@lru_cache(maxsize=None)
def get_context(curve: Curve) -> CurveContext:
    return CurveContext(curve)


@dataclass(frozen=True)
class CurveKinematics:
    """Causal character, slant constant and the composed scalar data."""

    causal: str  # "spacelike" | "timelike" | "null"
    epsilon1: int  # +1, -1, or 0 for null
    slant_constant: float
    speed_residual: float
    slant_residual: float
    alpha: ScalarExpr
    beta: ScalarExpr
    delta: ScalarExpr | None


def kinematics(curve: Curve, options: SampleOptions | None = None) -> CurveKinematics:
    """Classify the curve and compose alpha, beta, delta along it.

    The slant constant is verified twice: by sampling eta(velocity) and by
    evaluating its exact t-derivative.  Speed must be constant at 0 or +-1;
    curves are never reparametrized silently.
    """
    options = options or SampleOptions(count=60)
    ctx = get_context(curve)
    ts = curve.sample_params(options.count, options.seed)
    chart = curve.structure.chart
    for t in ts:
        point = curve.point_at(t)
        if not chart.contains(point):
            raise ValueError(f"curve '{curve.name}' leaves the chart domain at t={t:.6g}")

    slant_rate = differentiate(ctx.eta_velocity, PARAM)
    speed_vals = []
    slant_vals = []
    rate_vals = []
    for t in ts:
        s, c, r = evaluate_all([ctx.speed_sq, ctx.eta_velocity, slant_rate], {PARAM: t})
        speed_vals.append(s)
        slant_vals.append(c)
        rate_vals.append(r)

    c_value = float(np.mean(slant_vals))
    slant_residual = max(
        max(abs(v - c_value) for v in slant_vals), max(abs(r) for r in rate_vals)
    )
    if slant_residual > options.tolerance:
        raise NotSlant(
            f"eta(velocity) is not constant on '{curve.name}' (residual {slant_residual:.3g})"
        )

    tol = options.tolerance
    if max(abs(v) for v in speed_vals) < tol:
        causal, epsilon1 = "null", 0
        speed_residual = max(abs(v) for v in speed_vals)
    else:
        mean = float(np.mean(speed_vals))
        epsilon1 = 1 if mean > 0 else -1
        speed_residual = max(abs(v - epsilon1) for v in speed_vals)
        if speed_residual > tol:
            raise NotConstantSpeed(
                f"g(velocity, velocity) on '{curve.name}' is neither null nor +-1 "
                f"(residual {speed_residual:.3g}); reparametrize first"
            )
        causal = "spacelike" if epsilon1 > 0 else "timelike"

    denom = abs(epsilon1 - c_value * c_value)
    delta = None
    if denom > tol:
        delta = div(ctx.dot(ctx.accel, ctx.phi_velocity), Const(denom))

    return CurveKinematics(
        causal=causal,
        epsilon1=epsilon1,
        slant_constant=c_value,
        speed_residual=speed_residual,
        slant_residual=slant_residual,
        alpha=ctx.alpha_t,
        beta=ctx.beta_t,
        delta=delta,
    )


@lru_cache(maxsize=None)
def get_kinematics(curve: Curve) -> CurveKinematics:
    return kinematics(curve)


def covariant_accel(curve: Curve, t: float) -> np.ndarray:
    """Acceleration (nabla_velocity velocity) at parameter t."""
    ctx = get_context(curve)
    return np.array(evaluate_all(list(ctx.accel), {PARAM: t}))


def is_geodesic(curve: Curve, options: SampleOptions | None = None) -> tuple[bool, float]:
    """True when the max acceleration norm over sampled parameters is below
    tolerance; also returns that residual."""
    options = options or SampleOptions(count=60)
    ctx = get_context(curve)
    worst = 0.0
    for t in curve.sample_params(options.count, options.seed):
        values = evaluate_all(list(ctx.accel), {PARAM: t})
        worst = max(worst, max(abs(v) for v in values))
    return worst < options.tolerance, worst


DEPENDENCE_KINDS = ("independent", "tangent-collinear-xi", "tangent-xi-plus-phi")


@dataclass(frozen=True)
class DependenceCase:
    kind: str
    sign: int  # +-1 for the phi branch, 0 otherwise
    residual: float


def dependence_case(curve: Curve, t: float, tol: float = 1e-9) -> DependenceCase:
    """Which dependence branch the tangent satisfies at t.

    The triple (velocity, phi velocity, xi) is linearly independent exactly
    when epsilon1 - c^2 is nonzero; otherwise the tangent equals c xi or
    c xi +- phi velocity.
    """
    kin = get_kinematics(curve)
    c = kin.slant_constant
    gap = abs(kin.epsilon1 - c * c)
    if gap > tol:
        return DependenceCase("independent", 0, gap)
    ctx = get_context(curve)
    vel = np.array(evaluate_all(list(ctx.velocity), {PARAM: t}))
    xi = np.array(evaluate_all(list(ctx.xi_t), {PARAM: t}))
    phi_vel = np.array(evaluate_all(list(ctx.phi_velocity), {PARAM: t}))
    collinear = float(np.max(np.abs(vel - c * xi)))
    if collinear < tol:
        return DependenceCase("tangent-collinear-xi", 0, collinear)
    best_sign, best = 1, float("inf")
    for sign in (1, -1):
        r = float(np.max(np.abs(vel - c * xi - sign * phi_vel)))
        if r < best:
            best_sign, best = sign, r
    return DependenceCase("tangent-xi-plus-phi", best_sign, best)


def generate_slant(
    structure: ParacontactStructure,
    x,
    y,
    slant_constant: float,
    z0: float,
    name: str = "generated",
    interval: tuple[float, float] = (-1.0, 1.0),
) -> Curve:
    """Slant curve from polynomial x(t), y(t) by solving eta(velocity) = c
    exactly for z(t).

    Requires a structure whose covector has the shape eta = f(x, y) dx +
    h(x, y) dy + dz; then z(t) = z0 + integral of (c - f x' - h y') and the
    slant identity holds symbolically.  Inputs must be polynomials in t.
    """
    t = Var(PARAM)
    x_expr, y_expr = as_expr(x), as_expr(y)
    for label, e in (("x", x_expr), ("y", y_expr)):
        extra = variables(e) - {PARAM}
        if extra:
            raise NonPolynomialInput(f"{label}(t) contains foreign variables {sorted(extra)}")
        polynomial_coefficients(e, PARAM)  # raises NonPolynomialInput when not polynomial

    coords = structure.chart.coordinates
    z_name = coords[2]
    for component in structure.eta:
        if z_name in variables(component):
            raise NonPolynomialInput("structure covector may not depend on the third coordinate")
    for probe in (0.0, 0.37, -0.81):
        if evaluate(structure.eta[2], {coords[0]: probe, coords[1]: -probe, coords[2]: 1.0}) != 1.0:
            raise NonPolynomialInput("structure covector must have unit third component")

    partial_subs = {coords[0]: x_expr, coords[1]: y_expr}
    eta1 = substitute(structure.eta[0], partial_subs)
    eta2 = substitute(structure.eta[1], partial_subs)
    integrand = sub(
        sub(Const(slant_constant), mul(eta1, differentiate(x_expr, PARAM))),
        mul(eta2, differentiate(y_expr, PARAM)),
    )
    z_expr = add(Const(z0), polynomial_antiderivative(integrand, PARAM))
    return Curve(name, structure, (x_expr, y_expr, z_expr), interval)
