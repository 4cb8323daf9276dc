"""Moving frames and curvature/torsion data along slant curves.

Four constructions, each with two independent routes wherever a closed form
exists:

* the auxiliary orthonormal frame (tangent, normalized phi-image,
  normalized characteristic direction) and its transport identities;
* the direct Frenet apparatus, obtained purely by covariant differentiation
  and normalization (the oracle);
* closed-form curvature and torsion for order-3 slant curves from the
  characteristic functions alpha, beta and the curve function delta;
* Cartan frames for null curves and for unit-speed curves with null normal,
  again direct versus closed form.

Derivatives of frame components are always exact symbolic t-derivatives;
finite differences are never used, because the torsion formula involves
alpha' and delta' and would lose most of its accuracy otherwise.
Plus-or-minus branches in the closed forms are resolved by evaluating both
and keeping the one closer to the direct computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .curve import PARAM, Curve, CurveContext, get_context, get_kinematics
from .errors import (
    DegenerateFrame,
    DegenerateSlant,
    FrameError,
    GeodesicNullCurve,
    LegendreNullCurve,
    NormalNotNull,
    NotDistinguishedParametrization,
    NullNormal,
    NullTangent,
    ProportionalityViolated,
    VanishingCurvatureDenominator,
)
from .expr import (
    Const,
    ScalarExpr,
    absval,
    add,
    differentiate,
    div,
    evaluate,
    evaluate_all,
    mul,
    sqrt,
    sub,
)
from .structure import SampleOptions, Vector

_ZERO = Const(0.0)


def _sign(v: float) -> int:
    return 1 if v > 0 else -1


def _vec_eval(v: Sequence[ScalarExpr], t: float) -> np.ndarray:
    return np.array(evaluate_all(list(v), {PARAM: t}))


def _scale(c, v: Sequence[ScalarExpr]) -> Vector:
    return tuple(mul(c, comp) for comp in v)  # type: ignore[return-value]


def _vadd(*vs: Sequence[ScalarExpr]) -> Vector:
    out = list(vs[0])
    for v in vs[1:]:
        out = [add(a, b) for a, b in zip(out, v)]
    return tuple(out)  # type: ignore[return-value]


def _vsub(a: Sequence[ScalarExpr], b: Sequence[ScalarExpr]) -> Vector:
    return tuple(sub(x, y) for x, y in zip(a, b))  # type: ignore[return-value]


class _Pipeline:
    """Cached symbolic data shared by all frame computations on one curve."""

    def __init__(self, curve: Curve):
        self.curve = curve
        self.ctx: CurveContext = get_context(curve)
        self.kin = get_kinematics(curve)
        self.accel = self.ctx.accel
        self.g_accel = self.ctx.dot(self.accel, self.accel)
        self.accel_norm_exprs = [absval(c) for c in self.accel]
        self.alpha = self.ctx.alpha_t
        self.beta = self.ctx.beta_t
        self.alpha_dot = differentiate(self.alpha, PARAM)
        self._frenet_a: dict[int, dict] = {}
        self._frenet_b: dict[tuple[int, int], dict] = {}
        self._null_normal_w: dict[int, dict] = {}
        self._null_cartan_cache: dict | None = None
        self._f_frame_cache: dict | None = None

    # -- auxiliary orthonormal frame --------------------------------------

    def f_frame_data(self) -> dict:
        if self._f_frame_cache is not None:
            return self._f_frame_cache
        kin, ctx = self.kin, self.ctx
        if kin.epsilon1 == 0:
            raise FrameError("the auxiliary frame needs a unit-speed curve")
        e1, c = kin.epsilon1, kin.slant_constant
        gap = e1 - c * c
        if abs(gap) <= 1e-9:
            raise DegenerateFrame(
                "tangent, its phi image and the characteristic field are dependent"
            )
        m = math.sqrt(abs(gap))
        upsilon = _sign(-gap)
        f1 = ctx.velocity
        f2 = _scale(Const(1.0 / m), ctx.phi_velocity)
        f3 = _scale(Const(1.0 / m), _vsub(ctx.xi_t, _scale(Const(e1 * c), ctx.velocity)))
        frame = (f1, f2, f3)
        norms = (e1, upsilon, -e1 * upsilon)
        gram = []
        for i in range(3):
            for j in range(i, 3):
                expected = Const(float(norms[i])) if i == j else _ZERO
                gram.append(sub(ctx.dot(frame[i], frame[j]), expected))
        delta = kin.delta
        assert delta is not None
        sqrt_gap = Const(m)
        transport = [
            _vsub(
                self.accel,
                _vadd(
                    _scale(mul(Const(float(upsilon)), mul(delta, sqrt_gap)), f2),
                    _scale(mul(Const(-float(e1)), mul(self.alpha, sqrt_gap)), f3),
                ),
            ),
            _vsub(
                ctx.covariant(f2),
                _vadd(
                    _scale(mul(Const(-float(e1)), mul(delta, sqrt_gap)), f1),
                    _scale(sub(mul(Const(float(e1)), self.beta), mul(Const(float(upsilon) * c), delta)), f3),
                ),
            ),
            _vsub(
                ctx.covariant(f3),
                _vadd(
                    _scale(mul(Const(-float(e1 * upsilon)), mul(self.alpha, sqrt_gap)), f1),
                    _scale(sub(self.beta, mul(Const(float(e1 * upsilon) * c), delta)), f2),
                ),
            ),
        ]
        self._f_frame_cache = {
            "frame": frame,
            "norms": norms,
            "upsilon": upsilon,
            "gram": gram,
            "transport": transport,
        }
        return self._f_frame_cache

    # -- Frenet chain, staged by the signs fixed at the query point --------

    def frenet_stage_a(self, eps2: int) -> dict:
        if eps2 not in self._frenet_a:
            kappa = sqrt(absval(self.g_accel))
            e2 = tuple(div(c, mul(Const(float(eps2)), kappa)) for c in self.accel)
            de2 = self.ctx.covariant(e2)
            m2 = _vadd(de2, _scale(mul(kappa, Const(float(self.kin.epsilon1))), self.ctx.velocity))
            self._frenet_a[eps2] = {
                "kappa": kappa,
                "e2": e2,
                "de2": de2,
                "m2": m2,
                "g_m2": self.ctx.dot(m2, m2),
            }
        return self._frenet_a[eps2]

    def frenet_stage_b(self, eps2: int, eps3: int) -> dict:
        key = (eps2, eps3)
        if key not in self._frenet_b:
            a = self.frenet_stage_a(eps2)
            tau = sqrt(absval(a["g_m2"]))
            e3 = tuple(div(c, mul(Const(float(eps3)), tau)) for c in a["m2"])
            de3 = self.ctx.covariant(e3)
            e1v = self.ctx.velocity
            resid1 = _vsub(self.accel, _scale(mul(a["kappa"], Const(float(eps2))), a["e2"]))
            resid2 = _vsub(a["m2"], _scale(mul(tau, Const(float(eps3))), e3))
            resid3 = _vadd(de3, _scale(mul(tau, Const(float(eps2))), a["e2"]))
            ortho = [
                sub(self.ctx.dot(a["e2"], a["e2"]), Const(float(eps2))),
                sub(self.ctx.dot(e3, e3), Const(float(eps3))),
                self.ctx.dot(a["e2"], e3),
                self.ctx.dot(e1v, a["e2"]),
                self.ctx.dot(e1v, e3),
            ]
            self._frenet_b[key] = {
                "tau": tau,
                "e3": e3,
                "residuals": [resid1, resid2, resid3],
                "ortho": ortho,
            }
        return self._frenet_b[key]

    # -- closed-form order-3 data ------------------------------------------

    def closed_form_exprs(self) -> dict:
        kin = self.kin
        delta = kin.delta
        assert delta is not None and kin.epsilon1 != 0
        e1 = float(kin.epsilon1)
        p2 = sub(mul(self.alpha, self.alpha), mul(Const(e1), mul(delta, delta)))
        delta_dot = differentiate(delta, PARAM)
        wron = sub(mul(self.alpha, delta_dot), mul(self.alpha_dot, delta))
        return {"p2": p2, "wronskian": wron, "delta": delta}

    # -- null-normal frame --------------------------------------------------

    def null_normal_w(self, sigma: int) -> dict:
        """Frame partner of a null normal, solved in the tangent / phi-image /
        characteristic basis.  sigma picks the branch of g(W, W) = 0."""
        if sigma not in self._null_normal_w:
            ctx, kin = self.ctx, self.kin
            c = kin.slant_constant
            a2 = ctx.dot(self.accel, ctx.phi_velocity)
            a3 = ctx.dot(self.accel, ctx.xi_t)
            denom = add(mul(Const(float(sigma)), a2), a3)
            r = div(Const(1.0), denom)
            w = _vadd(
                _scale(mul(Const(-c), r), ctx.velocity),
                _scale(mul(Const(float(sigma)), r), ctx.phi_velocity),
                _scale(r, ctx.xi_t),
            )
            dn = ctx.covariant(self.accel)
            kappa = ctx.dot(dn, w)
            dw = ctx.covariant(w)
            resid_n = _vsub(dn, _scale(kappa, self.accel))
            resid_w = _vadd(dw, ctx.velocity, _scale(kappa, w))
            pairings = [
                sub(ctx.dot(ctx.velocity, ctx.velocity), Const(1.0)),
                sub(ctx.dot(self.accel, w), Const(1.0)),
                ctx.dot(self.accel, self.accel),
                ctx.dot(w, w),
                ctx.dot(ctx.velocity, self.accel),
                ctx.dot(ctx.velocity, w),
            ]
            self._null_normal_w[sigma] = {
                "w": w,
                "denom": denom,
                "dn": dn,
                "kappa": kappa,
                "resid_n": resid_n,
                "resid_w": resid_w,
                "pairings": pairings,
            }
        return self._null_normal_w[sigma]

    # -- null Cartan frame ----------------------------------------------------

    def null_cartan_data(self) -> dict:
        if self._null_cartan_cache is None:
            ctx = self.ctx
            n = self.accel
            dn = ctx.covariant(n)
            tau = mul(Const(0.5), ctx.dot(dn, dn))
            w = _vsub(_scale(Const(-1.0), dn), _scale(tau, ctx.velocity))
            dw = ctx.covariant(w)
            resid_w = _vsub(dw, _scale(tau, n))
            resid_n = _vadd(dn, _scale(tau, ctx.velocity), w)
            pairings = [
                ctx.dot(ctx.velocity, ctx.velocity),
                sub(ctx.dot(ctx.velocity, w), Const(1.0)),
                sub(ctx.dot(n, n), Const(1.0)),
                ctx.dot(ctx.velocity, n),
                ctx.dot(w, w),
                ctx.dot(w, n),
            ]
            self._null_cartan_cache = {
                "n": n,
                "dn": dn,
                "tau": tau,
                "w": w,
                "resid_w": resid_w,
                "resid_n": resid_n,
                "pairings": pairings,
            }
        return self._null_cartan_cache


@lru_cache(maxsize=None)
def _pipeline(curve: Curve) -> _Pipeline:
    return _Pipeline(curve)


# -- public frame operations --------------------------------------------------


@dataclass(frozen=True)
class FFrameResult:
    """Auxiliary frame at one parameter, with its defining residuals."""

    vectors: tuple[np.ndarray, np.ndarray, np.ndarray]
    upsilon: int
    signed_norms: tuple[int, int, int]
    gram_residual: float
    transport_residuals: tuple[float, float, float]


def f_frame(curve: Curve, t: float, options: SampleOptions | None = None) -> FFrameResult:
    pipe = _pipeline(curve)
    data = pipe.f_frame_data()
    frame_vals = [_vec_eval(v, t) for v in data["frame"]]
    gram = max(abs(v) for v in evaluate_all(data["gram"], {PARAM: t}))
    transport = tuple(
        float(np.max(np.abs(_vec_eval(r, t)))) for r in data["transport"]
    )
    return FFrameResult(
        vectors=tuple(frame_vals),  # type: ignore[arg-type]
        upsilon=data["upsilon"],
        signed_norms=data["norms"],
        gram_residual=float(gram),
        transport_residuals=transport,  # type: ignore[arg-type]
    )


@dataclass(frozen=True)
class FrenetApparatus:
    """Direct Frenet data at one parameter value."""

    order: int
    epsilon1: int
    epsilon2: int | None
    epsilon3: int | None
    kappa: float
    tau: float | None
    e1: np.ndarray
    e2: np.ndarray | None
    e3: np.ndarray | None
    equation_residual: float
    orthonormality_residual: float


def frenet_direct(curve: Curve, t: float, options: SampleOptions | None = None) -> FrenetApparatus:
    """Frenet frame by covariant differentiation and normalization only.

    Raises NullTangent for null curves and NullNormal when the acceleration
    is a nonzero null vector; those regimes have their own frames.
    """
    tol = (options or SampleOptions()).tolerance
    pipe = _pipeline(curve)
    kin = pipe.kin
    if kin.epsilon1 == 0:
        raise NullTangent(f"curve '{curve.name}' has a null tangent")
    e1v = _vec_eval(pipe.ctx.velocity, t)
    accel_v = _vec_eval(pipe.accel, t)
    if float(np.max(np.abs(accel_v))) < tol:
        return FrenetApparatus(1, kin.epsilon1, None, None, 0.0, None, e1v, None, None, 0.0, 0.0)
    g_acc = evaluate(pipe.g_accel, {PARAM: t})
    if abs(g_acc) < tol:
        raise NullNormal(f"curve '{curve.name}' has a null normal at t={t:.6g}")
    eps2 = _sign(g_acc)
    stage_a = pipe.frenet_stage_a(eps2)
    kappa_v, g_m2 = evaluate_all([stage_a["kappa"], stage_a["g_m2"]], {PARAM: t})
    e2v = _vec_eval(stage_a["e2"], t)
    m2v = _vec_eval(stage_a["m2"], t)
    if float(np.max(np.abs(m2v))) < tol:
        ortho = abs(evaluate(pipe.ctx.dot(stage_a["e2"], stage_a["e2"]), {PARAM: t}) - eps2)
        return FrenetApparatus(
            2, kin.epsilon1, eps2, None, float(kappa_v), None, e1v, e2v, None, 0.0, float(ortho)
        )
    if abs(g_m2) < tol:
        raise FrameError(
            f"curve '{curve.name}': the second normal direction is null at t={t:.6g}"
        )
    eps3 = _sign(g_m2)
    stage_b = pipe.frenet_stage_b(eps2, eps3)
    tau_v = evaluate(stage_b["tau"], {PARAM: t})
    e3v = _vec_eval(stage_b["e3"], t)
    eq_res = max(
        float(np.max(np.abs(_vec_eval(r, t)))) for r in stage_b["residuals"]
    )
    ortho_res = max(abs(v) for v in evaluate_all(stage_b["ortho"], {PARAM: t}))
    return FrenetApparatus(
        3,
        kin.epsilon1,
        eps2,
        eps3,
        float(kappa_v),
        float(tau_v),
        e1v,
        e2v,
        e3v,
        eq_res,
        float(ortho_res),
    )


@dataclass(frozen=True)
class ClosedFormFrenet:
    """Curvature/torsion of an order-3 slant curve from alpha, beta, delta."""

    kappa: float
    tau: float
    epsilon2: int
    epsilon3: int


def frenet_closed_form(
    curve: Curve, t: float, options: SampleOptions | None = None
) -> ClosedFormFrenet:
    """kappa = sqrt(|e1 - c^2| |alpha^2 - e1 delta^2|) and
    tau = |sgn(1 - e1 c^2) beta + c delta + (alpha delta' - alpha' delta) /
    (alpha^2 - e1 delta^2)|, with exact symbolic derivatives of alpha and
    delta along the curve.
    """
    tol = (options or SampleOptions()).tolerance
    pipe = _pipeline(curve)
    kin = pipe.kin
    if kin.epsilon1 == 0:
        raise NullTangent(f"curve '{curve.name}' has a null tangent")
    e1, c = kin.epsilon1, kin.slant_constant
    gap = e1 - c * c
    if abs(gap) <= tol:
        raise DegenerateFrame("closed forms need an independent tangent triple")
    cf = pipe.closed_form_exprs()
    p2_v, wron_v, alpha_v, beta_v, delta_v = evaluate_all(
        [cf["p2"], cf["wronskian"], pipe.alpha, pipe.beta, cf["delta"]], {PARAM: t}
    )
    if abs(p2_v) < tol:
        raise VanishingCurvatureDenominator(
            f"alpha^2 - e1 delta^2 vanishes at t={t:.6g} on '{curve.name}'"
        )
    kappa = math.sqrt(abs(gap) * abs(p2_v))
    tau = abs(_sign(1.0 - e1 * c * c) * beta_v + c * delta_v + wron_v / p2_v)
    upsilon = _sign(-gap)
    eps2 = _sign(-e1 * upsilon * p2_v)
    eps3 = -e1 * eps2
    return ClosedFormFrenet(kappa=kappa, tau=tau, epsilon2=eps2, epsilon3=eps3)


@dataclass(frozen=True)
class NullCartanApparatus:
    """Cartan frame of a non-geodesic null curve in the distinguished
    parametrization, plus the closed-form comparison."""

    T: np.ndarray
    N: np.ndarray
    W: np.ndarray
    tau: float
    pairing_residual: float
    cartan_residual: float
    sign_branch: int
    closed_tau: float
    closed_N: np.ndarray
    closed_W: np.ndarray
    closed_form_deviation: float


def null_cartan(curve: Curve, t: float, options: SampleOptions | None = None) -> NullCartanApparatus:
    """Direct Cartan data T, N = nabla T, tau = g(nabla N, nabla N)/2,
    W = -nabla N - tau T, checked against the closed forms

      tau = -alpha^2 c^2 / 2 - alpha' c + s beta - 1/(2 c^2)
      N   = alpha c T + (s/c) phi T
      W   = -((alpha^2 c^2 + c^-2)/2) T - s alpha phi T + (1/c) xi.
    """
    opts = options or SampleOptions()
    pipe = _pipeline(curve)
    kin = pipe.kin
    if kin.epsilon1 != 0:
        raise FrameError(f"curve '{curve.name}' does not have a null tangent")
    c = kin.slant_constant
    ts = curve.sample_params(24, opts.seed)
    accel_norms = [float(np.max(np.abs(_vec_eval(pipe.accel, s)))) for s in ts + [t]]
    strict = max(accel_norms)
    if abs(c) < 1e-9:
        pregeo = _pregeodesic_residual(pipe, ts + [t])
        raise LegendreNullCurve(
            f"null curve '{curve.name}' is Legendre, hence a geodesic "
            f"(acceleration residual {strict:.3g})",
            strict_residual=strict,
            pregeodesic_residual=pregeo,
        )
    if strict < 1e-8:
        raise GeodesicNullCurve(f"null curve '{curve.name}' is a geodesic")
    data = pipe.null_cartan_data()
    g_nn = evaluate(pipe.g_accel, {PARAM: t})
    if abs(g_nn - 1.0) > 1e-7:
        raise NotDistinguishedParametrization(
            f"g(accel, accel) = {g_nn:.6g} at t={t:.6g}; the null frame needs the "
            "normalization g(accel, accel) = 1"
        )
    tau_v = evaluate(data["tau"], {PARAM: t})
    t_v = _vec_eval(pipe.ctx.velocity, t)
    n_v = _vec_eval(data["n"], t)
    w_v = _vec_eval(data["w"], t)
    pairing = max(abs(v) for v in evaluate_all(data["pairings"], {PARAM: t}))
    cartan = max(
        float(np.max(np.abs(_vec_eval(data["resid_w"], t)))),
        float(np.max(np.abs(_vec_eval(data["resid_n"], t)))),
    )
    alpha_v, alpha_dot_v, beta_v = evaluate_all(
        [pipe.alpha, pipe.alpha_dot, pipe.beta], {PARAM: t}
    )
    phi_vel_v = _vec_eval(pipe.ctx.phi_velocity, t)
    xi_v = _vec_eval(pipe.ctx.xi_t, t)
    best = None
    for s in (1, -1):
        n_cf = alpha_v * c * t_v + (s / c) * phi_vel_v
        tau_cf = -0.5 * alpha_v**2 * c**2 - alpha_dot_v * c + s * beta_v - 0.5 / c**2
        w_cf = -0.5 * (alpha_v**2 * c**2 + c**-2) * t_v - s * alpha_v * phi_vel_v + xi_v / c
        dev = float(np.max(np.abs(n_cf - n_v)))
        if best is None or dev < best[0]:
            best = (dev, s, tau_cf, n_cf, w_cf)
    dev_n, s, tau_cf, n_cf, w_cf = best
    deviation = max(dev_n, abs(tau_cf - tau_v), float(np.max(np.abs(w_cf - w_v))))
    return NullCartanApparatus(
        T=t_v,
        N=n_v,
        W=w_v,
        tau=float(tau_v),
        pairing_residual=float(pairing),
        cartan_residual=cartan,
        sign_branch=s,
        closed_tau=float(tau_cf),
        closed_N=n_cf,
        closed_W=w_cf,
        closed_form_deviation=float(deviation),
    )


def _pregeodesic_residual(pipe: _Pipeline, ts: Sequence[float]) -> float:
    """How far the acceleration is from being tangent-proportional."""
    worst = 0.0
    for s in ts:
        acc = _vec_eval(pipe.accel, s)
        vel = _vec_eval(pipe.ctx.velocity, s)
        denom = float(vel @ vel)
        lam = float(acc @ vel) / denom if denom > 1e-30 else 0.0
        worst = max(worst, float(np.max(np.abs(acc - lam * vel))))
    return worst


@dataclass(frozen=True)
class NullNormalApparatus:
    """Frame of a unit-speed curve whose acceleration is a nonzero null
    vector, with the closed-form comparison and recovered alpha."""

    T: np.ndarray
    N: np.ndarray
    W: np.ndarray
    kappa: float
    pairing_residual: float
    cartan_residual: float
    sign_branch: int
    closed_kappa: float
    closed_N: np.ndarray
    closed_W: np.ndarray
    closed_form_deviation: float
    alpha_recovered: float
    alpha_deviation: float


def null_normal_frame(
    curve: Curve, t: float, options: SampleOptions | None = None
) -> NullNormalApparatus:
    """Direct null-normal frame versus the closed forms

      N = -alpha (xi - c T + s phi T),
      kappa = alpha'/alpha + s beta + alpha c,
      W = -(xi - c T - s phi T) / (2 alpha (1 - c^2)),

    with alpha recovered from s g(N, phi T) / (1 - c^2)."""
    opts = options or SampleOptions()
    tol = opts.tolerance
    pipe = _pipeline(curve)
    kin = pipe.kin
    if kin.epsilon1 == 0:
        raise NullTangent(f"curve '{curve.name}' has a null tangent")
    if kin.epsilon1 != 1:
        raise FrameError("null-normal frames need a unit spacelike tangent")
    c = kin.slant_constant
    if abs(c * c - 1.0) < tol:
        raise DegenerateSlant("slant constant squares to one; the frame degenerates")
    accel_v = _vec_eval(pipe.accel, t)
    scale = float(np.max(np.abs(accel_v)))
    if scale < tol:
        raise FrameError(f"curve '{curve.name}' is a geodesic at t={t:.6g}; no normal direction")
    g_acc = evaluate(pipe.g_accel, {PARAM: t})
    if abs(g_acc) > 1e-8 * max(1.0, scale * scale):
        raise NormalNotNull(
            f"g(accel, accel) = {g_acc:.6g} at t={t:.6g}; the normal is not null"
        )
    # branch of the algebraic W-solve: exactly one denominator is nonzero
    denoms = {
        sigma: evaluate(pipe.null_normal_w(sigma)["denom"], {PARAM: t}) for sigma in (1, -1)
    }
    sigma = max(denoms, key=lambda k: abs(denoms[k]))
    if abs(denoms[sigma]) < tol:
        raise ProportionalityViolated("frame partner solve is singular; inputs inconsistent")
    data = pipe.null_normal_w(sigma)
    kappa_v = evaluate(data["kappa"], {PARAM: t})
    dn_v = _vec_eval(data["dn"], t)
    prop = float(np.max(np.abs(dn_v - kappa_v * accel_v)))
    if prop > 1e-8 * max(1.0, float(np.max(np.abs(dn_v)))):
        raise ProportionalityViolated(
            f"nabla N is not parallel to N at t={t:.6g} (residual {prop:.3g})"
        )
    t_v = _vec_eval(pipe.ctx.velocity, t)
    w_v = _vec_eval(data["w"], t)
    pairing = max(abs(v) for v in evaluate_all(data["pairings"], {PARAM: t}))
    cartan = max(
        float(np.max(np.abs(_vec_eval(data["resid_n"], t)))),
        float(np.max(np.abs(_vec_eval(data["resid_w"], t)))),
    )
    # independent numeric W: particular solution of the linear conditions,
    # shifted along N to kill g(W, W)
    point = curve.point_at(t)
    g_mat = curve.structure.metric.evaluate(point)
    lhs = np.vstack([t_v @ g_mat, accel_v @ g_mat])
    w0 = np.linalg.lstsq(lhs, np.array([0.0, 1.0]), rcond=None)[0]
    w_num = w0 - 0.5 * float(w0 @ g_mat @ w0) * accel_v
    w_consistency = float(np.max(np.abs(w_num - w_v)))

    alpha_v, alpha_dot_v, beta_v = evaluate_all(
        [pipe.alpha, pipe.alpha_dot, pipe.beta], {PARAM: t}
    )
    phi_vel_v = _vec_eval(pipe.ctx.phi_velocity, t)
    xi_v = _vec_eval(pipe.ctx.xi_t, t)
    best = None
    for s in (1, -1):
        n_cf = -alpha_v * (xi_v - c * t_v + s * phi_vel_v)
        kappa_cf = alpha_dot_v / alpha_v + s * beta_v + alpha_v * c
        w_cf = -(xi_v - c * t_v - s * phi_vel_v) / (2.0 * alpha_v * (1.0 - c * c))
        dev = float(np.max(np.abs(n_cf - accel_v)))
        if best is None or dev < best[0]:
            best = (dev, s, kappa_cf, n_cf, w_cf)
    dev_n, s, kappa_cf, n_cf, w_cf = best
    deviation = max(
        dev_n, abs(kappa_cf - kappa_v), float(np.max(np.abs(w_cf - w_v))), w_consistency
    )
    alpha_rec = s * float(accel_v @ g_mat @ phi_vel_v) / (1.0 - c * c)
    return NullNormalApparatus(
        T=t_v,
        N=accel_v,
        W=w_v,
        kappa=float(kappa_v),
        pairing_residual=float(pairing),
        cartan_residual=cartan,
        sign_branch=s,
        closed_kappa=float(kappa_cf),
        closed_N=n_cf,
        closed_W=w_cf,
        closed_form_deviation=float(deviation),
        alpha_recovered=float(alpha_rec),
        alpha_deviation=float(abs(alpha_rec - alpha_v)),
    )


# -- regime dispatch -----------------------------------------------------------


@dataclass
class CurveReport:
    """Regime-dispatched summary of a curve at chosen parameter values."""

    curve: str
    regime: str
    causal: str
    epsilon1: int
    slant_constant: float
    rows: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "curve": self.curve,
            "regime": self.regime,
            "causal": self.causal,
            "epsilon1": self.epsilon1,
            "slant_constant": self.slant_constant,
            "rows": self.rows,
            "notes": self.notes,
        }


def curve_report(curve: Curve, ts: Sequence[float], options: SampleOptions | None = None) -> CurveReport:
    """Analyze the curve at each t, choosing the frame machinery by regime."""
    opts = options or SampleOptions()
    kin = get_kinematics(curve)
    report = CurveReport(
        curve=curve.name,
        regime="",
        causal=kin.causal,
        epsilon1=kin.epsilon1,
        slant_constant=kin.slant_constant,
    )
    if kin.epsilon1 == 0:
        return _null_report(curve, ts, opts, report)
    mid = ts[len(ts) // 2]
    try:
        probe = frenet_direct(curve, mid, opts)
    except NullNormal:
        report.regime = "null-normal"
        for t in ts:
            app = null_normal_frame(curve, t, opts)
            report.rows.append(
                {
                    "t": t,
                    "kappa": app.kappa,
                    "closed_kappa": app.closed_kappa,
                    "T": app.T.tolist(),
                    "N": app.N.tolist(),
                    "W": app.W.tolist(),
                    "sign_branch": app.sign_branch,
                    "alpha_recovered": app.alpha_recovered,
                    "pairing_residual": app.pairing_residual,
                    "cartan_residual": app.cartan_residual,
                    "closed_form_deviation": app.closed_form_deviation,
                }
            )
        return report
    if probe.order == 1:
        report.regime = "geodesic"
        for t in ts:
            acc = _vec_eval(_pipeline(curve).accel, t)
            report.rows.append({"t": t, "accel_norm": float(np.max(np.abs(acc)))})
        return report
    report.regime = f"frenet-order-{probe.order}"
    for t in ts:
        app = frenet_direct(curve, t, opts)
        row = {
            "t": t,
            "order": app.order,
            "kappa": app.kappa,
            "tau": app.tau,
            "epsilon2": app.epsilon2,
            "epsilon3": app.epsilon3,
            "equation_residual": app.equation_residual,
        }
        if app.order == 3:
            cf = frenet_closed_form(curve, t, opts)
            row["closed_kappa"] = cf.kappa
            row["closed_tau"] = cf.tau
            row["kappa_deviation"] = abs(cf.kappa - app.kappa)
            row["tau_deviation"] = abs(cf.tau - (app.tau or 0.0))
            row["signs_match"] = bool(cf.epsilon2 == app.epsilon2 and cf.epsilon3 == app.epsilon3)
        report.rows.append(row)
    return report


def _null_report(curve: Curve, ts: Sequence[float], opts: SampleOptions, report: CurveReport) -> CurveReport:
    try:
        first = null_cartan(curve, ts[0], opts)
    except LegendreNullCurve as err:
        report.regime = "null-legendre-geodesic"
        report.notes.append(str(err))
        report.rows.append(
            {
                "strict_geodesic_residual": err.strict_residual,
                "pregeodesic_residual": err.pregeodesic_residual,
            }
        )
        return report
    except (GeodesicNullCurve, NotDistinguishedParametrization) as err:
        report.regime = "null-unsupported"
        report.notes.append(str(err))
        return report
    report.regime = "null-cartan"
    for t in ts:
        app = null_cartan(curve, t, opts)
        report.rows.append(
            {
                "t": t,
                "tau": app.tau,
                "closed_tau": app.closed_tau,
                "T": app.T.tolist(),
                "N": app.N.tolist(),
                "W": app.W.tolist(),
                "sign_branch": app.sign_branch,
                "pairing_residual": app.pairing_residual,
                "cartan_residual": app.cartan_residual,
                "closed_form_deviation": app.closed_form_deviation,
            }
        )
    return report
