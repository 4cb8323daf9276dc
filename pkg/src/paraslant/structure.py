"""Almost paracontact metric structures on a 3-dimensional chart.

Holds the chart with its domain constraints, the metric, the (1,1) tensor
phi, the characteristic vector field xi and covector eta.  Derives the
Levi-Civita connection symbolically and provides the pointwise checks:
structure axioms, normality (vanishing of the torsion tensor built from the
Nijenhuis bracket), extraction of the characteristic functions alpha and
beta from connection traces, and the subclass classification.

All checks are sample-based: symbolic zero testing is not decidable in this
expression grammar, so residuals are evaluated on a reproducible random grid
drawn inside the chart's bounding box.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainViolation, SingularMetric
from .expr import (
    Binding,
    Const,
    ScalarExpr,
    Var,
    add,
    differentiate,
    div,
    evaluate,
    evaluate_all,
    mul,
    parse_expr,
    simplify,
    sub,
)

Vector = tuple[ScalarExpr, ScalarExpr, ScalarExpr]
Matrix = tuple[Vector, Vector, Vector]

DEFAULT_BOX = ((-2.0, 2.0), (-2.0, 2.0), (-2.0, 2.0))

_ZERO = Const(0.0)


def as_expr(item) -> ScalarExpr:
    return parse_expr(item) if isinstance(item, str) else item


def as_vector(items: Iterable) -> Vector:
    v = tuple(as_expr(i) for i in items)
    if len(v) != 3:
        raise ValueError("expected exactly 3 components")
    return v  # type: ignore[return-value]


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(as_vector(r) for r in rows)
    if len(m) != 3:
        raise ValueError("expected exactly 3 rows")
    return m  # type: ignore[return-value]


def eval_vector(v: Vector, point: Binding) -> np.ndarray:
    return np.array(evaluate_all(list(v), point))


def eval_matrix(m: Matrix, point: Binding) -> np.ndarray:
    return np.array(evaluate_all([e for row in m for e in row], point)).reshape(3, 3)


@dataclass(frozen=True)
class SampleOptions:
    """Sampling and tolerance knobs shared by the numerical checks."""

    count: int = 100
    seed: int = 42
    tolerance: float = 1e-9
    box: tuple[tuple[float, float], ...] | None = None


@dataclass(frozen=True, eq=False)
class Chart:
    """Coordinate names, open-domain constraints (each expression > 0) and a
    bounding box used when sampling points."""

    coordinates: tuple[str, str, str]
    constraints: tuple[ScalarExpr, ...] = ()
    box: tuple[tuple[float, float], ...] = DEFAULT_BOX

    def __post_init__(self):
        if len(set(self.coordinates)) != 3:
            raise ValueError("coordinate names must be three distinct names")

    def contains(self, point: Binding) -> bool:
        for c in self.constraints:
            try:
                if evaluate(c, point) <= 0.0:
                    return False
            except DomainViolation:
                return False
        return True

    def sample_points(self, options: SampleOptions) -> list[dict[str, float]]:
        """Uniform rejection sampling of the box against the constraints."""
        box = options.box or self.box
        rng = np.random.default_rng(options.seed)
        points: list[dict[str, float]] = []
        attempts = 0
        while len(points) < options.count:
            attempts += 1
            if attempts > 10000 * options.count:
                raise ValueError("domain constraints reject almost all of the box")
            raw = {
                name: float(rng.uniform(lo, hi))
                for name, (lo, hi) in zip(self.coordinates, box)
            }
            if self.contains(raw):
                points.append(raw)
        return points


@dataclass(frozen=True, eq=False)
class MetricTensor:
    """Symmetric nondegenerate metric of signature (+,+,-) up to ordering."""

    coordinates: tuple[str, str, str]
    entries: Matrix

    @cached_property
    def determinant(self) -> ScalarExpr:
        g = self.entries
        terms: ScalarExpr = _ZERO
        for j, sign in ((0, 1.0), (1, -1.0), (2, 1.0)):
            cols = [c for c in range(3) if c != j]
            minor = sub(
                mul(g[1][cols[0]], g[2][cols[1]]),
                mul(g[1][cols[1]], g[2][cols[0]]),
            )
            terms = add(terms, mul(mul(Const(sign), g[0][j]), minor))
        return simplify(terms)

    @cached_property
    def inverse(self) -> Matrix:
        g = self.entries
        det = self.determinant

        def cofactor(r: int, c: int) -> ScalarExpr:
            rows = [i for i in range(3) if i != r]
            cols = [j for j in range(3) if j != c]
            minor = sub(
                mul(g[rows[0]][cols[0]], g[rows[1]][cols[1]]),
                mul(g[rows[0]][cols[1]], g[rows[1]][cols[0]]),
            )
            sign = 1.0 if (r + c) % 2 == 0 else -1.0
            return mul(Const(sign), minor)

        # adjugate transpose over determinant; symmetry keeps this readable
        return tuple(
            tuple(simplify(div(cofactor(c, r), det)) for c in range(3)) for r in range(3)
        )  # type: ignore[return-value]

    def evaluate(self, point: Binding) -> np.ndarray:
        return eval_matrix(self.entries, point)

    def validate(self, points: Sequence[Binding]) -> dict[str, float]:
        """Residuals: symmetry, nondegeneracy margin, signature violations."""
        sym = 0.0
        min_det = float("inf")
        bad_signature = 0
        for p in points:
            m = self.evaluate(p)
            sym = max(sym, float(np.max(np.abs(m - m.T))))
            min_det = min(min_det, abs(float(np.linalg.det(m))))
            eigs = np.linalg.eigvalsh(0.5 * (m + m.T))
            if int((eigs > 0).sum()) != 2 or int((eigs < 0).sum()) != 1:
                bad_signature += 1
        return {"symmetry": sym, "min_abs_det": min_det, "signature_failures": float(bad_signature)}


@dataclass(frozen=True, eq=False)
class Connection:
    """Christoffel symbols gamma[k][i][j] of a Levi-Civita connection."""

    coordinates: tuple[str, str, str]
    gamma: tuple[Matrix, Matrix, Matrix]
    metric: MetricTensor

    def evaluate_at(self, point: Binding) -> np.ndarray:
        det = evaluate(self.metric.determinant, point)
        if abs(det) < 1e-12:
            raise SingularMetric(f"metric determinant {det!r} vanishes at {point}")
        flat = evaluate_all([e for plane in self.gamma for row in plane for e in row], point)
        return np.array(flat).reshape(3, 3, 3)


def christoffel(metric: MetricTensor) -> Connection:
    """Levi-Civita symbols from the metric, symbolically.

    gamma^k_ij = (1/2) g^{kl} (d_i g_jl + d_j g_il - d_l g_ij), symmetric in
    the lower pair by construction.
    """
    coords = metric.coordinates
    _probe_not_singular(metric)
    g = metric.entries
    inv = metric.inverse
    dg = [
        [[differentiate(g[i][j], coords[l]) for l in range(3)] for j in range(3)]
        for i in range(3)
    ]
    half = Const(0.5)
    gamma = []
    for k in range(3):
        plane = []
        for i in range(3):
            row = []
            for j in range(3):
                if j < i:
                    row.append(plane[j][i])  # symmetric lower pair
                    continue
                total: ScalarExpr = _ZERO
                for l in range(3):
                    bracket = sub(add(dg[j][l][i], dg[i][l][j]), dg[i][j][l])
                    total = add(total, mul(inv[k][l], bracket))
                row.append(simplify(mul(half, total)))
            plane.append(row)
        gamma.append(tuple(tuple(r) for r in plane))
    return Connection(coords, tuple(gamma), metric)  # type: ignore[arg-type]


def _probe_not_singular(metric: MetricTensor) -> None:
    det = metric.determinant
    offsets = (0.73, 1.19, 0.41, -0.67, 1.53, -1.31, 0.89, -0.23)
    seen_value = False
    for k in range(len(offsets)):
        point = {
            name: offsets[(k + 3 * i) % len(offsets)]
            for i, name in enumerate(metric.coordinates)
        }
        try:
            value = evaluate(det, point)
        except DomainViolation:
            continue
        seen_value = True
        if abs(value) > 1e-12:
            return
    if seen_value:
        raise SingularMetric("metric determinant vanishes at every probe point")
    raise SingularMetric("metric determinant could not be evaluated at any probe point")


def covariant_derivative(connection: Connection, x_field: Vector, y_field: Vector) -> Vector:
    """(nabla_X Y)^k = X^i d_i Y^k + gamma^k_ij X^i Y^j, componentwise."""
    coords = connection.coordinates
    out = []
    for k in range(3):
        total: ScalarExpr = _ZERO
        for i in range(3):
            total = add(total, mul(x_field[i], differentiate(y_field[k], coords[i])))
            for j in range(3):
                total = add(total, mul(connection.gamma[k][i][j], mul(x_field[i], y_field[j])))
        out.append(total)
    return tuple(out)  # type: ignore[return-value]


def lie_bracket(x_field: Vector, y_field: Vector, coordinates: tuple[str, str, str]) -> Vector:
    """[X, Y]^k = X^j d_j Y^k - Y^j d_j X^k."""
    out = []
    for k in range(3):
        total: ScalarExpr = _ZERO
        for j in range(3):
            total = add(total, mul(x_field[j], differentiate(y_field[k], coordinates[j])))
            total = sub(total, mul(y_field[j], differentiate(x_field[k], coordinates[j])))
        out.append(total)
    return tuple(out)  # type: ignore[return-value]


def _basis(i: int) -> Vector:
    return tuple(Const(1.0) if k == i else _ZERO for k in range(3))  # type: ignore[return-value]


@dataclass(frozen=True, eq=False)
class ParacontactStructure:
    """Chart, metric and the structure tensors (phi, xi, eta).

    phi is stored as the mixed tensor phi^i_j (row = output component,
    column = input component), xi as vector components, eta as covector
    components.
    """

    name: str
    chart: Chart
    metric: MetricTensor
    phi: Matrix
    xi: Vector
    eta: Vector

    def __post_init__(self):
        if self.chart.coordinates != self.metric.coordinates:
            raise ValueError("chart and metric must share coordinates")

    @cached_property
    def connection(self) -> Connection:
        return christoffel(self.metric)

    @cached_property
    def characteristic_functions(self) -> tuple[ScalarExpr, ScalarExpr]:
        return alpha_beta(self)

    @property
    def characteristic_alpha(self) -> ScalarExpr:
        return self.characteristic_functions[0]

    @property
    def characteristic_beta(self) -> ScalarExpr:
        return self.characteristic_functions[1]

    # -- pointwise tensor algebra, symbolically ---------------------------

    def phi_apply(self, v: Vector) -> Vector:
        return tuple(
            add(add(mul(self.phi[i][0], v[0]), mul(self.phi[i][1], v[1])), mul(self.phi[i][2], v[2]))
            for i in range(3)
        )  # type: ignore[return-value]

    def eta_of(self, v: Vector) -> ScalarExpr:
        return add(add(mul(self.eta[0], v[0]), mul(self.eta[1], v[1])), mul(self.eta[2], v[2]))

    def inner(self, v: Vector, w: Vector) -> ScalarExpr:
        total: ScalarExpr = _ZERO
        g = self.metric.entries
        for i in range(3):
            for j in range(3):
                total = add(total, mul(g[i][j], mul(v[i], w[j])))
        return total

    def sample_points(self, options: SampleOptions) -> list[dict[str, float]]:
        return self.chart.sample_points(options)

    # -- structure checks ---------------------------------------------------

    def axiom_residuals(self, points: Sequence[Binding]) -> dict[str, float]:
        """Max residuals of the defining identities over the sample points.

        eta(xi) = 1, phi^2 = Id - eta (x) xi, phi xi = 0, eta o phi = 0,
        g(phi X, phi Y) = -g(X, Y) + eta(X) eta(Y), and eta = g(xi, .).
        """
        exprs: list[ScalarExpr] = []
        exprs.append(sub(self.eta_of(self.xi), Const(1.0)))
        phi_xi = self.phi_apply(self.xi)
        exprs.extend(phi_xi)
        for j in range(3):
            exprs.append(self.eta_of(tuple(self.phi[i][j] for i in range(3))))  # type: ignore[arg-type]
        for i in range(3):
            for j in range(3):
                phi2 = add(
                    add(mul(self.phi[i][0], self.phi[0][j]), mul(self.phi[i][1], self.phi[1][j])),
                    mul(self.phi[i][2], self.phi[2][j]),
                )
                ident = Const(1.0 if i == j else 0.0)
                exprs.append(sub(phi2, sub(ident, mul(self.eta[j], self.xi[i]))))
        for i in range(3):
            for j in range(3):
                lhs = self.inner(_col(self.phi, i), _col(self.phi, j))
                rhs = add(mul(Const(-1.0), self.metric.entries[i][j]), mul(self.eta[i], self.eta[j]))
                exprs.append(sub(lhs, rhs))
        for i in range(3):
            exprs.append(sub(self.eta[i], self.inner(_basis(i), self.xi)))
        return {"axioms": _max_abs(exprs, points)}

    def fundamental_form_residual(self, points: Sequence[Binding]) -> float:
        """Antisymmetry defect of Phi(X, Y) = g(X, phi Y) on basis pairs."""
        exprs = []
        for i in range(3):
            for j in range(i, 3):
                phi_ij = self.inner(_basis(i), _col(self.phi, j))
                phi_ji = self.inner(_basis(j), _col(self.phi, i))
                exprs.append(add(phi_ij, phi_ji))
        return _max_abs(exprs, points)

    def eigen_split_residual(self, points: Sequence[Binding]) -> float:
        """Optional check that phi has eigenvalues {0, +1, -1} pointwise."""
        worst = 0.0
        for p in points:
            m = eval_matrix(self.phi, p)
            eigs = np.sort(np.abs(np.linalg.eigvals(m)))
            worst = max(worst, float(np.max(np.abs(eigs - np.array([0.0, 1.0, 1.0])))))
        return worst


def _col(m: Matrix, j: int) -> Vector:
    return (m[0][j], m[1][j], m[2][j])


def _max_abs(exprs: Sequence[ScalarExpr], points: Sequence[Binding]) -> float:
    worst = 0.0
    exprs = list(exprs)
    for p in points:
        values = evaluate_all(exprs, p)
        worst = max(worst, max(abs(v) for v in values))
    return worst


# -- normality tensor and the equivalent conditions -------------------------


def nijenhuis_n1(structure: ParacontactStructure, i: int, j: int) -> Vector:
    """Normality tensor on the basis pair (d_i, d_j), i < j.

    [phi, phi](X, Y) - 2 d eta(X, Y) xi with
    [phi, phi](X, Y) = phi^2 [X,Y] + [phi X, phi Y] - phi [phi X, Y] - phi [X, phi Y]
    and d eta(X, Y) = (X(eta(Y)) - Y(eta(X)) - eta([X, Y])) / 2.
    """
    if not 0 <= i < j <= 2:
        raise ValueError("expected basis indices with i < j")
    coords = structure.chart.coordinates
    x_field, y_field = _basis(i), _basis(j)
    phi_x = structure.phi_apply(x_field)
    phi_y = structure.phi_apply(y_field)
    br = lie_bracket(x_field, y_field, coords)
    torsion_parts = [
        structure.phi_apply(structure.phi_apply(br)),
        lie_bracket(phi_x, phi_y, coords),
        tuple(mul(Const(-1.0), c) for c in structure.phi_apply(lie_bracket(phi_x, y_field, coords))),
        tuple(mul(Const(-1.0), c) for c in structure.phi_apply(lie_bracket(x_field, phi_y, coords))),
    ]
    torsion = tuple(
        add(add(torsion_parts[0][k], torsion_parts[1][k]), add(torsion_parts[2][k], torsion_parts[3][k]))
        for k in range(3)
    )
    d_eta = mul(
        Const(0.5),
        sub(
            sub(
                _directional(x_field, structure.eta_of(y_field), coords),
                _directional(y_field, structure.eta_of(x_field), coords),
            ),
            structure.eta_of(br),
        ),
    )
    return tuple(
        simplify(sub(torsion[k], mul(mul(Const(2.0), d_eta), structure.xi[k]))) for k in range(3)
    )  # type: ignore[return-value]


def _directional(x_field: Vector, f: ScalarExpr, coords: tuple[str, str, str]) -> ScalarExpr:
    total: ScalarExpr = _ZERO
    for i in range(3):
        total = add(total, mul(x_field[i], differentiate(f, coords[i])))
    return total


def alpha_beta(structure: ParacontactStructure) -> tuple[ScalarExpr, ScalarExpr]:
    """Characteristic functions from connection traces.

    2 alpha = trace(X -> nabla_X xi), 2 beta = trace(X -> phi nabla_X xi).
    """
    conn = structure.connection
    nabla_xi = [covariant_derivative(conn, _basis(i), structure.xi) for i in range(3)]
    two_alpha: ScalarExpr = _ZERO
    two_beta: ScalarExpr = _ZERO
    for i in range(3):
        two_alpha = add(two_alpha, nabla_xi[i][i])
        two_beta = add(two_beta, structure.phi_apply(nabla_xi[i])[i])
    return simplify(mul(Const(0.5), two_alpha)), simplify(mul(Const(0.5), two_beta))


@dataclass(frozen=True)
class NormalityResiduals:
    """Max residuals of the three equivalent normality conditions."""

    nijenhuis: float
    covariant_phi: float
    covariant_xi: float


def normality_residuals(
    structure: ParacontactStructure, points: Sequence[Binding]
) -> NormalityResiduals:
    """Sampled residuals of the normality tensor and of the two covariant
    identities that characterize it through alpha and beta:

      (nabla_X phi) Y = beta (g(X,Y) xi - eta(Y) X) + alpha (g(phi X, Y) xi - eta(Y) phi X)
      nabla_X xi = alpha (X - eta(X) xi) + beta phi X
    """
    conn = structure.connection
    alpha, beta = alpha_beta(structure)
    g = structure.metric.entries

    nij_exprs: list[ScalarExpr] = []
    for i in range(3):
        for j in range(i + 1, 3):
            nij_exprs.extend(nijenhuis_n1(structure, i, j))

    phi_exprs: list[ScalarExpr] = []
    for i in range(3):
        for j in range(3):
            nabla_phi_y = covariant_derivative(conn, _basis(i), _col(structure.phi, j))
            phi_nabla = structure.phi_apply(
                tuple(conn.gamma[k][i][j] for k in range(3))  # nabla_{d_i} d_j
            )
            g_phi = structure.inner(_col(structure.phi, i), _basis(j))
            for k in range(3):
                lhs = sub(nabla_phi_y[k], phi_nabla[k])
                rhs_beta = mul(
                    beta,
                    sub(mul(g[i][j], structure.xi[k]), mul(structure.eta[j], _basis(i)[k])),
                )
                rhs_alpha = mul(
                    alpha,
                    sub(mul(g_phi, structure.xi[k]), mul(structure.eta[j], structure.phi[k][i])),
                )
                phi_exprs.append(sub(lhs, add(rhs_beta, rhs_alpha)))

    xi_exprs: list[ScalarExpr] = []
    for i in range(3):
        nabla_xi = covariant_derivative(conn, _basis(i), structure.xi)
        for k in range(3):
            rhs = add(
                mul(alpha, sub(_basis(i)[k], mul(structure.eta[i], structure.xi[k]))),
                mul(beta, structure.phi[k][i]),
            )
            xi_exprs.append(sub(nabla_xi[k], rhs))

    return NormalityResiduals(
        nijenhuis=_max_abs(nij_exprs, points),
        covariant_phi=_max_abs(phi_exprs, points),
        covariant_xi=_max_abs(xi_exprs, points),
    )


CLASS_LABELS = (
    "paracosymplectic",
    "quasi-para-Sasakian",
    "beta-para-Sasakian",
    "para-Sasakian",
    "alpha-para-Kenmotsu",
    "generic-normal",
    "non-normal",
)


def classify(
    structure: ParacontactStructure,
    points: Sequence[Binding],
    zero_tol: float = 1e-8,
    const_tol: float = 1e-8,
) -> str:
    """Subclass label from the vanishing/constancy pattern of alpha and beta.

    Constancy needs both a flat sampled range and vanishing gradient
    components; the para-Sasakian label additionally requires beta == -1.
    """
    residuals = normality_residuals(structure, points)
    if (
        residuals.nijenhuis > 1e-9
        or residuals.covariant_phi > 1e-8
        or residuals.covariant_xi > 1e-8
    ):
        return "non-normal"
    alpha, beta = alpha_beta(structure)
    coords = structure.chart.coordinates

    def profile(f: ScalarExpr) -> tuple[bool, bool, float]:
        values = [evaluate(f, p) for p in points]
        grads = [differentiate(f, c) for c in coords]
        grad_max = _max_abs(grads, points)
        is_zero = max(abs(v) for v in values) < zero_tol
        is_const = (max(values) - min(values) < const_tol) and grad_max < const_tol
        return is_zero, is_const, float(np.mean(values))

    alpha_zero, alpha_const, _ = profile(alpha)
    beta_zero, beta_const, beta_mean = profile(beta)

    if alpha_zero and beta_zero:
        return "paracosymplectic"
    if alpha_zero and not beta_zero:
        if beta_const:
            if abs(beta_mean + 1.0) < zero_tol:
                return "para-Sasakian"
            return "beta-para-Sasakian"
        return "quasi-para-Sasakian"
    if beta_zero and alpha_const and not alpha_zero:
        return "alpha-para-Kenmotsu"
    return "generic-normal"


def metric_compatibility_residual(
    structure: ParacontactStructure, points: Sequence[Binding]
) -> float:
    """d_k g(d_i, d_j) - g(nabla_k d_i, d_j) - g(d_i, nabla_k d_j), sampled."""
    conn = structure.connection
    g = structure.metric.entries
    coords = structure.chart.coordinates
    exprs = []
    for k in range(3):
        for i in range(3):
            for j in range(3):
                nabla_ki = tuple(conn.gamma[m][k][i] for m in range(3))
                nabla_kj = tuple(conn.gamma[m][k][j] for m in range(3))
                exprs.append(
                    sub(
                        differentiate(g[i][j], coords[k]),
                        add(
                            structure.inner(nabla_ki, _basis(j)),  # type: ignore[arg-type]
                            structure.inner(_basis(i), nabla_kj),  # type: ignore[arg-type]
                        ),
                    )
                )
    return _max_abs(exprs, points)


def torsion_free_residual(
    structure: ParacontactStructure,
    x_field: Vector,
    y_field: Vector,
    points: Sequence[Binding],
) -> float:
    """nabla_X Y - nabla_Y X - [X, Y] on given fields, sampled."""
    conn = structure.connection
    coords = structure.chart.coordinates
    left = covariant_derivative(conn, x_field, y_field)
    right = covariant_derivative(conn, y_field, x_field)
    bracket = lie_bracket(x_field, y_field, coords)
    exprs = [sub(sub(left[k], right[k]), bracket[k]) for k in range(3)]
    return _max_abs(exprs, points)
