"""Structure layer: connection, brackets, normality, characteristic
functions, classification and the sampled invariants."""

from __future__ import annotations

import math

import numpy as np
import pytest

from paraslant import expr as ex
from paraslant.errors import SingularMetric
from paraslant.expr import evaluate, evaluate_all, parse_expr
from paraslant.fixtures import (
    example1,
    perturbed_example1,
    sign_flipped_example1,
)
from paraslant.structure import (
    Chart,
    MetricTensor,
    ParacontactStructure,
    SampleOptions,
    alpha_beta,
    as_matrix,
    as_vector,
    christoffel,
    classify,
    covariant_derivative,
    lie_bracket,
    metric_compatibility_residual,
    nijenhuis_n1,
    normality_residuals,
    torsion_free_residual,
)

COORDS = ("x", "y", "z")


def _basis(i):
    return tuple(ex.Const(1.0 if k == i else 0.0) for k in range(3))


# -- chart sampling ------------------------------------------------------------


def test_sampling_respects_constraints(ex2):
    pts = ex2.sample_points(SampleOptions(count=50, seed=3))
    assert len(pts) == 50
    assert all(p["z"] > 0 for p in pts)
    assert all(-2 <= p["x"] <= 2 for p in pts)


def test_sampling_rejects_impossible_domain():
    chart = Chart(COORDS, (parse_expr("0 - 1 - x^2"),))
    with pytest.raises(ValueError):
        chart.sample_points(SampleOptions(count=2, seed=1))


def test_sampling_deterministic(ex1):
    a = ex1.sample_points(SampleOptions(count=10, seed=9))
    b = ex1.sample_points(SampleOptions(count=10, seed=9))
    assert a == b


# -- metric validation ---------------------------------------------------------


def test_metric_validation(ex1, ex1_points, ex2, ex2_points, flat, flat_points):
    for s, pts in ((ex1, ex1_points), (ex2, ex2_points), (flat, flat_points)):
        report = s.metric.validate(pts)
        assert report["symmetry"] < 1e-12
        assert report["min_abs_det"] > 1e-10
        assert report["signature_failures"] == 0


def test_degenerate_metric_rejected():
    g = MetricTensor(COORDS, as_matrix((("0", "0", "0"), ("0", "1", "0"), ("0", "0", "1"))))
    with pytest.raises(SingularMetric):
        christoffel(g)


# -- connection ----------------------------------------------------------------

EXAMPLE2_TABLE = {
    (2, 0, 0): "1",
    (0, 0, 2): "1/(2*z)",
    (2, 1, 1): "-1",
    (1, 1, 2): "1/(2*z)",
}

EXAMPLE1_TABLE = {
    (0, 0): ("0", "-x/z", "1 + 2*x^2/z"),
    (0, 1): ("0", "x/z", "1 - 2*x^2/z"),
    (0, 2): ("1/(2*z)", "1/(2*z)", "-x/z"),
    (1, 1): ("2*x/z", "x/z", "-(1 + 2*x^2/z)"),
    (1, 2): ("1/(2*z)", "1/(2*z)", "-x/z"),
    (2, 2): ("0", "0", "0"),
}


def test_christoffel_example2(ex2, ex2_points):
    gamma = ex2.connection.gamma
    worst = 0.0
    for k in range(3):
        for i in range(3):
            for j in range(3):
                expected = parse_expr(EXAMPLE2_TABLE.get((k, min(i, j), max(i, j)), "0"))
                diff = gamma[k][i][j] - expected
                worst = max(worst, max(abs(evaluate(diff, p)) for p in ex2_points[:25]))
    assert worst < 1e-12


def test_christoffel_example1(ex1, ex1_points):
    gamma = ex1.connection.gamma
    exprs = []
    for (i, j), comps in EXAMPLE1_TABLE.items():
        for k in range(3):
            exprs.append(gamma[k][i][j] - parse_expr(comps[k]))
            exprs.append(gamma[k][j][i] - parse_expr(comps[k]))
    worst = max(max(abs(v) for v in evaluate_all(exprs, p)) for p in ex1_points[:40])
    assert worst < 1e-12


def test_christoffel_flat_vanishes(flat, flat_points):
    gamma = flat.connection.gamma
    flat_exprs = [gamma[k][i][j] for k in range(3) for i in range(3) for j in range(3)]
    worst = max(max(abs(v) for v in evaluate_all(flat_exprs, p)) for p in flat_points[:10])
    assert worst == 0.0


def test_connection_evaluation_guards_singular_points(ex1):
    with pytest.raises(SingularMetric):
        ex1.connection.evaluate_at({"x": 0.3, "y": 0.0, "z": 0.0})


# -- covariant derivative and brackets ------------------------------------------


def test_covariant_derivative_of_vertical_field(ex1, ex1_points):
    out = covariant_derivative(ex1.connection, _basis(2), _basis(2))
    worst = max(max(abs(v) for v in evaluate_all(list(out), p)) for p in ex1_points[:20])
    assert worst < 1e-14


def test_covariant_derivative_xi_along_xi(ex2, ex2_points):
    out = covariant_derivative(ex2.connection, ex2.xi, ex2.xi)
    worst = max(max(abs(v) for v in evaluate_all(list(out), p)) for p in ex2_points[:20])
    assert worst < 1e-14


def test_covariant_derivative_flat_is_directional(flat, flat_points):
    x_field = as_vector(("y", "x*z", "1"))
    y_field = as_vector(("x^2", "sinh(z)", "x*y"))
    out = covariant_derivative(flat.connection, x_field, y_field)
    for k in range(3):
        expected = ex.Const(0.0)
        for i in range(3):
            expected = ex.add(
                expected, ex.mul(x_field[i], ex.differentiate(y_field[k], COORDS[i]))
            )
        diff = out[k] - expected
        assert max(abs(evaluate(diff, p)) for p in flat_points[:15]) < 1e-12


def test_lie_bracket_coordinate_fields_commute():
    out = lie_bracket(_basis(0), _basis(1), COORDS)
    assert all(evaluate(c, {"x": 0.3, "y": 1.0, "z": 2.0}) == 0.0 for c in out)


def test_lie_bracket_antisymmetry_on_self():
    field = as_vector(("x*y", "z^2", "sinh(x)"))
    out = lie_bracket(field, field, COORDS)
    p = {"x": 0.7, "y": -0.4, "z": 1.2}
    assert all(abs(evaluate(c, p)) < 1e-14 for c in out)


def test_lie_bracket_twisted_field():
    """[d_y - 2x d_z, d_x] = 2 d_z, cross-checked by composing exact flows."""
    a_field = as_vector(("0", "1", "-2*x"))
    b_field = as_vector(("1", "0", "0"))
    out = lie_bracket(a_field, b_field, COORDS)
    p = {"x": 0.9, "y": -0.3, "z": 0.6}
    values = [evaluate(c, p) for c in out]
    assert values == pytest.approx([0.0, 0.0, 2.0], abs=1e-14)

    # flow oracle: both flows are affine and integrate exactly
    def flow_a(q, s):  # x' = 0, y' = 1, z' = -2x
        return {"x": q["x"], "y": q["y"] + s, "z": q["z"] - 2 * q["x"] * s}

    def flow_b(q, s):  # x' = 1
        return {"x": q["x"] + s, "y": q["y"], "z": q["z"]}

    h = 1e-3
    q = flow_b(flow_a(flow_b(flow_a(p, h), h), -h), -h)
    commutator = [(q[c] - p[c]) / h**2 for c in COORDS]
    assert commutator == pytest.approx(values, abs=1e-9)


def test_lie_bracket_against_finite_differences():
    rng = np.random.default_rng(5)
    x_field = as_vector(("x*y", "z", "y^2"))
    y_field = as_vector(("z*x", "x", "y"))
    out = lie_bracket(x_field, y_field, COORDS)
    h = 1e-6
    for _ in range(5):
        p = {c: float(rng.uniform(0.4, 1.5)) for c in COORDS}
        exact = [evaluate(c, p) for c in out]
        approx = [0.0, 0.0, 0.0]
        for j, cj in enumerate(COORDS):
            hi = dict(p)
            lo = dict(p)
            hi[cj] += h
            lo[cj] -= h
            for k in range(3):
                dyk = (evaluate(y_field[k], hi) - evaluate(y_field[k], lo)) / (2 * h)
                dxk = (evaluate(x_field[k], hi) - evaluate(x_field[k], lo)) / (2 * h)
                approx[k] += evaluate(x_field[j], p) * dyk - evaluate(y_field[j], p) * dxk
        assert approx == pytest.approx(exact, abs=1e-7)


# -- normality -----------------------------------------------------------------


def test_nijenhuis_vanishes_on_fixtures(ex1, ex2, ex1_points, ex2_points):
    for s, pts in ((ex1, ex1_points), (ex2, ex2_points)):
        for i in range(3):
            for j in range(i + 1, 3):
                n1 = nijenhuis_n1(s, i, j)
                worst = max(max(abs(v) for v in evaluate_all(list(n1), p)) for p in pts[:30])
                assert worst < 1e-12, (s.name, i, j)


def test_nijenhuis_sign_flip_is_still_normal(ex1_points):
    """Negating phi preserves both the axioms and normality."""
    flipped = sign_flipped_example1()
    assert flipped.axiom_residuals(ex1_points[:20])["axioms"] < 1e-12
    res = normality_residuals(flipped, ex1_points[:20])
    assert res.nijenhuis < 1e-12
    assert max(res.covariant_phi, res.covariant_xi) < 1e-12


def test_scaled_phi_breaks_normality(ex1_points):
    res = normality_residuals(perturbed_example1(1.1), ex1_points[:20])
    assert res.nijenhuis > 1e-3


def test_alpha_beta_values(ex1, ex2, ex1_points, ex2_points):
    a1, b1 = alpha_beta(ex1)
    for p in ex1_points[:30]:
        assert evaluate(a1, p) == pytest.approx(1 / (2 * p["z"]), abs=1e-12)
        assert evaluate(b1, p) == pytest.approx(1 / (2 * p["z"]), abs=1e-12)
    a2, b2 = alpha_beta(ex2)
    for p in ex2_points[:30]:
        assert evaluate(a2, p) == pytest.approx(1 / (2 * p["z"]), abs=1e-12)
        assert evaluate(b2, p) == 0.0


def test_flat_characteristics_vanish(flat, flat_points):
    alpha, beta = alpha_beta(flat)
    worst = max(max(abs(v) for v in evaluate_all([alpha, beta], p)) for p in flat_points[:20])
    assert worst == 0.0


def test_normality_residuals_thresholds(ex1, ex2, ex1_points, ex2_points):
    for s, pts in ((ex1, ex1_points), (ex2, ex2_points)):
        res = normality_residuals(s, pts)
        assert res.nijenhuis < 1e-9
        assert res.covariant_phi < 1e-8
        assert res.covariant_xi < 1e-8


def test_normality_equivalence_also_fails_together(ex1_points):
    """When the torsion check fails, the covariant identities fail too."""
    res = normality_residuals(perturbed_example1(1.1), ex1_points[:20])
    assert res.nijenhuis > 1e-3
    assert max(res.covariant_phi, res.covariant_xi) > 1e-8


# -- classification --------------------------------------------------------------


def _structure_on_r3(name, metric_rows, phi_rows, constraints=()):
    chart = Chart(COORDS, tuple(parse_expr(c) for c in constraints))
    return ParacontactStructure(
        name=name,
        chart=chart,
        metric=MetricTensor(COORDS, as_matrix(metric_rows)),
        phi=as_matrix(phi_rows),
        xi=as_vector(("0", "0", "1")),
        eta=as_vector(("0", "2*x", "1")),
    )


_TWISTED_PHI = (("0", "1", "0"), ("1", "0", "0"), ("-2*x", "0", "0"))
_TWISTED_PHI_NEG = (("0", "-1", "0"), ("-1", "0", "0"), ("2*x", "0", "0"))


def beta_para_sasakian():
    """eta (x) eta added to a flat block: alpha = 0, beta = +1."""
    rows = (("-1", "0", "0"), ("0", "1 + 4*x^2", "2*x"), ("0", "2*x", "1"))
    return _structure_on_r3("beta-psas", rows, _TWISTED_PHI)


def para_sasakian():
    rows = (("-1", "0", "0"), ("0", "1 + 4*x^2", "2*x"), ("0", "2*x", "1"))
    return _structure_on_r3("psas", rows, _TWISTED_PHI_NEG)


def quasi_para_sasakian():
    f = "1 + x^2/2"
    rows = ((f"-({f})", "0", "0"), ("0", f"{f} + 4*x^2", "2*x"), ("0", "2*x", "1"))
    return _structure_on_r3("quasi-psas", rows, _TWISTED_PHI)


def alpha_para_kenmotsu():
    chart = Chart(COORDS)
    rows = (("-exp(2*z)", "0", "0"), ("0", "exp(2*z)", "0"), ("0", "0", "1"))
    return ParacontactStructure(
        name="alpha-pk",
        chart=chart,
        metric=MetricTensor(COORDS, as_matrix(rows)),
        phi=as_matrix((("0", "1", "0"), ("1", "0", "0"), ("0", "0", "0"))),
        xi=as_vector(("0", "0", "1")),
        eta=as_vector(("0", "0", "1")),
    )


@pytest.mark.parametrize(
    "builder, label",
    [
        (beta_para_sasakian, "beta-para-Sasakian"),
        (para_sasakian, "para-Sasakian"),
        (quasi_para_sasakian, "quasi-para-Sasakian"),
        (alpha_para_kenmotsu, "alpha-para-Kenmotsu"),
    ],
)
def test_classification_labels(builder, label):
    s = builder()
    pts = s.sample_points(SampleOptions(count=40, seed=11))
    assert s.axiom_residuals(pts[:15])["axioms"] < 1e-9
    assert classify(s, pts) == label


def test_classification_of_fixtures(ex1, ex2, flat, ex1_points, ex2_points, flat_points):
    assert classify(flat, flat_points[:30]) == "paracosymplectic"
    assert classify(ex1, ex1_points[:30]) == "generic-normal"
    assert classify(ex2, ex2_points[:30]) == "generic-normal"


def test_classification_non_normal(ex1_points):
    assert classify(perturbed_example1(1.1), ex1_points[:20]) == "non-normal"


# -- sampled invariants -----------------------------------------------------------


def test_metric_compatibility(ex1, ex2, ex1_points, ex2_points):
    assert metric_compatibility_residual(ex1, ex1_points) < 1e-9
    assert metric_compatibility_residual(ex2, ex2_points) < 1e-9


def test_torsion_freeness(ex1, ex1_points):
    for i in range(3):
        for j in range(3):
            assert torsion_free_residual(ex1, _basis(i), _basis(j), ex1_points[:15]) < 1e-9
    x_field = as_vector(("x*y", "z", "y^2 - x"))
    y_field = as_vector(("z*x", "x + y", "y"))
    assert torsion_free_residual(ex1, x_field, y_field, ex1_points[:15]) < 1e-9


def test_fundamental_form_antisymmetry(ex1, ex2, flat, ex1_points, ex2_points, flat_points):
    assert ex1.fundamental_form_residual(ex1_points) < 1e-9
    assert ex2.fundamental_form_residual(ex2_points) < 1e-9
    assert flat.fundamental_form_residual(flat_points) < 1e-9


def test_phi_eigenvalue_split(ex1, ex2, ex1_points, ex2_points):
    assert ex1.eigen_split_residual(ex1_points[:25]) < 1e-7
    assert ex2.eigen_split_residual(ex2_points[:25]) < 1e-7


def test_axiom_residuals_on_fixtures(ex1, ex2, flat, ex1_points, ex2_points, flat_points):
    assert ex1.axiom_residuals(ex1_points)["axioms"] < 1e-9
    assert ex2.axiom_residuals(ex2_points)["axioms"] < 1e-9
    assert flat.axiom_residuals(flat_points)["axioms"] < 1e-9
    perturbed = perturbed_example1(1.1)
    assert perturbed.axiom_residuals(ex1_points[:10])["axioms"] > 1e-2
