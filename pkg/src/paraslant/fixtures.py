"""Built-in structures and curves used by the verification suite and CLI.

Three structures ship with the package:

* ``example1``: chart (x, y, z) on z != 0 with eta = 2x dy + dz and a
  Lorentz metric whose characteristic functions are alpha = beta = 1/(2z).
  The plane z = 0 is excluded with a margin (z^2 > 1/100) because the metric
  degenerates there; the bundled timelike curve "a" lives at negative z.
* ``example2``: chart on z > 0 with eta = dz, diagonal Lorentz metric,
  alpha = 1/(2z), beta = 0.
* ``flat``: constant metric diag(-1, 1, 1); alpha = beta = 0, so every
  connection coefficient vanishes (the paracosymplectic reference case).

Expression strings below are the single source of truth: manifest dumps and
the symbolic fixtures are built from the same text.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .curve import PARAM, Curve
from .expr import (
    Const,
    Var,
    mul,
    parse_expr,
    polynomial_from_coefficients,
    add,
)
from .structure import Chart, MetricTensor, ParacontactStructure, as_matrix, as_vector

COORDS = ("x", "y", "z")

_EXAMPLE1_METRIC = (
    ("-2*z", "0", "0"),
    ("0", "4*x^2 + 2*z", "2*x"),
    ("0", "2*x", "1"),
)
_EXAMPLE1_PHI = (
    ("0", "1", "0"),
    ("1", "0", "0"),
    ("-2*x", "0", "0"),
)
_EXAMPLE1_XI = ("0", "0", "1")
_EXAMPLE1_ETA = ("0", "2*x", "1")

_EXAMPLE2_METRIC = (
    ("-2*z", "0", "0"),
    ("0", "2*z", "0"),
    ("0", "0", "1"),
)
_EXAMPLE2_PHI = (
    ("0", "1", "0"),
    ("1", "0", "0"),
    ("0", "0", "0"),
)
_EXAMPLE2_XI = ("0", "0", "1")
_EXAMPLE2_ETA = ("0", "0", "1")

_FLAT_METRIC = (
    ("-1", "0", "0"),
    ("0", "1", "0"),
    ("0", "0", "1"),
)


@lru_cache(maxsize=None)
def example1() -> ParacontactStructure:
    chart = Chart(COORDS, (parse_expr("z*z - 1/100"),), ((-2.0, 2.0), (-2.0, 2.0), (-2.0, 2.0)))
    return ParacontactStructure(
        name="example1",
        chart=chart,
        metric=MetricTensor(COORDS, as_matrix(_EXAMPLE1_METRIC)),
        phi=as_matrix(_EXAMPLE1_PHI),
        xi=as_vector(_EXAMPLE1_XI),
        eta=as_vector(_EXAMPLE1_ETA),
    )


@lru_cache(maxsize=None)
def example2() -> ParacontactStructure:
    chart = Chart(COORDS, (parse_expr("z"),), ((-2.0, 2.0), (-2.0, 2.0), (0.05, 2.0)))
    return ParacontactStructure(
        name="example2",
        chart=chart,
        metric=MetricTensor(COORDS, as_matrix(_EXAMPLE2_METRIC)),
        phi=as_matrix(_EXAMPLE2_PHI),
        xi=as_vector(_EXAMPLE2_XI),
        eta=as_vector(_EXAMPLE2_ETA),
    )


@lru_cache(maxsize=None)
def flat_paracosymplectic() -> ParacontactStructure:
    chart = Chart(COORDS)
    return ParacontactStructure(
        name="flat",
        chart=chart,
        metric=MetricTensor(COORDS, as_matrix(_FLAT_METRIC)),
        phi=as_matrix(_EXAMPLE2_PHI),
        xi=as_vector(_EXAMPLE2_XI),
        eta=as_vector(_EXAMPLE2_ETA),
    )


def perturbed_example1(scale: float = 1.1) -> ParacontactStructure:
    """example1 with phi scaled; breaks the structure axioms and normality."""
    base = example1()
    phi = tuple(tuple(mul(Const(scale), e) for e in row) for row in base.phi)
    return ParacontactStructure(
        name=f"example1-phi-x{scale:g}",
        chart=base.chart,
        metric=base.metric,
        phi=phi,  # type: ignore[arg-type]
        xi=base.xi,
        eta=base.eta,
    )


def sign_flipped_example1() -> ParacontactStructure:
    """example1 with phi -> -phi; still a normal structure."""
    return perturbed_example1(scale=-1.0)


def radical_constant() -> float:
    """Real root of a^3 - a - 2 = 0 in nested-radical form."""
    b = math.sqrt(26.0 / 27.0)
    a = (1.0 + b) ** (1.0 / 3.0) + (1.0 - b) ** (1.0 / 3.0)
    assert abs(a**3 - a - 2.0) < 1e-12
    return a


@lru_cache(maxsize=None)
def example1_curves() -> dict[str, Curve]:
    s = example1()
    a = radical_constant()
    t = Var(PARAM)
    curves = {
        "a": Curve("a", s, (parse_expr("0"), parse_expr("-2*sqrt(-t)"), t), (-4.0, -0.1)),
        "b": Curve("b", s, (parse_expr("1/4"), t, parse_expr("3/8")), (-2.0, 2.0)),
        "c": Curve(
            "c",
            s,
            (parse_expr("sqrt(t)"), mul(Const(-a), parse_expr("sqrt(t)")), mul(Const(a), t)),
            (0.1, 4.0),
        ),
        "xi-line": Curve(
            "xi-line", s, (parse_expr("0.3"), parse_expr("-0.4"), parse_expr("0.5 + t")), (-0.3, 1.0)
        ),
        "timelike-legendre-line": Curve(
            "timelike-legendre-line",
            s,
            (t, parse_expr("0.7"), parse_expr("0.5")),
            (-1.5, 1.5),
        ),
    }
    return curves


@lru_cache(maxsize=None)
def example2_curves() -> dict[str, Curve]:
    s = example2()
    t = Var(PARAM)
    return {
        "legendre": Curve(
            "legendre", s, (parse_expr("cosh(t)"), parse_expr("sinh(t)"), parse_expr("1/2")), (-2.0, 2.0)
        ),
        "xi-line": Curve(
            "xi-line", s, (parse_expr("0.4"), parse_expr("-0.3"), parse_expr("0.6 + t")), (-0.5, 1.2)
        ),
        "log-geodesic": Curve(
            "log-geodesic",
            s,
            (parse_expr("0.8*log(1 + t)"), parse_expr("0.8*log(1 + t)"), parse_expr("1 + t")),
            (-0.5, 1.0),
        ),
        "null-legendre-line": Curve(
            "null-legendre-line", s, (t, parse_expr("t + 0.2"), parse_expr("0.8")), (-2.0, 2.0)
        ),
    }


@lru_cache(maxsize=None)
def flat_curves() -> dict[str, Curve]:
    s = flat_paracosymplectic()
    t = Var(PARAM)
    h = math.sqrt(3.0) / 2.0
    return {
        "order3-slant": Curve(
            "order3-slant",
            s,
            (
                mul(Const(h), parse_expr("cosh(t) - 1")),
                mul(Const(h), parse_expr("sinh(t)")),
                parse_expr("0.5*t + 0.3"),
            ),
            (-1.5, 1.5),
        ),
        "null-slant-c2": Curve(
            "null-slant-c2",
            s,
            (parse_expr("4*sinh(t/2)"), parse_expr("4*cosh(t/2)"), parse_expr("2*t")),
            (-1.0, 1.0),
        ),
        "null-legendre-line": Curve(
            "null-legendre-line", s, (t, t, parse_expr("0.3")), (-2.0, 2.0)
        ),
    }


def example2_null_slant(
    slant_constant: float = 1.0,
    z0: float = 1.0,
    order: int = 40,
    half_width: float = 0.3,
) -> Curve:
    """Null slant curve in example2 carrying the distinguished normalization.

    Solves x' = c cosh(t/c) / sqrt(2 z), y' = c sinh(t/c) / sqrt(2 z) with
    z = z0 + c t; the hyperbolic angle t/c makes g(accel, accel) = 1 along
    the curve.  The quadratures are not elementary, so x and y are stored as
    truncated power series around t = 0; with the default order the
    truncation error is far below every tolerance used downstream.
    """
    c, n = float(slant_constant), int(order)
    if c == 0.0:
        raise ValueError("slant constant must be nonzero for a null slant curve")
    # series of cosh(t/c) and sinh(t/c)
    ch = [0.0] * (n + 1)
    sh = [0.0] * (n + 1)
    for k in range(0, n + 1):
        term = 1.0 / (math.factorial(k) * c**k)
        if k % 2 == 0:
            ch[k] = term
        else:
            sh[k] = term
    # series of (1 + (c/z0) t)^(-1/2), scaled by c / sqrt(2 z0)
    ratio = c / z0
    binom = [1.0]
    for k in range(1, n + 1):
        binom.append(binom[-1] * ((-0.5 - (k - 1)) / k) * ratio)
    front = c / math.sqrt(2.0 * z0)

    def integrate(series: list[float]) -> list[float]:
        prod = np.convolve(series, binom)[: n + 1] * front
        return [0.0] + [float(v) / (k + 1) for k, v in enumerate(prod)]

    x = polynomial_from_coefficients(integrate(ch), PARAM)
    y = polynomial_from_coefficients(integrate(sh), PARAM)
    z = add(Const(z0), mul(Const(c), Var(PARAM)))
    s = example2()
    return Curve("null-slant", s, (x, y, z), (-half_width, half_width))


STRUCTURES = {
    "example1": example1,
    "example2": example2,
    "flat": flat_paracosymplectic,
}

CURVES = {
    "example1": example1_curves,
    "example2": example2_curves,
    "flat": flat_curves,
}


def builtin_structure(name: str) -> ParacontactStructure:
    try:
        return STRUCTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture '{name}'; choose from {sorted(STRUCTURES)}") from None


def builtin_curves(name: str) -> dict[str, Curve]:
    builtin_structure(name)
    return CURVES[name]()
