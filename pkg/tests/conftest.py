"""Shared fixtures and the random-expression generator used by the tests."""

from __future__ import annotations

import math
import random

import pytest

from paraslant import expr as ex
from paraslant.errors import DomainViolation
from paraslant.fixtures import (
    example1,
    example1_curves,
    example2,
    example2_curves,
    flat_curves,
    flat_paracosymplectic,
)
from paraslant.structure import SampleOptions


@pytest.fixture(scope="session")
def ex1():
    return example1()


@pytest.fixture(scope="session")
def ex2():
    return example2()


@pytest.fixture(scope="session")
def flat():
    return flat_paracosymplectic()


@pytest.fixture(scope="session")
def ex1_points(ex1):
    return ex1.sample_points(SampleOptions(count=100, seed=42))


@pytest.fixture(scope="session")
def ex2_points(ex2):
    return ex2.sample_points(SampleOptions(count=100, seed=42))


@pytest.fixture(scope="session")
def flat_points(flat):
    return flat.sample_points(SampleOptions(count=100, seed=42))


@pytest.fixture(scope="session")
def curves1():
    return example1_curves()


@pytest.fixture(scope="session")
def curves2():
    return example2_curves()


@pytest.fixture(scope="session")
def curves_flat():
    return flat_curves()


class ExprGen:
    """Seeded generator of smooth random expressions and safe sample points.

    Used by the finite-difference oracle tests; abs and signum are excluded
    because central differences are meaningless across their kinks.
    """

    VARS = ("x", "y", "z")

    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def leaf(self) -> ex.ScalarExpr:
        if self.rng.random() < 0.5:
            return ex.Const(round(self.rng.uniform(-2.0, 2.0), 3))
        return ex.Var(self.rng.choice(self.VARS))

    def tree(self, depth: int) -> ex.ScalarExpr:
        if depth <= 0:
            return self.leaf()
        pick = self.rng.random()
        a = self.tree(depth - 1)
        if pick < 0.18:
            return ex.Add(a, self.tree(depth - 1))
        if pick < 0.36:
            return ex.Sub(a, self.tree(depth - 1))
        if pick < 0.56:
            return ex.Mul(a, self.tree(depth - 1))
        if pick < 0.66:
            return ex.Div(a, self.tree(depth - 1))
        if pick < 0.72:
            return ex.Pow(a, self.rng.choice((2, 3, -1)))
        if pick < 0.78:
            return ex.Sqrt(a)
        if pick < 0.84:
            return ex.Sinh(a)
        if pick < 0.90:
            return ex.Cosh(a)
        if pick < 0.95:
            return ex.Sin(a)
        return ex.Cos(a)

    def point(self) -> dict[str, float]:
        return {v: self.rng.uniform(0.3, 1.7) for v in self.VARS}

    def smooth_pair(self, var: str = "x") -> tuple[ex.ScalarExpr, dict[str, float]]:
        """An expression/point pair where evaluation and the derivative are
        well scaled, retrying until the domain cooperates."""
        while True:
            f = self.tree(depth=3)
            p = self.point()
            try:
                value = ex.evaluate(f, p)
                d_value = ex.evaluate(ex.differentiate(f, var), p)
                nearby = []
                for h in (1e-5, -1e-5):
                    q = dict(p)
                    q[var] += h
                    nearby.append(ex.evaluate(f, q))
            except DomainViolation:
                continue
            scale = max(abs(value), abs(d_value), *map(abs, nearby))
            if not math.isfinite(scale) or scale > 1e5:
                continue
            if abs(d_value) < 1e-2:
                continue
            return f, p


@pytest.fixture()
def expr_gen():
    return ExprGen(seed=20240811)
