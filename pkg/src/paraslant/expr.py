"""Symbolic scalar expressions over named variables.

A small fixed-grammar expression tree: constants, variables, the four
arithmetic operations, rational-exponent powers, and a handful of analytic
functions (sqrt, exp, log, sinh, cosh, sin, cos, abs, signum).  Supports
exact differentiation, pointwise float evaluation, value-preserving
simplification (constant folding and 0/1 identities only) and an infix text
syntax used by manifest files.

Trees are immutable after construction and all operations here are pure, so
expressions can be shared freely between threads.  Subtrees are shared by
reference; evaluation memoizes per call on node identity, which keeps the
deeply composed expressions produced by the frame machinery cheap.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

from .errors import DomainViolation, NonPolynomialInput, ParseError, UnboundVariable

Binding = Mapping[str, float]
ExprLike = Union["ScalarExpr", int, float]


class ScalarExpr:
    """Base node.  Subclasses define evaluation and differentiation rules."""

    __slots__ = ("children",)

    def __init__(self, *children: "ScalarExpr"):
        self.children = children

    # -- arithmetic sugar (all routed through the folding constructors) --

    def __add__(self, other: ExprLike) -> "ScalarExpr":
        return add(self, _wrap(other))

    def __radd__(self, other: ExprLike) -> "ScalarExpr":
        return add(_wrap(other), self)

    def __sub__(self, other: ExprLike) -> "ScalarExpr":
        return sub(self, _wrap(other))

    def __rsub__(self, other: ExprLike) -> "ScalarExpr":
        return sub(_wrap(other), self)

    def __mul__(self, other: ExprLike) -> "ScalarExpr":
        return mul(self, _wrap(other))

    def __rmul__(self, other: ExprLike) -> "ScalarExpr":
        return mul(_wrap(other), self)

    def __truediv__(self, other: ExprLike) -> "ScalarExpr":
        return div(self, _wrap(other))

    def __rtruediv__(self, other: ExprLike) -> "ScalarExpr":
        return div(_wrap(other), self)

    def __pow__(self, exponent) -> "ScalarExpr":
        return power(self, exponent)

    def __neg__(self) -> "ScalarExpr":
        return mul(Const(-1.0), self)

    def __call__(self, **binding: float) -> float:
        return evaluate(self, binding)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"<{type(self).__name__} {to_text(self)}>"

    # -- hooks implemented by subclasses --

    def _eval(self, args: tuple, binding: Binding) -> float:
        raise NotImplementedError

    def _diff(self, child_derivs: tuple, var: str) -> "ScalarExpr":
        raise NotImplementedError

    def _with_children(self, children: tuple) -> "ScalarExpr":
        return type(self)(*children)

    def _folded(self, children: tuple) -> "ScalarExpr":
        """Rebuild through the folding constructor for this node type."""
        raise NotImplementedError


class Const(ScalarExpr):
    __slots__ = ("value",)

    def __init__(self, value: float):
        super().__init__()
        self.value = float(value)

    def _eval(self, args, binding):
        return self.value

    def _diff(self, child_derivs, var):
        return _ZERO

    def _with_children(self, children):
        return self

    def _folded(self, children):
        return self


class Var(ScalarExpr):
    __slots__ = ("name",)

    def __init__(self, name: str):
        super().__init__()
        self.name = name

    def _eval(self, args, binding):
        try:
            return float(binding[self.name])
        except KeyError:
            raise UnboundVariable(f"variable '{self.name}' is not bound") from None

    def _diff(self, child_derivs, var):
        return _ONE if self.name == var else _ZERO

    def _with_children(self, children):
        return self

    def _folded(self, children):
        return self


class Add(ScalarExpr):
    __slots__ = ()

    def _eval(self, args, binding):
        return args[0] + args[1]

    def _diff(self, d, var):
        return add(d[0], d[1])

    def _folded(self, children):
        return add(*children)


class Sub(ScalarExpr):
    __slots__ = ()

    def _eval(self, args, binding):
        return args[0] - args[1]

    def _diff(self, d, var):
        return sub(d[0], d[1])

    def _folded(self, children):
        return sub(*children)


class Mul(ScalarExpr):
    __slots__ = ()

    def _eval(self, args, binding):
        return args[0] * args[1]

    def _diff(self, d, var):
        a, b = self.children
        return add(mul(d[0], b), mul(a, d[1]))

    def _folded(self, children):
        return mul(*children)


class Div(ScalarExpr):
    __slots__ = ()

    def _eval(self, args, binding):
        if args[1] == 0.0:
            raise DomainViolation("division by zero")
        return args[0] / args[1]

    def _diff(self, d, var):
        a, b = self.children
        return div(sub(mul(d[0], b), mul(a, d[1])), mul(b, b))

    def _folded(self, children):
        return div(*children)


class Pow(ScalarExpr):
    """Power with a fixed rational exponent.  General f^g is excluded."""

    __slots__ = ("exponent",)

    def __init__(self, base: ScalarExpr, exponent: Fraction):
        super().__init__(base)
        self.exponent = exponent

    def _eval(self, args, binding):
        return _pow_value(args[0], self.exponent)

    def _diff(self, d, var):
        base = self.children[0]
        r = self.exponent
        return mul(mul(Const(float(r)), power(base, r - 1)), d[0])

    def _with_children(self, children):
        return Pow(children[0], self.exponent)

    def _folded(self, children):
        return power(children[0], self.exponent)


def _pow_value(base: float, r: Fraction) -> float:
    if r.denominator == 1:
        if base == 0.0 and r < 0:
            raise DomainViolation("zero raised to a negative power")
        return math.pow(base, r.numerator)
    if base < 0.0:
        raise DomainViolation("fractional power of a negative base")
    if base == 0.0 and r < 0:
        raise DomainViolation("zero raised to a negative power")
    return math.pow(base, float(r))


class _Unary(ScalarExpr):
    __slots__ = ()
    _fn: Callable[[float], float]

    def _eval(self, args, binding):
        return type(self)._fn(args[0])


class Sqrt(_Unary):
    __slots__ = ()

    def _eval(self, args, binding):
        if args[0] < 0.0:
            raise DomainViolation("square root of a negative number")
        return math.sqrt(args[0])

    def _diff(self, d, var):
        # reuse self so the evaluation cache shares the radical
        return div(d[0], mul(_TWO, self))

    def _folded(self, children):
        return sqrt(children[0])


class Exp(_Unary):
    __slots__ = ()
    _fn = staticmethod(math.exp)

    def _diff(self, d, var):
        return mul(self, d[0])

    def _folded(self, children):
        return exp(children[0])


class Log(_Unary):
    __slots__ = ()

    def _eval(self, args, binding):
        if args[0] <= 0.0:
            raise DomainViolation("logarithm of a non-positive number")
        return math.log(args[0])

    def _diff(self, d, var):
        return div(d[0], self.children[0])

    def _folded(self, children):
        return log(children[0])


class Sinh(_Unary):
    __slots__ = ()
    _fn = staticmethod(math.sinh)

    def _diff(self, d, var):
        return mul(cosh(self.children[0]), d[0])

    def _folded(self, children):
        return sinh(children[0])


class Cosh(_Unary):
    __slots__ = ()
    _fn = staticmethod(math.cosh)

    def _diff(self, d, var):
        return mul(sinh(self.children[0]), d[0])

    def _folded(self, children):
        return cosh(children[0])


class Sin(_Unary):
    __slots__ = ()
    _fn = staticmethod(math.sin)

    def _diff(self, d, var):
        return mul(cos(self.children[0]), d[0])

    def _folded(self, children):
        return sin(children[0])


class Cos(_Unary):
    __slots__ = ()
    _fn = staticmethod(math.cos)

    def _diff(self, d, var):
        return mul(-sin(self.children[0]), d[0])

    def _folded(self, children):
        return cos(children[0])


class Abs(_Unary):
    __slots__ = ()
    _fn = staticmethod(abs)

    def _diff(self, d, var):
        return mul(_AbsSlope(self.children[0]), d[0])

    def _folded(self, children):
        return absval(children[0])


class Signum(_Unary):
    __slots__ = ()

    @staticmethod
    def _fn(v: float) -> float:
        return 0.0 if v == 0.0 else math.copysign(1.0, v)

    def _diff(self, d, var):
        return mul(_SignumSlope(self.children[0]), d[0])

    def _folded(self, children):
        return signum(children[0])


class _AbsSlope(_Unary):
    """Derivative factor of abs: the sign of the argument, undefined at 0."""

    __slots__ = ()

    def _eval(self, args, binding):
        if args[0] == 0.0:
            raise DomainViolation("derivative of abs at zero")
        return math.copysign(1.0, args[0])

    def _diff(self, d, var):
        return mul(_SignumSlope(self.children[0]), d[0])

    def _folded(self, children):
        child = children[0]
        if isinstance(child, Const):
            if child.value == 0.0:
                return _AbsSlope(child)
            return Const(math.copysign(1.0, child.value))
        return _AbsSlope(child)


class _SignumSlope(_Unary):
    """Derivative of signum: zero away from 0, undefined at 0."""

    __slots__ = ()

    def _eval(self, args, binding):
        if args[0] == 0.0:
            raise DomainViolation("derivative of signum at zero")
        return 0.0

    def _diff(self, d, var):
        return mul(_SignumSlope(self.children[0]), d[0])

    def _folded(self, children):
        child = children[0]
        if isinstance(child, Const) and child.value != 0.0:
            return _ZERO
        return _SignumSlope(child)


_ZERO = Const(0.0)
_ONE = Const(1.0)
_TWO = Const(2.0)


def _wrap(value: ExprLike) -> ScalarExpr:
    if isinstance(value, ScalarExpr):
        return value
    if isinstance(value, (int, float)):
        return Const(float(value))
    raise TypeError(f"cannot use {value!r} as a scalar expression")


def _is_const(e: ScalarExpr, v: float | None = None) -> bool:
    return isinstance(e, Const) and (v is None or e.value == v)


# -- folding constructors: constant folding plus 0/1 identities ------------


def add(a: ExprLike, b: ExprLike) -> ScalarExpr:
    a, b = _wrap(a), _wrap(b)
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    return Add(a, b)


def sub(a: ExprLike, b: ExprLike) -> ScalarExpr:
    a, b = _wrap(a), _wrap(b)
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if _is_const(b, 0.0):
        return a
    return Sub(a, b)


def mul(a: ExprLike, b: ExprLike) -> ScalarExpr:
    a, b = _wrap(a), _wrap(b)
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return _ZERO
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    return Mul(a, b)


def div(a: ExprLike, b: ExprLike) -> ScalarExpr:
    a, b = _wrap(a), _wrap(b)
    if isinstance(a, Const) and isinstance(b, Const) and b.value != 0.0:
        return Const(a.value / b.value)
    if _is_const(a, 0.0):
        return _ZERO
    if _is_const(b, 1.0):
        return a
    return Div(a, b)


def power(base: ExprLike, exponent) -> ScalarExpr:
    base = _wrap(base)
    r = _as_fraction(exponent)
    if r == 0:
        return _ONE
    if r == 1:
        return base
    if isinstance(base, Const):
        try:
            return Const(_pow_value(base.value, r))
        except DomainViolation:
            pass  # keep the node so evaluation reports the violation
    return Pow(base, r)


def _as_fraction(exponent) -> Fraction:
    if isinstance(exponent, Fraction):
        return exponent
    if isinstance(exponent, int):
        return Fraction(exponent)
    if isinstance(exponent, float) and exponent.is_integer():
        return Fraction(int(exponent))
    raise TypeError("power exponents must be rational numbers")


def _unary_ctor(node_cls):
    def ctor(a: ExprLike) -> ScalarExpr:
        a = _wrap(a)
        if isinstance(a, Const):
            probe = node_cls(a)
            try:
                return Const(probe._eval((a.value,), {}))
            except DomainViolation:
                return probe
        return node_cls(a)

    ctor.__name__ = node_cls.__name__.lower()
    return ctor


sqrt = _unary_ctor(Sqrt)
exp = _unary_ctor(Exp)
log = _unary_ctor(Log)
sinh = _unary_ctor(Sinh)
cosh = _unary_ctor(Cosh)
sin = _unary_ctor(Sin)
cos = _unary_ctor(Cos)
absval = _unary_ctor(Abs)
signum = _unary_ctor(Signum)


# -- tree traversals --------------------------------------------------------


def _postorder_many(roots: Sequence[ScalarExpr], visit) -> list:
    """Apply visit(node, child_results) bottom-up over the shared DAG."""
    results: dict[int, object] = {}
    for root in roots:
        stack = [root]
        while stack:
            node = stack[-1]
            key = id(node)
            if key in results:
                stack.pop()
                continue
            pending = [c for c in node.children if id(c) not in results]
            if pending:
                stack.extend(pending)
                continue
            results[key] = visit(node, tuple(results[id(c)] for c in node.children))
            stack.pop()
    return [results[id(root)] for root in roots]


def evaluate(e: ScalarExpr, binding: Binding) -> float:
    """Value of e at the binding.  Deterministic for identical inputs."""
    return _postorder_many([e], lambda n, args: n._eval(args, binding))[0]


def evaluate_all(exprs: Sequence[ScalarExpr], binding: Binding) -> list[float]:
    """Evaluate several expressions at once, sharing work on common subtrees."""
    return _postorder_many(list(exprs), lambda n, args: n._eval(args, binding))


def differentiate(e: ScalarExpr, var: str) -> ScalarExpr:
    """Exact partial derivative of e with respect to the named variable."""
    return _postorder_many([e], lambda n, d: n._diff(d, var))[0]


def substitute(e: ScalarExpr, mapping: Mapping[str, ExprLike]) -> ScalarExpr:
    """Replace variables by expressions; untouched subtrees keep identity."""
    wrapped = {name: _wrap(v) for name, v in mapping.items()}

    def visit(node, kids):
        if isinstance(node, Var):
            return wrapped.get(node.name, node)
        if kids == node.children:
            return node
        return node._with_children(kids)

    return _postorder_many([e], visit)[0]


def simplify(e: ScalarExpr) -> ScalarExpr:
    """Rebuild through the folding constructors.  Values are preserved."""
    return _postorder_many([e], lambda n, kids: n._folded(kids))[0]


def variables(e: ScalarExpr) -> frozenset[str]:
    def visit(node, kids):
        if isinstance(node, Var):
            return frozenset((node.name,))
        out: frozenset = frozenset()
        for k in kids:
            out |= k
        return out

    return _postorder_many([e], visit)[0]


# -- polynomial helpers ------------------------------------------------------


def polynomial_coefficients(e: ScalarExpr, var: str) -> list[float]:
    """Coefficients [c0, c1, ...] of e as a polynomial in var.

    Raises NonPolynomialInput when e is not a polynomial in var (other free
    variables, radicals, analytic functions, non-constant divisors...).
    """

    def visit(node, kids):
        if isinstance(node, Const):
            return [node.value]
        if isinstance(node, Var):
            if node.name == var:
                return [0.0, 1.0]
            raise NonPolynomialInput(f"unexpected variable '{node.name}'")
        if isinstance(node, Add):
            return _poly_add(kids[0], kids[1], 1.0)
        if isinstance(node, Sub):
            return _poly_add(kids[0], kids[1], -1.0)
        if isinstance(node, Mul):
            return _poly_mul(kids[0], kids[1])
        if isinstance(node, Div):
            denom = kids[1]
            if len(denom) != 1 or denom[0] == 0.0:
                raise NonPolynomialInput("division by a non-constant")
            return [c / denom[0] for c in kids[0]]
        if isinstance(node, Pow):
            r = node.exponent
            if r.denominator != 1 or r < 0:
                raise NonPolynomialInput("non-integer or negative power")
            out = [1.0]
            for _ in range(r.numerator):
                out = _poly_mul(out, kids[0])
            return out
        raise NonPolynomialInput(f"{type(node).__name__} node is not polynomial")

    coeffs = _postorder_many([e], visit)[0]
    while len(coeffs) > 1 and coeffs[-1] == 0.0:
        coeffs.pop()
    return coeffs


def _poly_add(a: list[float], b: list[float], sign: float) -> list[float]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0.0) + sign * (b[i] if i < len(b) else 0.0) for i in range(n)]


def _poly_mul(a: list[float], b: list[float]) -> list[float]:
    out = [0.0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0.0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def polynomial_from_coefficients(coeffs: Iterable[float], var: str) -> ScalarExpr:
    v = Var(var)
    out: ScalarExpr = _ZERO
    for k, c in enumerate(coeffs):
        if c == 0.0:
            continue
        out = add(out, mul(Const(c), power(v, k)))
    return out


def polynomial_antiderivative(e: ScalarExpr, var: str) -> ScalarExpr:
    """Antiderivative with zero constant term; input must be polynomial."""
    coeffs = polynomial_coefficients(e, var)
    return polynomial_from_coefficients([0.0] + [c / (k + 1) for k, c in enumerate(coeffs)], var)


# -- text form ---------------------------------------------------------------

_FUNCTIONS: dict[str, Callable[[ScalarExpr], ScalarExpr]] = {
    "sqrt": sqrt,
    "exp": exp,
    "log": log,
    "sinh": sinh,
    "cosh": cosh,
    "sin": sin,
    "cos": cos,
    "abs": absval,
    "sign": signum,
    "signum": signum,
}

_FUNC_NAMES = {
    Sqrt: "sqrt",
    Exp: "exp",
    Log: "log",
    Sinh: "sinh",
    Cosh: "cosh",
    Sin: "sin",
    Cos: "cos",
    Abs: "abs",
    Signum: "sign",
    _AbsSlope: "abs'",
    _SignumSlope: "sign'",
}

_LEVEL_ADD, _LEVEL_MUL, _LEVEL_POW, _LEVEL_ATOM = 1, 2, 3, 4


def _fmt_number(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def to_text(e: ScalarExpr) -> str:
    """Infix text that parses back to an equal-valued expression."""

    def visit(node, kids):
        # kids are (level, text) pairs
        def wrap(child, need_level):
            level, text = child
            return f"({text})" if level < need_level else text

        if isinstance(node, Const):
            if node.value < 0:
                return (_LEVEL_MUL, _fmt_number(node.value))
            return (_LEVEL_ATOM, _fmt_number(node.value))
        if isinstance(node, Var):
            return (_LEVEL_ATOM, node.name)
        if isinstance(node, Add):
            return (_LEVEL_ADD, f"{kids[0][1]} + {wrap(kids[1], _LEVEL_MUL)}")
        if isinstance(node, Sub):
            return (_LEVEL_ADD, f"{kids[0][1]} - {wrap(kids[1], _LEVEL_MUL)}")
        if isinstance(node, Mul):
            return (_LEVEL_MUL, f"{wrap(kids[0], _LEVEL_MUL)}*{wrap(kids[1], _LEVEL_POW)}")
        if isinstance(node, Div):
            return (_LEVEL_MUL, f"{wrap(kids[0], _LEVEL_MUL)}/{wrap(kids[1], _LEVEL_POW)}")
        if isinstance(node, Pow):
            r = node.exponent
            e_text = str(r.numerator) if r.denominator == 1 else f"({r.numerator}/{r.denominator})"
            if r < 0 and r.denominator == 1:
                e_text = f"({r.numerator})"
            return (_LEVEL_POW, f"{wrap(kids[0], _LEVEL_ATOM)}^{e_text}")
        name = _FUNC_NAMES[type(node)]
        return (_LEVEL_ATOM, f"{name}({kids[0][1]})")

    return _postorder_many([e], visit)[0][1]


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                rest = text[pos:]
                if rest.strip() == "":
                    break
                bad = pos + len(rest) - len(rest.lstrip())
                raise ParseError(f"unexpected character {text[bad]!r}", column=bad + 1)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", column=len(self.text) + 1)
        self.i += 1
        return tok

    def expect(self, op: str) -> None:
        tok = self.next()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected '{op}', found {tok[1]!r}", column=tok[2] + 1)

    def parse(self) -> ScalarExpr:
        e = self.expression()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"trailing input {tok[1]!r}", column=tok[2] + 1)
        return e

    def expression(self) -> ScalarExpr:
        e = self.term()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.next()
                rhs = self.term()
                e = add(e, rhs) if tok[1] == "+" else sub(e, rhs)
            else:
                return e

    def term(self) -> ScalarExpr:
        e = self.factor()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "*/":
                self.next()
                rhs = self.factor()
                e = mul(e, rhs) if tok[1] == "*" else div(e, rhs)
            else:
                return e

    def factor(self) -> ScalarExpr:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            self.next()
            return mul(Const(-1.0), self.factor())
        return self.primary()

    def primary(self) -> ScalarExpr:
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.next()
            return power(base, self.rational_exponent())
        return base

    def rational_exponent(self) -> Fraction:
        # only rational literals are legal exponents
        parens = False
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "(":
            self.next()
            parens = True
        sign = 1
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            self.next()
            sign = -1
        num_tok = self.next()
        if num_tok[0] != "number":
            raise ParseError("exponent must be a rational literal", column=num_tok[2] + 1)
        value = float(num_tok[1])
        if not value.is_integer():
            raise ParseError("exponent must be an integer or integer ratio", column=num_tok[2] + 1)
        frac = Fraction(sign * int(value))
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "/" and parens:
            self.next()
            den_tok = self.next()
            if den_tok[0] != "number" or not float(den_tok[1]).is_integer() or float(den_tok[1]) == 0:
                raise ParseError("exponent denominator must be a nonzero integer", column=den_tok[2] + 1)
            frac = frac / int(float(den_tok[1]))
        if parens:
            self.expect(")")
        return frac

    def atom(self) -> ScalarExpr:
        tok = self.next()
        kind, value, pos = tok
        if kind == "number":
            return Const(float(value))
        if kind == "name":
            nxt = self.peek()
            if nxt and nxt[0] == "op" and nxt[1] == "(":
                if value not in _FUNCTIONS:
                    raise ParseError(f"unknown function '{value}'", column=pos + 1)
                self.next()
                arg = self.expression()
                self.expect(")")
                return _FUNCTIONS[value](arg)
            return Var(value)
        if kind == "op" and value == "(":
            e = self.expression()
            self.expect(")")
            return e
        raise ParseError(f"unexpected token {value!r}", column=pos + 1)


def parse_expr(text: str) -> ScalarExpr:
    """Parse the infix syntax: + - * / ^, function calls, variables, numbers."""
    return _Parser(text).parse()
