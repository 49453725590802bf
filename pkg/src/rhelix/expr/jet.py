"""Truncated Taylor jets and expression evaluation over them.

A :class:`Jet` of order ``k`` holds the Taylor coefficients
``f, f', f''/2!, ..., f^(k)/k!`` of a scalar quantity along one parameter.
A jet may additionally carry ``m`` first-order tangent rows: for each of
``m`` independent infinitesimal directions ``eps_i`` (with
``eps_i * eps_j = 0``) the series of the partial derivative along
``eps_i``.  Tangent rows let one evaluation deliver, e.g., both the series
of a surface point along a curve and the series of the patch Jacobian.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from ..errors import DomainError
from .nodes import BinOp, Call, Const, Expr, Neg, Var, to_text


@lru_cache(maxsize=64)
def _toeplitz_index(k):
    idx = np.arange(k)
    diff = idx[:, None] - idx[None, :]
    return np.clip(diff, 0, None), diff >= 0


def _toeplitz(a):
    """Lower-triangular matrix T with ``T @ b == convolve(a, b)[:len(a)]``."""
    index, mask = _toeplitz_index(a.shape[0])
    return np.where(mask, a[index], 0.0)


def _smul(a, b):
    return _toeplitz(a) @ b


def _srecip(a):
    if a[0] == 0.0:
        raise DomainError("division by zero")
    r = np.empty_like(a)
    r[0] = 1.0 / a[0]
    for n in range(1, a.shape[0]):
        r[n] = -np.dot(a[1 : n + 1], r[n - 1 :: -1][:n]) / a[0]
    return r


def _sexp(a):
    e = np.empty_like(a)
    e[0] = math.exp(a[0])
    j = np.arange(1, a.shape[0])
    for n in range(1, a.shape[0]):
        e[n] = np.dot(j[:n] * a[1 : n + 1], e[n - 1 :: -1][:n]) / n
    return e


def _slog(a):
    if a[0] <= 0.0:
        raise DomainError("log of non-positive value")
    out = np.empty_like(a)
    out[0] = math.log(a[0])
    for n in range(1, a.shape[0]):
        j = np.arange(1, n)
        out[n] = (a[n] - np.dot(j * out[1:n], a[n - 1 : 0 : -1]) / n) / a[0]
    return out


def _strig(a, hyperbolic=False):
    # plain floats: series are short and numpy call overhead dominates
    x = a.tolist()
    k = len(x)
    s = [0.0] * k
    c = [0.0] * k
    if hyperbolic:
        s[0], c[0] = math.sinh(x[0]), math.cosh(x[0])
    else:
        s[0], c[0] = math.sin(x[0]), math.cos(x[0])
    sign = 1.0 if hyperbolic else -1.0
    w = [j * x[j] for j in range(k)]
    for n in range(1, k):
        ss = cc = 0.0
        for j in range(1, n + 1):
            ss += w[j] * c[n - j]
            cc += w[j] * s[n - j]
        s[n] = ss / n
        c[n] = sign * cc / n
    return np.array(s), np.array(c)


def _ssqrt(a, need_derivative):
    if a[0] < 0.0:
        raise DomainError("sqrt of negative value")
    if a[0] == 0.0:
        if need_derivative:
            raise DomainError("sqrt is not differentiable at 0")
        return np.zeros_like(a)
    r = np.empty_like(a)
    r[0] = math.sqrt(a[0])
    for n in range(1, a.shape[0]):
        r[n] = (a[n] - np.dot(r[1:n], r[n - 1 : 0 : -1])) / (2.0 * r[0])
    return r


class Jet:
    """Taylor jet ``c0 + c1 t + ... + ck t^k`` with optional tangent rows.

    ``data`` has shape ``(1 + m, k + 1)``: row 0 is the value series and
    rows ``1..m`` are the tangent series.
    """

    __slots__ = ("data",)
    __array_priority__ = 100

    def __init__(self, coeffs, tangents=None):
        c = np.array(coeffs, dtype=float, ndmin=1)
        if c.ndim != 1:
            raise ValueError("coeffs must be one-dimensional")
        if tangents is None:
            self.data = c[None, :]
        else:
            t = np.array(tangents, dtype=float, ndmin=2)
            if t.shape[1] != c.shape[0]:
                raise ValueError("tangent rows must match the jet order")
            self.data = np.vstack([c, t])

    @classmethod
    def _raw(cls, data):
        j = cls.__new__(cls)
        j.data = data
        return j

    @classmethod
    def constant(cls, value, order=0, n_tangents=0):
        data = np.zeros((1 + n_tangents, order + 1))
        data[0, 0] = value
        return cls._raw(data)

    @classmethod
    def variable(cls, value, order=1, n_tangents=0, tangent=None):
        """Identity seed ``value + t``; ``tangent`` selects an eps direction."""
        data = np.zeros((1 + n_tangents, order + 1))
        data[0, 0] = value
        if order >= 1:
            data[0, 1] = 1.0
        if tangent is not None:
            data[1 + tangent, 0] = 1.0
        return cls._raw(data)

    @property
    def order(self) -> int:
        return self.data.shape[1] - 1

    @property
    def n_tangents(self) -> int:
        return self.data.shape[0] - 1

    @property
    def coeffs(self):
        return self.data[0]

    @property
    def tangents(self):
        return self.data[1:]

    @property
    def value(self) -> float:
        return float(self.data[0, 0])

    def derivatives(self):
        """``f, f', ..., f^(k)`` (coefficients scaled by ``j!``)."""
        fact = np.array([math.factorial(j) for j in range(self.order + 1)], dtype=float)
        return self.data[0] * fact

    def derivative(self) -> "Jet":
        """Jet of d/dt, one order lower."""
        j = np.arange(1, self.order + 1)
        return Jet._raw(self.data[:, 1:] * j)

    def truncate(self, order) -> "Jet":
        return Jet._raw(self.data[:, : order + 1].copy())

    def __repr__(self):
        return f"Jet({self.data[0].tolist()}, tangents={self.n_tangents})"

    # arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Jet):
            if other.data.shape != self.data.shape:
                raise ValueError(
                    f"jet shape mismatch {other.data.shape} vs {self.data.shape}"
                )
            return other
        data = np.zeros_like(self.data)
        data[0, 0] = float(other)
        return Jet._raw(data)

    def __add__(self, other):
        return Jet._raw(self.data + self._coerce(other).data)

    __radd__ = __add__

    def __sub__(self, other):
        return Jet._raw(self.data - self._coerce(other).data)

    def __rsub__(self, other):
        return Jet._raw(self._coerce(other).data - self.data)

    def __neg__(self):
        return Jet._raw(-self.data)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet._raw(self.data * float(other))
        b = self._coerce(other).data
        a = self.data
        out = np.empty_like(a)
        ta = _toeplitz(a[0])
        out[0] = ta @ b[0]
        if a.shape[0] > 1:
            tb = _toeplitz(b[0])
            out[1:] = b[1:] @ ta.T + a[1:] @ tb.T
        return Jet._raw(out)

    __rmul__ = __mul__

    def _lift(self, f0, fprime):
        """Apply a scalar function with value series f0 and derivative series fprime."""
        out = np.empty_like(self.data)
        out[0] = f0
        if self.data.shape[0] > 1:
            out[1:] = self.data[1:] @ _toeplitz(fprime).T
        return Jet._raw(out)

    def reciprocal(self):
        r = _srecip(self.data[0])
        return self._lift(r, -_smul(r, r))

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            other = float(other)
            if other == 0.0:
                raise DomainError("division by zero")
            return Jet._raw(self.data / other)
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def ipow(self, p: int) -> "Jet":
        """Integer power by repeated squaring."""
        if p < 0:
            return self.reciprocal().ipow(-p)
        result = self._coerce(1.0)
        base = self
        while p:
            if p & 1:
                result = result * base
            p >>= 1
            if p:
                base = base * base
        return result

    def __pow__(self, other):
        if not isinstance(other, Jet):
            y = float(other)
            if y == int(y):
                return self.ipow(int(y))
            other = self._coerce(y)
        oc = other.data
        if not oc[1:].any() and not oc[0, 1:].any() and oc[0, 0] == int(oc[0, 0]):
            return self.ipow(int(oc[0, 0]))
        a0 = self.data[0, 0]
        if a0 < 0.0:
            raise DomainError("non-integer power of negative base")
        if a0 == 0.0:
            y = oc[0, 0]
            if self.data.shape == (1, 1) and y > 0:
                return self._coerce(0.0)
            raise DomainError("non-integer power of zero base")
        return (other * self.log()).exp()

    def exp(self):
        e = _sexp(self.data[0])
        return self._lift(e, e)

    def log(self):
        lg = _slog(self.data[0])
        return self._lift(lg, _srecip(self.data[0]))

    def sin(self):
        s, c = _strig(self.data[0])
        return self._lift(s, c)

    def cos(self):
        s, c = _strig(self.data[0])
        return self._lift(c, -s)

    def tan(self):
        s, c = _strig(self.data[0])
        if abs(c[0]) < 1e-300:
            raise DomainError("tan at a pole")
        t = _smul(s, _srecip(c))
        sec2 = _smul(t, t)
        sec2[0] += 1.0
        return self._lift(t, sec2)

    def sinh(self):
        s, c = _strig(self.data[0], hyperbolic=True)
        return self._lift(s, c)

    def cosh(self):
        s, c = _strig(self.data[0], hyperbolic=True)
        return self._lift(c, s)

    def sqrt(self):
        need = bool(self.data[0, 1:].any() or self.data[1:].any())
        r = _ssqrt(self.data[0], need)
        if not need:
            return Jet._raw(np.vstack([r, np.zeros_like(self.data[1:])]))
        return self._lift(r, 0.5 * _srecip(r))


def compose(series, delta: Jet) -> Jet:
    """Evaluate the polynomial ``sum_j series[j] * delta**j`` (Horner).

    ``delta`` must have a zero constant term, so the result is the Taylor
    jet of ``f(t0 + delta)`` when ``series`` holds the Taylor coefficients
    of ``f`` about ``t0``.
    """
    series = np.asarray(series, dtype=float)
    out = delta._coerce(series[-1])
    for c in series[-2::-1]:
        out = out * delta + c
    return out


def eval_jet(e: Expr, bindings) -> Jet:
    """Evaluate ``e`` over jets.

    ``bindings`` maps variable names to :class:`Jet` values sharing one
    order and tangent count (plain floats are promoted to constants).
    """
    shape = None
    for v in bindings.values():
        if isinstance(v, Jet):
            if shape is None:
                shape = v.data.shape
            elif v.data.shape != shape:
                raise ValueError("all bound jets must share order and tangent count")
    if shape is None:
        shape = (1, 1)
    template = Jet._raw(np.zeros(shape))
    env = {
        k: (v if isinstance(v, Jet) else template._coerce(v)) for k, v in bindings.items()
    }
    return _eval(e, env, template)


def _eval(e, env, template):
    if isinstance(e, Const):
        return template._coerce(e.value)
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise KeyError(f"variable {e.name!r} is not bound") from None
    try:
        if isinstance(e, Neg):
            return -_eval(e.operand, env, template)
        if isinstance(e, Call):
            arg = _eval(e.arg, env, template)
            return getattr(arg, e.func)()
        a = _eval(e.left, env, template)
        b = _eval(e.right, env, template)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if e.op == "/":
            return a / b
        return a ** b
    except DomainError as err:
        if err.subexpression is None:
            raise DomainError(str(err), to_text(e)) from None
        raise
    except (OverflowError, ValueError) as err:
        raise DomainError(str(err), to_text(e)) from None


_FLOAT_FUNCS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "exp": math.exp,
    "log": math.log,
    "sqrt": math.sqrt,
    "sinh": math.sinh,
    "cosh": math.cosh,
}


def eval_float(e: Expr, bindings) -> float:
    """Plain floating-point evaluation (order-0 fast path)."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return float(bindings[e.name])
    try:
        if isinstance(e, Neg):
            return -eval_float(e.operand, bindings)
        if isinstance(e, Call):
            x = eval_float(e.arg, bindings)
            if e.func == "log" and x <= 0:
                raise DomainError("log of non-positive value")
            if e.func == "sqrt" and x < 0:
                raise DomainError("sqrt of negative value")
            return _FLOAT_FUNCS[e.func](x)
        a = eval_float(e.left, bindings)
        b = eval_float(e.right, bindings)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if e.op == "/":
            if b == 0.0:
                raise DomainError("division by zero")
            return a / b
        if b != int(b) and a < 0:
            raise DomainError("non-integer power of negative base")
        if a == 0.0 and b < 0:
            raise DomainError("division by zero")
        return a ** int(b) if b == int(b) else a ** b
    except DomainError as err:
        if err.subexpression is None:
            raise DomainError(str(err), to_text(e)) from None
        raise
    except (OverflowError, ValueError, ZeroDivisionError) as err:
        raise DomainError(str(err), to_text(e)) from None


class JetProgram:
    """Flattened, deduplicated evaluation of several expressions over jets.

    Shared subtrees are computed once, constant operands use scalar
    arithmetic, and ``sin``/``cos`` of one argument share a single series
    recursion.  Results match :func:`eval_jet`; on a domain failure the
    tree evaluator is re-run so the error names the subexpression.
    """

    def __init__(self, exprs):
        self.exprs = list(exprs)
        self.ops = []
        self._slots = {}
        self.outputs = [self._emit(e) for e in self.exprs]

    def _emit(self, e):
        slot = self._slots.get(e)
        if slot is not None:
            return slot
        if isinstance(e, Const):
            op = ("const", e.value)
        elif isinstance(e, Var):
            op = ("var", e.name)
        elif isinstance(e, Neg):
            op = ("neg", self._emit(e.operand))
        elif isinstance(e, Call):
            op = ("call", e.func, self._emit(e.arg))
        else:
            op = ("bin", e.op, self._emit(e.left), self._emit(e.right))
        self.ops.append(op)
        slot = len(self.ops) - 1
        self._slots[e] = slot
        return slot

    def run(self, bindings):
        """Evaluate every expression; ``bindings`` maps names to equally shaped jets."""
        try:
            return self._run(bindings)
        except (DomainError, OverflowError, ValueError, ZeroDivisionError):
            for e in self.exprs:
                eval_jet(e, bindings)
            raise

    def _run(self, bindings):
        template = next(iter(bindings.values()))
        vals = []
        trig = {}
        for op in self.ops:
            kind = op[0]
            if kind == "const":
                vals.append(op[1])
            elif kind == "var":
                vals.append(bindings[op[1]])
            elif kind == "neg":
                vals.append(-vals[op[1]])
            elif kind == "call":
                func, arg = op[1], vals[op[2]]
                if not isinstance(arg, Jet):
                    arg = template._coerce(arg)
                if func in ("sin", "cos"):
                    sc = trig.get(op[2])
                    if sc is None:
                        sc = trig[op[2]] = _strig(arg.data[0])
                    s, c = sc
                    vals.append(arg._lift(s, c) if func == "sin" else arg._lift(c, -s))
                else:
                    vals.append(getattr(arg, func)())
            else:
                vals.append(self._binary(op[1], vals[op[2]], vals[op[3]], template))
        return [v if isinstance(v, Jet) else template._coerce(v) for v in (vals[i] for i in self.outputs)]

    @staticmethod
    def _binary(op, a, b, template):
        a_const, b_const = not isinstance(a, Jet), not isinstance(b, Jet)
        if a_const and b_const:
            return eval_float(BinOp(op, Const(a), Const(b)), {})
        if op == "+":
            return a + b if not a_const else b + a
        if op == "-":
            return a - b if not a_const else -(b - a)
        if op == "*":
            return a * b if not a_const else b * a
        if op == "/":
            if a_const:
                return template._coerce(a) / b
            return a / b
        if a_const:
            a = template._coerce(a)
        return a ** b
