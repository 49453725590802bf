"""Second-order multivariate jets compiled to straight-line Python.

``compile_hessian`` turns a list of expressions in ``m`` variables into a
function returning values, gradients and Hessians.  Every node propagates
the truncated multivariate Taylor jet ``(f, df/du_i, d2f/du_i du_j)`` with
the usual forward rules; the generated code only touches Python floats,
which keeps the geodesic integrator's inner loop cheap.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from ..errors import DomainError
from .jet import eval_jet, Jet
from .nodes import BinOp, Call, Const, Expr, Neg, Var, constant_value

ZERO = "0.0"

# (value, first derivative, second derivative) in terms of the argument x
# and the generated local holding f(x)
_RULES = {
    "sin": ("_sin({x})", "_cos({x})", "-{f}"),
    "cos": ("_cos({x})", "-_sin({x})", "-{f}"),
    "tan": ("_tan({x})", "(1.0 + {f}*{f})", "2.0*{f}*(1.0 + {f}*{f})"),
    "exp": ("_exp({x})", "{f}", "{f}"),
    "log": ("_log({x})", "(1.0/{x})", "(-1.0/({x}*{x}))"),
    "sqrt": ("_sqrt({x})", "(0.5/{f})", "(-0.25/({f}*{x}))"),
    "sinh": ("_sinh({x})", "_cosh({x})", "{f}"),
    "cosh": ("_cosh({x})", "_sinh({x})", "{f}"),
}


def _guarded_log(x):
    if x <= 0.0:
        raise ValueError("log of non-positive value")
    return math.log(x)


def _guarded_sqrt(x):
    if x <= 0.0:
        raise ValueError("sqrt of non-positive value (or not differentiable at 0)")
    return math.sqrt(x)


_NAMESPACE = {
    "_sin": math.sin,
    "_cos": math.cos,
    "_tan": math.tan,
    "_exp": math.exp,
    "_log": _guarded_log,
    "_sqrt": _guarded_sqrt,
    "_sinh": math.sinh,
    "_cosh": math.cosh,
}


class _Emitter:
    def __init__(self, names):
        self.names = list(names)
        self.m = len(self.names)
        self.pairs = [(i, j) for i in range(self.m) for j in range(i, self.m)]
        self.lines = []
        self.counter = itertools.count()

    def tmp(self, expr):
        if expr == ZERO or _is_literal(expr):
            return expr
        name = f"_t{next(self.counter)}"
        self.lines.append(f"{name} = {expr}")
        return name

    def node(self, e):
        """Return (value, [grad], {pair: hess}) as local names or literals."""
        m = self.m
        if isinstance(e, Const):
            return repr(float(e.value)), [ZERO] * m, {p: ZERO for p in self.pairs}
        if isinstance(e, Var):
            i = self.names.index(e.name)
            g = [ZERO] * m
            g[i] = "1.0"
            return f"u[{i}]", g, {p: ZERO for p in self.pairs}
        if isinstance(e, Neg):
            v, g, h = self.node(e.operand)
            return (
                self.tmp(_neg(v)),
                [self.tmp(_neg(x)) for x in g],
                {p: self.tmp(_neg(x)) for p, x in h.items()},
            )
        if isinstance(e, Call):
            return self.apply(e.func, self.node(e.arg))
        if e.op in "+-":
            a, b = self.node(e.left), self.node(e.right)
            comb = _add if e.op == "+" else _sub
            return (
                self.tmp(comb(a[0], b[0])),
                [self.tmp(comb(x, y)) for x, y in zip(a[1], b[1])],
                {p: self.tmp(comb(a[2][p], b[2][p])) for p in self.pairs},
            )
        if e.op == "*":
            return self.mul(self.node(e.left), self.node(e.right))
        if e.op == "/":
            return self.mul(self.node(e.left), self.reciprocal(self.node(e.right)))
        # power
        p = constant_value(e.right)
        if p is not None and p == int(p):
            return self.int_power(self.node(e.left), int(p))
        if p is not None:
            return self.real_power(self.node(e.left), p)
        return self.node(Call("exp", BinOp("*", e.right, Call("log", e.left))))

    def mul(self, a, b):
        av, ag, ah = a
        bv, bg, bh = b
        v = self.tmp(_mul(av, bv))
        g = [self.tmp(_add(_mul(ag[i], bv), _mul(av, bg[i]))) for i in range(self.m)]
        h = {}
        for (i, j) in self.pairs:
            terms = [_mul(ah[(i, j)], bv), _mul(ag[i], bg[j]), _mul(ag[j], bg[i]), _mul(av, bh[(i, j)])]
            h[(i, j)] = self.tmp(_sum(terms))
        return v, g, h

    def chain(self, a, f0, f1, f2):
        _, ag, ah = a
        g = [self.tmp(_mul(f1, x)) for x in ag]
        h = {}
        for (i, j) in self.pairs:
            h[(i, j)] = self.tmp(_add(_mul(f1, ah[(i, j)]), _mul(f2, _mul(ag[i], ag[j]))))
        return f0, g, h

    def apply(self, func, a):
        x = a[0]
        v_t, d1_t, d2_t = _RULES[func]
        f = self.tmp(v_t.format(x=x))
        d1 = self.tmp(d1_t.format(x=x, f=f))
        d2 = self.tmp(d2_t.format(x=x, f=f))
        return self.chain(a, f, d1, d2)

    def reciprocal(self, a):
        x = a[0]
        f = self.tmp(f"(1.0/{x})")
        d1 = self.tmp(f"(-{f}*{f})")
        d2 = self.tmp(f"(2.0*{f}*{f}*{f})")
        return self.chain(a, f, d1, d2)

    def int_power(self, a, p):
        x = a[0]
        if p == 0:
            return "1.0", [ZERO] * self.m, {q: ZERO for q in self.pairs}
        if p == 1:
            return a
        if p < 0:
            return self.int_power(self.reciprocal(a), -p)
        f = self.tmp(f"({x})**{p}")
        d1 = self.tmp(f"{p}.0*({x})**{p - 1}")
        d2 = self.tmp(f"{p * (p - 1)}.0*({x})**{p - 2}")
        return self.chain(a, f, d1, d2)

    def real_power(self, a, p):
        x = a[0]
        self.lines.append(f"if {x} < 0.0: raise ValueError('non-integer power of negative base')")
        f = self.tmp(f"({x})**{p!r}")
        d1 = self.tmp(f"{p!r}*({x})**{p - 1!r}")
        d2 = self.tmp(f"{p * (p - 1)!r}*({x})**{p - 2!r}")
        return self.chain(a, f, d1, d2)


def _is_literal(s):
    try:
        float(s)
        return True
    except ValueError:
        return False


def _neg(x):
    if x == ZERO:
        return ZERO
    return f"(-{x})"


def _mul(x, y):
    if x == ZERO or y == ZERO:
        return ZERO
    if x == "1.0":
        return y
    if y == "1.0":
        return x
    return f"{x}*{y}"


def _sum(terms):
    terms = [t for t in terms if t != ZERO]
    if not terms:
        return ZERO
    return "(" + " + ".join(terms) + ")"


def _add(x, y):
    return _sum([x, y])


def _sub(x, y):
    if y == ZERO:
        return x
    return _sum([x, f"(-{y})"])


class HessianFunction:
    """Callable ``u -> (values[n], grads[n, m], hessians[n, m, m])``."""

    def __init__(self, exprs, variables):
        self.exprs = list(exprs)
        self.variables = list(variables)
        em = _Emitter(self.variables)
        outs = [em.node(e) for e in self.exprs]
        m = em.m
        body = list(em.lines)
        vals = ", ".join(o[0] for o in outs)
        grads = ", ".join("(" + ", ".join(o[1]) + ",)" for o in outs)
        hess = ", ".join("(" + ", ".join(o[2][p] for p in em.pairs) + ",)" for o in outs)
        body.append(f"return ({vals},), ({grads},), ({hess},)")
        src = "def _f(u):\n" + "\n".join("    " + ln for ln in body) + "\n"
        self.source = src
        ns = dict(_NAMESPACE)
        exec(compile(src, "<rhelix-compiled>", "exec"), ns)
        self._f = ns["_f"]
        index = np.zeros((m, m), dtype=int)
        for k, (i, j) in enumerate(em.pairs):
            index[i, j] = index[j, i] = k
        self._index = index
        self.m = m

    def __call__(self, u):
        u = [float(x) for x in u]
        try:
            v, g, h = self._f(u)
        except (ValueError, ZeroDivisionError, OverflowError):
            self._locate_domain_error(u)
            raise DomainError("expression undefined at this point")
        hess = np.array(h, dtype=float)
        if self.m:
            hess = hess[:, self._index]
        else:
            hess = hess.reshape(len(self.exprs), 0, 0)
        return (
            np.array(v, dtype=float),
            np.array(g, dtype=float).reshape(len(self.exprs), self.m),
            hess,
        )

    def _locate_domain_error(self, u):
        # re-run the generic jet path, which names the offending subexpression
        for i in range(self.m):
            bindings = {
                name: Jet.variable(u[k], order=2) if k == i else Jet.constant(u[k], order=2)
                for k, name in enumerate(self.variables)
            }
            for e in self.exprs:
                eval_jet(e, bindings)


def compile_hessian(exprs, variables) -> HessianFunction:
    return HessianFunction(exprs, variables)
