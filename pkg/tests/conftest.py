"""Shared helpers: seeded random generators for exact scalars and
operators, and a sympy-based application oracle for the operator engine.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from cgaosc.scalars import CScalar, HalfInt
from cgaosc.weyl import Chart, WeylOp


def random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-6, 6), rng.randint(1, 5))


def random_cscalar(rng: random.Random, maxpow: int = 1) -> CScalar:
    out = CScalar.zero()
    for _ in range(rng.randint(1, 3)):
        out = out + CScalar.c_power(rng.randint(-maxpow, maxpow),
                                    random_fraction(rng))
    return out


def random_weylop(chart: Chart, rng: random.Random,
                  nterms: int = 3, maxpow: int = 2) -> WeylOp:
    terms = {}
    for _ in range(rng.randint(1, nterms)):
        if chart.kind == "osc":
            e = rng.randint(-2, 2)
        else:
            e = 0
        v = tuple(rng.randint(0, maxpow) for _ in range(chart.nvars))
        d = tuple(rng.randint(0, maxpow) for _ in range(chart.nders))
        terms[(e, v, d)] = random_cscalar(rng)
    return WeylOp(chart, terms)


# -- sympy oracle -------------------------------------------------------------

_C = sympy.Symbol("c")


def sympy_vars(chart: Chart):
    return [sympy.Symbol(n) for n in chart.var_names()]


def cscalar_to_sympy(cs: CScalar):
    return sum(sympy.Rational(q) * _C ** k for k, q in cs.items_sorted())


def weyl_apply_sympy(op: WeylOp, expr, chart: Chart):
    """Apply op to a sympy expression in the chart variables (and s)."""
    s = sympy.Symbol("s")
    xs = sympy_vars(chart)
    out = sympy.Integer(0)
    for (e, v, d), cs in op.terms.items():
        work = expr
        if chart.kind == "osc":
            for _ in range(d[0]):
                work = sympy.diff(work, s)
            space = d[1:]
        else:
            space = d
        for x, n in zip(xs, space):
            for _ in range(n):
                work = sympy.diff(work, x)
        mono = sympy.Integer(1)
        for x, p in zip(xs, v):
            mono *= x ** p
        weight = sympy.exp(sympy.Rational(e, 2) * s)
        out += cscalar_to_sympy(cs) * weight * mono * work
    return sympy.expand(out)


def gaussfunc_to_sympy(f):
    s = sympy.Symbol("s")
    xs = sympy_vars(f.chart)
    out = sympy.Integer(0)
    for (mu2, vp), cs in f.terms.items():
        mono = sympy.Integer(1)
        for x, p in zip(xs, vp):
            mono *= x ** p
        out += (cscalar_to_sympy(cs) * sympy.exp(sympy.Rational(mu2, 2) * s)
                * mono)
    g = xs[f.chart.gauss_var]
    return sympy.expand(out) * sympy.exp(cscalar_to_sympy(f.kappa) * g ** 2)
