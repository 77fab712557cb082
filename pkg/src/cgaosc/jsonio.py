"""JSON encoding of the exact types, with enough structure to round-trip
operators bit-for-bit: rationals as numerator/denominator strings,
scalars as Laurent term lists, operators as normal-form term lists.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict

from .funcspace import GaussFunc
from .scalars import CScalar, HalfInt
from .weyl import Chart, WeylOp


def rational_json(q: Fraction) -> dict:
    return {"n": str(q.numerator), "d": str(q.denominator)}


def rational_from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["n"]), int(obj["d"]))


def cscalar_json(cs: CScalar) -> list:
    return [{"cpow": k, "coef": rational_json(q)}
            for k, q in cs.items_sorted()]


def cscalar_from_json(items: list) -> CScalar:
    out = CScalar.zero()
    for it in items:
        out = out + CScalar.c_power(int(it["cpow"]),
                                    rational_from_json(it["coef"]))
    return out


def halfint_json(h: HalfInt) -> dict:
    return {"twice": h.twice}


def chart_json(chart: Chart) -> dict:
    return {"kind": chart.kind, "twice_ell": chart.ell.twice}


def chart_from_json(obj: dict) -> Chart:
    return Chart(obj["kind"], HalfInt(int(obj["twice_ell"])))


def weylop_json(op: WeylOp) -> dict:
    return {
        "chart": chart_json(op.chart),
        "terms": [{"coef": cscalar_json(cs),
                   "twice_expS": e,
                   "var": list(v),
                   "der": list(d)}
                  for (e, v, d), cs in op.sorted_terms()],
    }


def weylop_from_json(obj: dict) -> WeylOp:
    chart = chart_from_json(obj["chart"])
    terms = {}
    for t in obj["terms"]:
        key = (int(t["twice_expS"]),
               tuple(int(x) for x in t["var"]),
               tuple(int(x) for x in t["der"]))
        terms[key] = cscalar_from_json(t["coef"])
    return WeylOp(chart, terms)


def gaussfunc_json(f: GaussFunc) -> dict:
    return {
        "chart": chart_json(f.chart),
        "kappa": cscalar_json(f.kappa),
        "terms": [{"twice_mu": mu2,
                   "var": list(vp),
                   "coef": cscalar_json(cs)}
                  for (mu2, vp), cs in f.sorted_terms()],
    }


def gaussfunc_from_json(obj: dict) -> GaussFunc:
    chart = chart_from_json(obj["chart"])
    kappa = cscalar_from_json(obj["kappa"])
    terms = {}
    for t in obj["terms"]:
        key = (int(t["twice_mu"]), tuple(int(x) for x in t["var"]))
        terms[key] = cscalar_from_json(t["coef"])
    return GaussFunc(chart, kappa, terms)


def gens_json(gens: Dict) -> dict:
    from .realizations import label_sort_key, label_str
    return {label_str(lb): weylop_json(gens[lb])
            for lb in sorted(gens, key=label_sort_key)}
