from fractions import Fraction

import pytest

from cgaosc.errors import BadEll, NotClosed
from cgaosc.realizations import (AlgebraElement, C_LABEL, SpanBasis, Z_MINUS,
                                 Z_PLUS, Z_ZERO, extract_structure,
                                 free_generators, label_str, osc_generators,
                                 parse_label, verify_isomorphic_tables,
                                 w_indices, w_label, ww_label)
from cgaosc.scalars import CScalar, HalfInt
from cgaosc.weyl import degree_of

H = HalfInt
ELLS = [H(1), H(3), H(5), H(7), H(9)]


def elem(*pairs):
    out = AlgebraElement()
    for label, coef in pairs:
        c = coef if isinstance(coef, CScalar) else CScalar.from_rational(coef)
        out = out + AlgebraElement.of(label, c)
    return out


@pytest.fixture(scope="module", params=["free", "osc"])
def table(request):
    if request.param == "free":
        gens = free_generators(H(3))
    else:
        gens = osc_generators(H(3), "section7")
    return extract_structure(gens)


class TestThreeHalfTable:
    """The full printed bracket table of the eight-generator algebra at
    ell = 3/2, as a regression fixture."""

    def test_nonzero_entries(self, table):
        w = {t: w_label(H(t)) for t in (-3, -1, 1, 3)}
        expected = {
            (Z_PLUS, Z_MINUS): elem((Z_ZERO, 2)),
            (Z_ZERO, Z_PLUS): elem((Z_PLUS, 1)),
            (Z_ZERO, Z_MINUS): elem((Z_MINUS, -1)),
            (Z_ZERO, w[3]): elem((w[3], Fraction(3, 2))),
            (Z_ZERO, w[-3]): elem((w[-3], Fraction(-3, 2))),
            (Z_ZERO, w[1]): elem((w[1], Fraction(1, 2))),
            (Z_ZERO, w[-1]): elem((w[-1], Fraction(-1, 2))),
            (Z_PLUS, w[1]): elem((w[3], 1)),
            (Z_MINUS, w[-1]): elem((w[-3], 1)),
            (Z_PLUS, w[-1]): elem((w[1], 2)),
            (Z_MINUS, w[1]): elem((w[-1], 2)),
            (Z_PLUS, w[-3]): elem((w[-1], 3)),
            (Z_MINUS, w[3]): elem((w[1], 3)),
            (w[1], w[-1]): elem((C_LABEL, 1)),
            (w[3], w[-3]): elem((C_LABEL, -3)),
        }
        for (a, b), want in expected.items():
            assert table.bracket(a, b) == want, (a, b)
            assert table.bracket(b, a) == want.scaled(
                CScalar.from_rational(-1)), (b, a)

    def test_all_other_pairs_vanish(self, table):
        nonzero = {
            (Z_PLUS, Z_MINUS), (Z_ZERO, Z_PLUS), (Z_ZERO, Z_MINUS),
            (Z_ZERO, w_label(H(3))), (Z_ZERO, w_label(H(-3))),
            (Z_ZERO, w_label(H(1))), (Z_ZERO, w_label(H(-1))),
            (Z_PLUS, w_label(H(1))), (Z_MINUS, w_label(H(-1))),
            (Z_PLUS, w_label(H(-1))), (Z_MINUS, w_label(H(1))),
            (Z_PLUS, w_label(H(-3))), (Z_MINUS, w_label(H(3))),
            (w_label(H(1)), w_label(H(-1))),
            (w_label(H(3)), w_label(H(-3))),
        }
        labels = table.labels
        count = 0
        for i, a in enumerate(labels):
            for b in labels[i + 1:]:
                if (a, b) not in nonzero and (b, a) not in nonzero:
                    assert table.bracket(a, b).is_zero(), (a, b)
                else:
                    count += 1
        assert count == 15


class TestClosureAllEll:
    @pytest.mark.parametrize("ell", ELLS, ids=str)
    def test_both_charts_closed_and_isomorphic(self, ell):
        free = extract_structure(free_generators(ell))
        osc = extract_structure(osc_generators(ell, "section7"))
        assert verify_isomorphic_tables(free, osc)

    @pytest.mark.parametrize("ell", ELLS, ids=str)
    @pytest.mark.parametrize("chart", ["free", "osc"])
    def test_gradings_and_center(self, ell, chart):
        if chart == "free":
            gens = free_generators(ell)
        else:
            gens = osc_generators(ell, "section7")
        z0 = gens[Z_ZERO]
        assert degree_of(gens[Z_PLUS], z0) == H(2)
        assert degree_of(gens[Z_MINUS], z0) == H(-2)
        assert degree_of(gens[C_LABEL], z0) == H(0)
        for j in w_indices(ell):
            assert degree_of(gens[w_label(j)], z0) == j
        c = gens[C_LABEL]
        for op in gens.values():
            assert c.commutator(op).is_zero()

    @pytest.mark.parametrize("ell", ELLS, ids=str)
    def test_heisenberg_pairs(self, ell):
        gens = free_generators(ell)
        basis = SpanBasis(gens)
        at_threehalf = {1: Fraction(1), 3: Fraction(-3)}
        for j in w_indices(ell):
            if j.twice <= 0:
                continue
            comm = gens[w_label(j)].commutator(gens[w_label(-j)])
            el = basis.expand(comm, 0, restrict=lambda lb: lb == C_LABEL)
            assert set(el.coeffs) == {C_LABEL}
            if ell == H(3):
                assert el.coeffs[C_LABEL] \
                    == CScalar.from_rational(at_threehalf[j.twice])


class TestErrorsAndLabels:
    def test_not_closed(self):
        gens = free_generators(H(1))
        del gens[w_label(H(-1))]
        with pytest.raises(NotClosed):
            extract_structure(gens)

    def test_bad_ell(self):
        with pytest.raises(BadEll):
            free_generators(H(4))
        with pytest.raises(BadEll):
            osc_generators(H(-1))

    def test_label_round_trip(self):
        labels = [Z_PLUS, Z_ZERO, Z_MINUS, C_LABEL, w_label(H(3)),
                  w_label(H(-1)), ww_label(H(3), H(-1)),
                  ww_label(H(-1), H(-3))]
        for lb in labels:
            assert parse_label(label_str(lb)) == lb
        with pytest.raises(ValueError):
            parse_label("q7")

    def test_different_ell_tables_differ(self):
        a = extract_structure(free_generators(H(1)))
        b = extract_structure(free_generators(H(3)))
        assert not verify_isomorphic_tables(a, b)
        assert verify_isomorphic_tables(a, a)
