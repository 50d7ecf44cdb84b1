import random

import pytest

from fqumbral.errors import DivergentAtPoint, InsufficientTerms, ZeroToPrecision
from fqumbral.genfun import exp_series, log_series
from fqumbral.gf import field_from_q
from fqumbral.laurent import (LaurentSeries, point_evaluation_check, eval_lin_series, laurent_arith,
                              lin_eval_laurent, ratfn_to_laurent)
from fqumbral.carlitz import carlitz_module
from fqumbral.polyrat import Poly, RatFn, parse_ratfn
from fqumbral.umbral import SigmaSpec, basic_sequence, delta_make

from conftest import SMALL_Q, random_ratfn

F2 = field_from_q(2)


def L(text, P, F=F2):
    return ratfn_to_laurent(parse_ratfn(text, F), P)


def test_expansion_examples():
    s = L("1/(1+x)", 4)
    assert str(s) == "1 + x + x^2 + x^3 + O(x^4)"
    s = L("x^3", 10)
    assert s.valuation() == 3 and s.coefficient(3) == F2.one and s.coefficient(9) == F2.zero
    s = L("1/x", 5)
    assert s.lead == -1 and s.valuation() == -1


def test_arith_examples():
    b1 = L("x+x^2", 10)
    assert laurent_arith(b1, b1, "mul").agrees(L("x^2+x^4", 11))
    z = L("x^2+x^5", 10)
    one = laurent_arith(z, laurent_arith(z, None, "inv"), "mul")
    assert one.agrees(L("1", one.prec)) and one.prec == 8
    a, b = L("1+x", 5), L("x", 9)
    assert (a + b).prec == 5


def test_precision_rules():
    a = L("x^2+x^3", 6)   # v = 2, prec 6
    b = L("1/x+1", 4)    # v = -1, prec 4
    assert (a * b).prec == min(6 - 1, 4 + 2)
    assert a.frobenius(1).prec == 12
    with pytest.raises(ZeroToPrecision):
        LaurentSeries.zero(F2, 5).inv()
    with pytest.raises(ValueError):
        a.coefficient(6)


@pytest.mark.parametrize("q", SMALL_Q)
def test_expansion_is_a_ring_map(q):
    F = field_from_q(q)
    rng = random.Random(q)
    P = 12
    for _ in range(25):
        r, s = random_ratfn(F, rng), random_ratfn(F, rng)
        if r.is_zero() or s.is_zero():
            continue
        R, S = ratfn_to_laurent(r, P), ratfn_to_laurent(s, P)
        assert (R + S).agrees(ratfn_to_laurent(r + s, P), min((R + S).prec, P))
        prod = R * S
        assert prod.agrees(ratfn_to_laurent(r * s, prod.prec))
        inv = R.inv()
        assert inv.agrees(ratfn_to_laurent(r.inv(), inv.prec))
        fr = R.frobenius(1)
        assert fr.agrees(ratfn_to_laurent(r.frobenius(1), fr.prec))


def carlitz(caches, q=2, N=10):
    c = caches(q, N)
    op = delta_make(SigmaSpec("carlitz"), N, c)
    return c, op


def test_functional_equation_at_a_point(caches):
    c, op = carlitz(caches)
    e = exp_series(op, op.N)
    lam = L("x^2", 17)
    lhs = lin_eval_laurent(carlitz_module(c, RatFn.x(F2)), eval_lin_series(e, lam, 16))
    rhs = eval_lin_series(e, L("x^3", 17), 16)
    assert lhs.agrees(rhs, 15)


def test_round_trip_log_then_exp(caches):
    for preset in ("carlitz", "laguerre"):
        c = caches(2, 10)
        op = delta_make(SigmaSpec(preset), 10, c)
        lam = L("x^2", 13)
        y = eval_lin_series(log_series(op, 10), lam, 13)
        back = eval_lin_series(exp_series(op, 10), y, 12)
        assert back.agrees(lam, 12)


def test_divergence_at_valuation_one(caches):
    c, op = carlitz(caches)
    with pytest.raises(DivergentAtPoint) as e:
        eval_lin_series(exp_series(op, 8), L("x", 12), 12)
    assert e.value.j == 1


def test_truncated_series_must_suffice(caches):
    c, op = carlitz(caches)
    with pytest.raises(InsufficientTerms):
        eval_lin_series(exp_series(op, 1), L("x^2", 40), 40)


@pytest.mark.parametrize("preset", ["carlitz", "laguerre"])
def test_point_evaluation(preset, caches):
    c = caches(2, 10)
    op = delta_make(SigmaSpec(preset), 10, c)
    seq = basic_sequence(op)
    lam = L("x^2", 13)
    assert point_evaluation_check(op, seq, lam, parse_ratfn("x", F2), 12).passed
    assert point_evaluation_check(op, seq, lam, RatFn.one(F2), 12).passed
    assert point_evaluation_check(op, seq, lam, parse_ratfn("1+x^2", F2), 12).passed


def test_log_is_contracting_on_the_disk(caches):
    c, op = carlitz(caches)
    beta = log_series(op, 10)
    for text in ("x^2", "x^3", "x^2+x^5", "x^4+x^3"):
        lam = L(text, 14)
        assert eval_lin_series(beta, lam, 14).valuation() >= lam.valuation()


def test_polynomial_evaluation_is_exact():
    F = F2
    u_poly = Poly(F, [0, 1, 1])
    from fqumbral.linpoly import LinPoly, lin_eval
    u = LinPoly(F, [RatFn.x(F), 1])
    z = parse_ratfn("x/(1+x)", F)
    got = lin_eval_laurent(u, ratfn_to_laurent(z, 10))
    assert got.agrees(ratfn_to_laurent(lin_eval(u, z), got.prec))
    assert eval_lin_series(u, ratfn_to_laurent(z, 10), 9).agrees(ratfn_to_laurent(lin_eval(u, z), 9))
    assert u_poly.deg == 2


def test_sparse_polynomial_is_summed_fully():
    from fqumbral.linpoly import LinPoly, lin_eval
    u = LinPoly.monomial(F2, 4, RatFn.x(F2))
    z = parse_ratfn("1+x", F2)
    got = eval_lin_series(u, ratfn_to_laurent(z, 30), 30)
    assert got.agrees(ratfn_to_laurent(lin_eval(u, z), 30))
