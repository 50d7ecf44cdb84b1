import itertools

import pytest

from fqumbral.carlitz import (CarlitzCache, carlitz_e, carlitz_e_oracle, carlitz_f,
                              carlitz_module, gekeler_sides, gekeler_sides_rational, k_binomial)
from fqumbral.errors import EnumerationTooLarge
from fqumbral.gf import field_from_q
from fqumbral.linpoly import LinPoly, lin_compose, lin_eval
from fqumbral.polyrat import Poly, RatFn, parse_ratfn
from fqumbral.umbral import sup_norm


def test_cache_recurrences(caches):
    c = caches(3)
    x = Poly.x(c.field)
    for i in range(1, 7):
        assert c.bracket(i) == Poly.monomial(c.field, 3 ** i) - x
        assert c.D[i] == c.bracket(i) * c.D[i - 1].frobenius(1)
        assert c.L[i] == c.bracket(i) * c.L[i - 1]
    assert c.D[0].is_one() and c.L[0].is_one()


def test_d_is_product_of_monic_polynomials():
    # D_i is the product of all monic polynomials of degree i
    c = CarlitzCache(field_from_q(2), 3)
    F = c.field
    for i in range(1, 4):
        prod = Poly(F, [1])
        for tail in itertools.product([0, 1], repeat=i):
            prod = prod * Poly(F, list(tail) + [1])
        assert prod == c.D[i]


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_k_binomial_edges_and_examples(q, caches):
    c = caches(q)
    for i in range(7):
        assert k_binomial(c, i, 0).is_one() and k_binomial(c, i, i).is_one()
    b = k_binomial(c, 2, 1)
    if q == 2:
        assert b == Poly(c.field, [1, 1, 1])
    if q == 3:
        num, den = c.bracket(2), c.bracket(1)
        assert b * den == num  # [2]/[1] = (x^9 - x)/(x^3 - x)


def test_e_small_cases(caches):
    c = caches(2)
    F = c.field
    assert carlitz_e(c, 0) == LinPoly.identity(F)
    assert carlitz_e(c, 1) == LinPoly(F, [1, 1])
    assert carlitz_e_oracle(c, 0) == LinPoly.identity(F)
    assert carlitz_e_oracle(c, 1) == LinPoly(F, [1, 1])


@pytest.mark.parametrize("q,imax", [(2, 4), (3, 3), (4, 2), (5, 2)])
def test_e_matches_product_oracle(q, imax, caches):
    c = caches(q)
    for i in range(imax + 1):
        assert carlitz_e(c, i) == carlitz_e_oracle(c, i)


def test_oracle_bound(caches):
    with pytest.raises(EnumerationTooLarge):
        carlitz_e_oracle(caches(5), 4)


@pytest.mark.parametrize("q", [2, 3])
def test_e_vanishes_on_low_degree_polynomials(q, caches):
    c = caches(q)
    F = c.field
    for i in range(1, 5):
        e = carlitz_e(c, i)
        for tup in itertools.product(list(F.elements()), repeat=i):
            assert lin_eval(e, RatFn(Poly(F, tup))).is_zero()


def test_f_examples(caches):
    c = caches(2)
    F = c.field
    assert carlitz_f(c, 0) == LinPoly.identity(F)
    assert lin_eval(carlitz_f(c, 1), RatFn.x(F)).is_one()
    for i in range(6):
        assert sup_norm(c, carlitz_f(c, i)) == 0


@pytest.mark.parametrize("q", [2, 3, 4])
def test_carlitz_module_examples(q, caches):
    c = caches(q)
    F = c.field
    assert carlitz_module(c, RatFn.x(F)) == LinPoly(F, [RatFn.x(F), 1])
    assert carlitz_module(c, RatFn.one(F)) == LinPoly.identity(F)


@pytest.mark.parametrize("q", [2, 3])
def test_module_composition_all_pairs(q, caches):
    c = caches(q)
    F = c.field
    polys = [Poly(F, t) for t in itertools.product(list(F.elements()), repeat=3)]
    C = {p: carlitz_module(c, p) for p in polys}
    for t in polys:
        for s in polys:
            assert carlitz_module(c, t * s) == lin_compose(C[t], C[s])


@pytest.mark.parametrize("q", [2, 3, 4])
def test_module_is_additive_in_s(q, caches):
    c = caches(q)
    F = c.field
    s, t = parse_ratfn("x^2+1", F), parse_ratfn("x^3+x", F)
    assert carlitz_module(c, s + t) == carlitz_module(c, s) + carlitz_module(c, t)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_gekeler_polynomial_form(q, caches):
    c = caches(q, 8)
    for h in range(1, 9):
        lhs, rhs = gekeler_sides(c, h)
        assert lhs == rhs


@pytest.mark.parametrize("q", [2, 3])
def test_gekeler_rational_form_agrees(q, caches):
    c = caches(q)
    for h in range(1, 5):
        lhs, rhs = gekeler_sides_rational(c, h)
        assert lhs == rhs
        plhs, prhs = gekeler_sides(c, h)
        scale = c.Drat(h) * c.Lrat(h)
        assert RatFn(plhs) == lhs * scale
