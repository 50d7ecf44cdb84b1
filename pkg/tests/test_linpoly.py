import random

import pytest

from fqumbral.carlitz import carlitz_e, k_binomial
from fqumbral.errors import ConstantTermObstruction, QthRootNotExist
from fqumbral.gf import field_from_q
from fqumbral.linpoly import (BiLinPoly, LinPoly, bilin_accumulate, lin_compose, lin_eval, rho,
                              subst_st, tau, tau_power)
from fqumbral.polyrat import RatFn, parse_ratfn
from fqumbral.umbral import random_linpoly

from conftest import SMALL_Q, random_ratfn

F2 = field_from_q(2)


def R(F, s):
    return parse_ratfn(s, F)


def test_compose_examples():
    x = RatFn.x(F2)
    u = LinPoly.monomial(F2, 1)  # z^2
    v = LinPoly(F2, [x])  # x z
    assert lin_compose(u, v) == LinPoly.monomial(F2, 1, x * x)
    ident = LinPoly.identity(F2)
    w = LinPoly(F2, [x, 1, x + 1])
    assert lin_compose(w, ident) == w == lin_compose(ident, w)


def test_rho_examples():
    x = RatFn.x(F2)
    u = LinPoly.monomial(F2, 1)
    assert rho(u, x) == LinPoly.monomial(F2, 1, x * x)
    w = LinPoly(F2, [x, 1, x + 1])
    assert rho(w, 1) == w


def test_tau_examples():
    F = F2
    assert tau(LinPoly.identity(F)) == LinPoly.monomial(F, 1)
    b1 = R(F, "x^2+x")
    u = LinPoly.monomial(F, 1, b1 * b1)
    assert tau_power(u, -1) == LinPoly(F, [b1])
    with pytest.raises(ConstantTermObstruction):
        tau_power(LinPoly(F, [1, 1]), -1)
    with pytest.raises(QthRootNotExist):
        tau_power(LinPoly.monomial(F, 1, RatFn.x(F)), -1)


def test_lin_eval_examples(caches):
    c = caches(2)
    u = LinPoly(F2, [RatFn.x(F2), 1, 1])
    assert lin_eval(u, 0).is_zero()
    assert lin_eval(carlitz_e(c, 2), RatFn.x(F2)).is_zero()


def test_subst_st_examples(caches):
    F = F2
    assert subst_st(LinPoly.identity(F)).entries == {(0, 0): RatFn.one(F)}
    b1 = R(F, "x^2+x")
    S = subst_st(LinPoly(F, [b1, 1]))
    assert S.entries == {(0, 0): b1, (1, 1): RatFn.one(F)}
    e1 = carlitz_e(caches(2), 1)
    assert subst_st(e1).entries == {(0, 0): RatFn.one(F), (1, 1): RatFn.one(F)}


def test_bilin_accumulate_examples(caches):
    F = F2
    t = LinPoly.identity(F)
    assert bilin_accumulate(F, [(1, t, t, 0)]).entries == {(0, 0): RatFn.one(F)}
    c = caches(2)
    terms = [(RatFn(k_binomial(c, 1, n)), carlitz_e(c, n), carlitz_e(c, 1 - n), n) for n in range(2)]
    assert bilin_accumulate(F, terms) == subst_st(carlitz_e(c, 1))


@pytest.mark.parametrize("q", SMALL_Q)
def test_composition_laws(q):
    F = field_from_q(q)
    rng = random.Random(q)
    for _ in range(15):
        u, v, w = (random_linpoly(F, 2, rng) for _ in range(3))
        assert lin_compose(lin_compose(u, v), w) == lin_compose(u, lin_compose(v, w))
        assert lin_compose(u + v, w) == lin_compose(u, w) + lin_compose(v, w)
        r = random_ratfn(F, rng)
        assert lin_eval(lin_compose(u, v), r) == lin_eval(u, lin_eval(v, r))


@pytest.mark.parametrize("q", SMALL_Q)
def test_rho_and_tau_laws(q):
    F = field_from_q(q)
    rng = random.Random(50 + q)
    for _ in range(15):
        u, v = random_linpoly(F, 2, rng), random_linpoly(F, 2, rng)
        lam, mu = random_ratfn(F, rng), random_ratfn(F, rng)
        assert rho(rho(u, lam), mu) == rho(u, lam * mu)
        r = random_ratfn(F, rng)
        assert lin_eval(rho(u, lam), r) == lin_eval(u, lam * r)
        # tau(u o v) = tau(u) o v, and round trip
        assert tau(lin_compose(u, v)) == lin_compose(tau(u), v)
        assert tau_power(tau_power(u, 2), -2) == u
        assert lin_eval(tau(u), r) == lin_eval(u, r) ** q


@pytest.mark.parametrize("q", SMALL_Q)
def test_linearity_of_evaluation(q):
    F = field_from_q(q)
    rng = random.Random(80 + q)
    for _ in range(15):
        u = random_linpoly(F, 2, rng)
        a, b = random_ratfn(F, rng), random_ratfn(F, rng)
        assert lin_eval(u, a + b) == lin_eval(u, a) + lin_eval(u, b)
        for alpha in F.elements():
            assert lin_eval(u, a * RatFn.const(F, alpha)) == lin_eval(u, a) * RatFn.const(F, alpha)


def test_json_round_trip():
    F = field_from_q(4)
    rng = random.Random(3)
    for _ in range(10):
        u = random_linpoly(F, 3, rng)
        assert LinPoly.from_json(F, u.to_json()) == u


def test_bilin_first_difference_and_shape():
    F = F2
    A = BiLinPoly(F, {(0, 0): RatFn.one(F), (2, 1): RatFn.x(F)})
    B = BiLinPoly(F, {(0, 0): RatFn.one(F)})
    assert A.shape() == (3, 2)
    assert A.first_difference(B) == ((2, 1), RatFn.x(F), RatFn.zero(F))
    assert A.truncate(max_j=1) == B
