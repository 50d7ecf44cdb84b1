"""Carlitz brackets, factorials, K-binomial coefficients, Carlitz polynomials
and the Carlitz module C_s.

Sign convention: e_i(t) is the product of (t - m) over all m in F_q[x] with
deg m < i, expanded as sum_j (-1)^(i-j) D_i / (D_j L_(i-j)^(q^j)) t^(q^j).
"""
from __future__ import annotations

import itertools
from typing import List

from .errors import EnumerationTooLarge, NotPolynomial
from .gf import FieldSpec
from .linpoly import LinPoly, lin_eval
from .polyrat import Poly, RatFn


class CarlitzCache:
    """Brackets [i] = x^(q^i) - x and the factorials D_i, L_i for i <= N.

    D_i = [i] D_(i-1)^q and L_i = [i] L_(i-1) are built by recurrence; the
    closed-form valuations v(D_i) = (q^i - 1)/(q - 1) and v(L_i) = i are
    asserted once, on construction.
    """

    def __init__(self, field: FieldSpec, N: int):
        if N < 0:
            raise ValueError("N must be non-negative")
        self.field = field
        self.N = N
        q = field.q
        x = Poly.x(field)
        one = Poly(field, [1])
        self.brackets: List[Poly] = [Poly(field, [])]  # index 0 unused
        self.D: List[Poly] = [one]
        self.L: List[Poly] = [one]
        for i in range(1, N + 1):
            b = Poly.monomial(field, q ** i) - x
            self.brackets.append(b)
            self.D.append(b * self.D[-1].frobenius(1))
            self.L.append(b * self.L[-1])
        for i in range(N + 1):
            if self.D[i].ord_x() != (q ** i - 1) // (q - 1) or self.L[i].ord_x() != i:
                raise AssertionError(f"factorial valuation check failed at i={i}")
        self._e = {}

    @property
    def q(self) -> int:
        return self.field.q

    def bracket(self, i: int) -> Poly:
        if not 1 <= i <= self.N:
            raise IndexError(f"bracket index {i} outside 1..{self.N}")
        return self.brackets[i]

    def _check(self, i):
        if not 0 <= i <= self.N:
            raise IndexError(f"index {i} outside 0..{self.N}")

    def Drat(self, i: int) -> RatFn:
        self._check(i)
        return RatFn(self.D[i])

    def Lrat(self, i: int) -> RatFn:
        self._check(i)
        return RatFn(self.L[i])


def k_binomial(c: CarlitzCache, i: int, n: int) -> Poly:
    """D_i / (D_n D_(i-n)^(q^n)); the division is exact."""
    if not 0 <= n <= i <= c.N:
        raise IndexError("need 0 <= n <= i <= N")
    den = c.D[n] * c.D[i - n].frobenius(n)
    quo, rem = divmod(c.D[i], den)
    if not rem.is_zero():
        raise NotPolynomial(f"K-binomial ({i},{n}) is not a polynomial")
    return quo


def carlitz_e(c: CarlitzCache, i: int) -> LinPoly:
    """Carlitz polynomial e_i from its coefficient formula."""
    c._check(i)
    if i in c._e:
        return c._e[i]
    coeffs = []
    for j in range(i + 1):
        den = c.D[j] * c.L[i - j].frobenius(j)
        quo, rem = divmod(c.D[i], den)
        if not rem.is_zero():
            raise NotPolynomial(f"coefficient {j} of e_{i} is not a polynomial")
        if (i - j) % 2:
            quo = -quo
        coeffs.append(RatFn(quo))
    e = LinPoly(c.field, coeffs)
    c._e[i] = e
    return e


def carlitz_e_oracle(c: CarlitzCache, i: int) -> LinPoly:
    """e_i as the product of (t - m) over deg m < i, expanded by brute force.

    Enumerates all q^i polynomials m (lexicographic in the coefficient
    tuple) and multiplies out a dense polynomial in t over F_q[x]; the result
    is then checked to be F_q-linear.
    """
    F = c.field
    q = F.q
    if i > 4 or q ** i > 256:
        raise EnumerationTooLarge(f"q^i = {q ** i} polynomials exceeds the bound 256 (i <= 4)")
    if i == 0:
        return LinPoly.identity(F)
    elems = list(F.elements())
    prod = [Poly(F, [1])]  # coefficients of t^0, t^1, ...
    for tup in itertools.product(elems, repeat=i):
        m = Poly(F, tup)
        nxt = [Poly(F, [])] * (len(prod) + 1)
        for k, a in enumerate(prod):
            nxt[k + 1] = nxt[k + 1] + a
            nxt[k] = nxt[k] - m * a
        prod = nxt
    coeffs = []
    j = 0
    for k, a in enumerate(prod):
        if k == q ** j:
            coeffs.append(RatFn(a))
            j += 1
        elif not a.is_zero():
            raise AssertionError(f"product has a non-F_q-linear term t^{k}")
    return LinPoly(F, coeffs)


def carlitz_f(c: CarlitzCache, i: int) -> LinPoly:
    """Normalized Carlitz polynomial f_i = e_i / D_i."""
    e = carlitz_e(c, i)
    return e.scale(c.Drat(i).inv())


def carlitz_module(c: CarlitzCache, s) -> LinPoly:
    """C_s(z) = sum_(i <= deg s) f_i(s) z^(q^i), s in F_q[x]."""
    F = c.field
    if isinstance(s, RatFn):
        if not s.is_polynomial():
            raise ValueError("C_s needs s in F_q[x]")
        s = s.num
    if s.is_zero():
        return LinPoly.zero(F)
    d = s.deg
    if d > c.N:
        raise IndexError(f"deg s = {d} exceeds cache size N = {c.N}")
    coeffs = []
    for i in range(d + 1):
        v = lin_eval(carlitz_f(c, i), RatFn(s))
        if not v.is_polynomial():
            raise NotPolynomial(f"f_{i}(s) is not a polynomial")
        coeffs.append(v)
    return LinPoly(F, coeffs)


def gekeler_sides(c: CarlitzCache, h: int):
    """Both sides of sum_(j<h) (-1)^j / (L_j D_(h-j)^(q^j)) = (-1)^(h+1) / L_h.

    Multiplied through by D_h L_h, every quantity is a polynomial:
    D_h / D_(h-j)^(q^j) = prod_(h-j < k <= h) [k]^(q^(h-k)) and
    L_h / L_j = prod_(j < k <= h) [k]. Both cofactors are built as products.
    """
    if not 1 <= h <= c.N:
        raise IndexError("need 1 <= h <= N")
    F = c.field
    one = Poly(F, [1])
    d_co = [one]  # d_co[j] = D_h / D_(h-j)^(q^j)
    for j in range(1, h):
        d_co.append(d_co[-1] * c.brackets[h - j + 1].frobenius(j - 1))
    l_co = [one] * (h + 1)  # l_co[j] = L_h / L_j
    for j in range(h - 1, -1, -1):
        l_co[j] = l_co[j + 1] * c.brackets[j + 1]
    lhs = Poly(F, [])
    for j in range(h):
        a = l_co[j] * d_co[j]
        lhs = lhs - a if j % 2 else lhs + a
    rhs = c.D[h] if (h + 1) % 2 == 0 else -c.D[h]
    return lhs, rhs


def gekeler_sides_rational(c: CarlitzCache, h: int):
    """The same identity evaluated literally in F_q(x) (small h only)."""
    lhs = RatFn.zero(c.field)
    for j in range(h):
        term = (c.Lrat(j) * c.Drat(h - j).frobenius(j)).inv()
        lhs = lhs - term if j % 2 else lhs + term
    rhs = c.Lrat(h).inv()
    return lhs, (rhs if (h + 1) % 2 == 0 else -rhs)
