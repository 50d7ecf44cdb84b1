"""Truncated Laurent series in K = F_q((x)) with absolute precision, and
evaluation of F_q-linear series sum_j b_j lam^(q^j) at points of K.

A LaurentSeries is x^lead * unit + O(x^prec) with unit(0) != 0, or the
zero-to-precision element (unit = 0, lead = prec). Raising to a q-power
is exact in characteristic p, so Frobenius multiplies the precision.
"""
from __future__ import annotations

from typing import Callable, Optional, Sequence, Union

from .errors import DivergentAtPoint, InsufficientTerms, ZeroToPrecision
from .gf import FieldSpec
from .linpoly import LinPoly
from .polyrat import INF, Poly, RatFn, ratfn


class LaurentSeries:
    __slots__ = ("field", "lead", "unit", "prec")

    def __init__(self, field: FieldSpec, lead: int, unit: Poly, prec: int):
        self.field = field
        self.prec = prec
        if lead >= prec or unit.is_zero():
            self.lead, self.unit = prec, Poly(field, [])
            return
        # strip leading zeros and anything at or beyond the precision
        k = unit.ord_x()
        if k:
            unit = Poly._wrap(field, unit._f.right_shift(k))
            lead += k
        if lead >= prec:
            self.lead, self.unit = prec, Poly(field, [])
            return
        n = prec - lead
        if unit.deg >= n:
            unit = Poly._wrap(field, unit._f.truncate(n))
        self.lead, self.unit = lead, unit

    @classmethod
    def zero(cls, field: FieldSpec, prec: int) -> "LaurentSeries":
        return cls(field, prec, Poly(field, []), prec)

    def is_zero(self) -> bool:
        """Zero to the known precision."""
        return self.unit.is_zero()

    def valuation(self):
        return INF if self.unit.is_zero() else self.lead

    def coefficient(self, n: int):
        if n >= self.prec:
            raise ValueError(f"coefficient x^{n} is beyond the precision O(x^{self.prec})")
        k = n - self.lead
        cs = self.unit.coeffs
        if 0 <= k < len(cs):
            return cs[k]
        return self.field.zero

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, (RatFn, Poly, int)):
            r = ratfn(self.field, other)
            # enough precision that the operand never limits the result
            v = r.valuation()
            return ratfn_to_laurent(r, max(self.prec, 0) + (0 if v == INF else abs(v)) + abs(self.lead) + 1)
        raise TypeError(f"cannot combine LaurentSeries with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        prec = min(self.prec, o.prec)
        if self.is_zero():
            return LaurentSeries(self.field, o.lead, o.unit, prec)
        if o.is_zero():
            return LaurentSeries(self.field, self.lead, self.unit, prec)
        m = min(self.lead, o.lead)
        a = self.unit._f.left_shift(self.lead - m)
        b = o.unit._f.left_shift(o.lead - m)
        return LaurentSeries(self.field, m, Poly._wrap(self.field, a + b), prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.field, self.lead, -self.unit, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        va, vb = self.valuation(), o.valuation()
        if va == INF and vb == INF:
            prec = self.prec + o.prec
        elif va == INF:
            prec = self.prec + vb
        elif vb == INF:
            prec = o.prec + va
        else:
            prec = min(self.prec + vb, o.prec + va)
        if va == INF or vb == INF:
            return LaurentSeries.zero(self.field, prec)
        lead = self.lead + o.lead
        n = prec - lead
        if n <= 0:
            return LaurentSeries.zero(self.field, prec)
        prod = self.unit._f.mul_low(o.unit._f, n)
        return LaurentSeries(self.field, lead, Poly._wrap(self.field, prod), prec)

    __rmul__ = __mul__

    def inv(self) -> "LaurentSeries":
        if self.is_zero():
            raise ZeroToPrecision(f"O(x^{self.prec}) has no inverse")
        n = self.prec - self.lead  # relative precision
        inv = self.unit._f.inverse_series_trunc(n)
        return LaurentSeries(self.field, -self.lead, Poly._wrap(self.field, inv), -self.lead + n)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def frobenius(self, k: int = 1) -> "LaurentSeries":
        """self^(q^k); exact in characteristic p, so precision scales by q^k."""
        if k == 0:
            return self
        Q = self.field.q ** k
        if self.is_zero():
            return LaurentSeries.zero(self.field, self.prec * Q)
        return LaurentSeries(self.field, self.lead * Q, self.unit.frobenius(k), self.prec * Q)

    def truncate(self, prec: int) -> "LaurentSeries":
        return LaurentSeries(self.field, self.lead, self.unit, min(prec, self.prec))

    def agrees(self, other: "LaurentSeries", prec: Optional[int] = None) -> bool:
        """Equal modulo x^prec (default: the common precision)."""
        P = min(self.prec, other.prec) if prec is None else prec
        if P > min(self.prec, other.prec):
            return False
        return (self.truncate(P) - other.truncate(P)).is_zero()

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.prec == other.prec and self.lead == other.lead and self.unit == other.unit)

    def __str__(self):
        if self.is_zero():
            return f"O(x^{self.prec})"
        terms = []
        for i, c in enumerate(self.unit.coeffs):
            if c.is_zero():
                continue
            e = self.lead + i
            mono = "1" if e == 0 else ("x" if e == 1 else f"x^{e}")
            if c == 1:
                terms.append(mono)
            else:
                terms.append(str(c) if e == 0 else f"{c}*{mono}")
        return " + ".join(terms) + f" + O(x^{self.prec})"

    __repr__ = __str__


def ratfn_to_laurent(r, P: int, field: Optional[FieldSpec] = None) -> LaurentSeries:
    """Expansion of r at x = 0, known modulo x^P."""
    if not isinstance(r, RatFn):
        r = ratfn(field, r)
    F = r.field
    if r.is_zero():
        return LaurentSeries.zero(F, P)
    a = r.num.ord_x()
    b = r.den.ord_x()
    lead = a - b
    n = P - lead
    if n <= 0:
        return LaurentSeries.zero(F, P)
    num = r.num._f.right_shift(a)
    den = r.den._f.right_shift(b)
    unit = num.mul_low(den.inverse_series_trunc(n), n)
    return LaurentSeries(F, lead, Poly._wrap(F, unit), P)


def laurent_arith(a: LaurentSeries, b: Optional[LaurentSeries], op: str) -> LaurentSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown operation {op!r}")


CoeffSource = Union[LinPoly, Sequence[RatFn], Callable[[int], RatFn]]


def _coefficient_getter(b: CoeffSource):
    """(getter, finite) for the accepted coefficient sources."""
    from .genfun import FormalLinSeries

    if isinstance(b, LinPoly):
        cs = b.coeffs
        return (lambda j: cs[j] if j < len(cs) else None), True
    if isinstance(b, FormalLinSeries):
        cs = b.coeffs
        return (lambda j: cs[j] if j < len(cs) else None), False
    if callable(b):
        return b, False
    cs = list(b)
    return (lambda j: cs[j] if j < len(cs) else None), False


def eval_lin_series(b: CoeffSource, lam: LaurentSeries, P: int, max_terms: int = 64) -> LaurentSeries:
    """sum_j b_j lam^(q^j) modulo x^P.

    For an infinite series, nonzero terms must have strictly increasing
    valuation; the first term that does not raises DivergentAtPoint.
    Summation stops after three consecutive terms of valuation > P. A LinPoly
    is a finite sum and is added up term by term with no convergence test; a
    list or truncated series that runs out first raises InsufficientTerms.
    """
    get, finite = _coefficient_getter(b)
    F = lam.field
    q = F.q
    v_lam = lam.valuation()
    total = LaurentSeries.zero(F, P)
    if v_lam == INF:
        # lam is zero to its precision: every term is O(x^(prec q^j)) with j = 0 dominating
        return LaurentSeries.zero(F, min(P, lam.prec + _min_val(get)))
    last_w = None
    above = 0
    for j in range(max_terms):
        bj = get(j)
        if bj is None:
            if finite:
                return total
            raise InsufficientTerms(f"coefficient b_{j} needed to reach O(x^{P})")
        bj = ratfn(F, bj)
        if bj.is_zero():
            above += 1
            if above >= 3 and not finite:
                return total
            continue
        w = bj.valuation() + q ** j * v_lam
        if not finite and last_w is not None and w <= last_w:
            raise DivergentAtPoint(j, f"term valuation {w} does not exceed previous {last_w}")
        last_w = w if last_w is None else max(w, last_w)
        if w > P and not finite:
            above += 1
            if above >= 3:
                return total
            continue
        above = 0
        lam_j = lam.frobenius(j)
        term = ratfn_to_laurent(bj, max(P - q ** j * v_lam, bj.valuation() + 1)) * lam_j
        total = total + term
    raise InsufficientTerms(f"no convergence to O(x^{P}) within {max_terms} terms")


def _min_val(get):
    b0 = get(0)
    return 0 if b0 is None or b0.is_zero() else b0.valuation()


def lin_eval_laurent(u: LinPoly, z: LaurentSeries) -> LaurentSeries:
    """Exact evaluation of a polynomial sum_j a_j z^(q^j) at a Laurent point."""
    F = z.field
    total = None
    for j, a in enumerate(u.coeffs):
        if a.is_zero():
            continue
        zj = z.frobenius(j)
        term = ratfn_to_laurent(a, zj.prec + max(0, -a.valuation()) + abs(zj.lead) + 1) * zj
        total = term if total is None else total + term
    return total if total is not None else LaurentSeries.zero(F, z.prec)


def point_evaluation_check(op, seq, lam: LaurentSeries, t_point, P: int):
    """e(lam t) = sum_n Q_n(t) e(lam)^(q^n) modulo x^P, both sides summed independently."""
    from .genfun import exp_series
    from .linpoly import lin_eval
    from .report import CheckReport

    F = op.field
    t_point = ratfn(F, t_point)
    rep = CheckReport(f"e(lam t) = sum Q_n(t) e(lam)^(q^n), t = {t_point}")
    if t_point.valuation() < 0:
        raise ValueError("t must lie in O (v(t) >= 0)")
    b = exp_series(op, op.N)
    lt = lam * ratfn_to_laurent(t_point, P + 1)
    lhs = eval_lin_series(b, lt, P)
    E = eval_lin_series(b, lam, P)
    rhs = LaurentSeries.zero(F, P)
    vE = E.valuation()
    above = 0
    n = 0
    while above < 3:
        if n > seq.N:
            raise InsufficientTerms(f"Q_{n} needed to reach O(x^{P})")
        Qt = lin_eval(seq.Q[n], t_point)
        w = Qt.valuation() + (F.q ** n) * vE
        if w > P:
            above += 1
        else:
            above = 0
            rhs = rhs + ratfn_to_laurent(Qt, P + max(0, -Qt.valuation())) * E.frobenius(n)
        n += 1
    if not lhs.agrees(rhs, P):
        diff = lhs.truncate(P) - rhs.truncate(P)
        return rep.fail(f"sides differ from x^{diff.valuation()} on", {"lhs": str(lhs), "rhs": str(rhs)})
    rep.detail = f"agree modulo x^{P}"
    return rep


eq36_check = point_evaluation_check
