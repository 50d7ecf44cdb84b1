"""Exact arithmetic in F_q[x] and F_q(x).

Polynomials wrap FLINT's ``fq_default_poly`` (dense coefficient storage,
asymptotically fast multiplication and gcd); the Carlitz factorials reach
degrees in the hundreds of thousands, which rules out schoolbook kernels.
Rational functions are kept canonical after every operation: monic
denominator, coprime numerator and denominator, zero stored as 0/1.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Union

import flint

from .errors import DivisionByZero, ExprSyntaxError, QthRootNotExist, UnknownSymbol
from .gf import FieldSpec, FqElem

NEG_INF = -math.inf  # deg(0)
INF = math.inf  # v(0)


@lru_cache(maxsize=None)
def _contexts(field: FieldSpec):
    if field.nu == 1:
        fctx = flint.fq_default_ctx(field.p, 1, var="g")
    else:
        mod = flint.fmpz_mod_poly_ctx(field.p)(list(field.modulus))
        fctx = flint.fq_default_ctx(modulus=mod, var="g")
    return fctx, flint.fq_default_poly_ctx(fctx)


def _to_flint_scalar(field: FieldSpec, c):
    fctx = _contexts(field)[0]
    if isinstance(c, FqElem):
        return fctx(list(c.coords)) if field.nu > 1 else fctx(c.coords[0])
    return fctx(int(c) % field.p)


def _from_flint_scalar(field: FieldSpec, c) -> FqElem:
    coords = [int(v) for v in c.to_list()]
    coords += [0] * (field.nu - len(coords))
    return FqElem(field, tuple(coords))


Scalar = Union[int, FqElem]


class Poly:
    """Element of F_q[x]."""

    __slots__ = ("field", "_f")

    def __init__(self, field: FieldSpec, coeffs: Iterable[Scalar] = ()):
        self.field = field
        R = _contexts(field)[1]
        self._f = R([_to_flint_scalar(field, c) for c in coeffs])

    @classmethod
    def _wrap(cls, field: FieldSpec, f) -> "Poly":
        obj = cls.__new__(cls)
        obj.field = field
        obj._f = f
        return obj

    @classmethod
    def x(cls, field: FieldSpec) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def monomial(cls, field: FieldSpec, n: int, c: Scalar = 1) -> "Poly":
        R = _contexts(field)[1]
        return cls._wrap(field, R([_to_flint_scalar(field, c)]).left_shift(n))

    @classmethod
    def constant(cls, field: FieldSpec, c: Scalar) -> "Poly":
        return cls(field, [c])

    # -- inspection ---------------------------------------------------------

    @property
    def coeffs(self) -> list:
        """Dense coefficient list, index = exponent; [] for the zero polynomial."""
        return [_from_flint_scalar(self.field, c) for c in self._f.coeffs()]

    @property
    def deg(self):
        return NEG_INF if self._f.is_zero() else self._f.degree()

    def is_zero(self) -> bool:
        return self._f.is_zero()

    def is_one(self) -> bool:
        return self._f.is_one()

    def is_constant(self) -> bool:
        return self._f.degree() <= 0

    def leading(self) -> FqElem:
        return _from_flint_scalar(self.field, self._f.leading_coefficient())

    def ord_x(self):
        """Exponent of the lowest nonzero term (x-adic order); inf for zero."""
        if self._f.is_zero():
            return INF
        for i, c in enumerate(self._f.coeffs()):
            if not c.is_zero():
                return i
        raise AssertionError  # pragma: no cover

    def __bool__(self):
        return not self._f.is_zero()

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError("polynomials over different fields")
            return other._f
        if isinstance(other, (int, FqElem)):
            return _contexts(self.field)[1]([_to_flint_scalar(self.field, other)])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Poly._wrap(self.field, self._f + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Poly._wrap(self.field, self._f - o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Poly._wrap(self.field, o - self._f)

    def __neg__(self):
        return Poly._wrap(self.field, -self._f)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Poly._wrap(self.field, self._f * o)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial; use RatFn")
        return Poly._wrap(self.field, self._f ** n)

    def __divmod__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("polynomial division by zero")
        a, b = divmod(self._f, o)
        return Poly._wrap(self.field, a), Poly._wrap(self.field, b)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises if a remainder is left."""
        from .errors import NotPolynomial

        quo, rem = divmod(self, other)
        if not rem.is_zero():
            raise NotPolynomial("division is not exact")
        return quo

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd (0 when both operands are zero)."""
        o = self._lift(other)
        if self._f.is_zero() and o.is_zero():
            return Poly._wrap(self.field, o)
        g = self._f.gcd(o)
        return Poly._wrap(self.field, g.monic())

    def monic(self) -> "Poly":
        if self._f.is_zero():
            return self
        return Poly._wrap(self.field, self._f.monic())

    def eval(self, a: Scalar) -> FqElem:
        return _from_flint_scalar(self.field, self._f(_to_flint_scalar(self.field, a)))

    def compose(self, other: "Poly") -> "Poly":
        return Poly._wrap(self.field, self._f.compose(other._f))

    def frobenius(self, k: int = 1) -> "Poly":
        """self^(q^k): F_q coefficients are fixed, so this is x -> x^(q^k)."""
        if k == 0 or self._f.degree() <= 0:
            return self
        return Poly._wrap(self.field, self._f.inflate(self.field.q ** k))

    def is_qth_power(self) -> bool:
        if self._f.degree() <= 0:
            return True
        return self._f.deflation()[1] % self.field.q == 0

    def qth_root(self) -> "Poly":
        if self._f.degree() <= 0:
            return self
        if not self.is_qth_power():
            raise QthRootNotExist(f"{self} is not a q-th power")
        return Poly._wrap(self.field, self._f.deflate(self.field.q))

    # -- comparison / display -----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, FqElem)):
            other = Poly(self.field, [other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self._f == other._f

    def __hash__(self):
        f = self._f
        if f.is_zero():
            return hash((self.field.q, -1))
        n = f.degree()
        probe = (0, 1, n // 3, n // 2, n - 1, n)
        return hash((self.field.q, n) + tuple(str(f[i]) for i in probe if 0 <= i <= n))

    def terms(self) -> int:
        return sum(1 for c in self._f.coeffs() if not c.is_zero())

    def __str__(self):
        return print_poly(self)

    def __repr__(self):
        return f"Poly({self})"


def poly_arith(a: Poly, b, op: str):
    """Dispatch add/sub/mul/divrem/gcd/eval/pow (b is a scalar for eval, an int for pow)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divrem":
        return divmod(a, b)
    if op == "gcd":
        return a.gcd(b)
    if op == "eval":
        return a.eval(b)
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------


class RatFn:
    """Element of F_q(x) in canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _canonical: bool = False):
        if not isinstance(num, Poly):
            raise TypeError("RatFn numerator must be a Poly; use RatFn.const or ratfn()")
        if den is None:
            den = Poly(num.field, [1])
        if _canonical:
            self.num, self.den = num, den
            return
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            self.num, self.den = num, Poly(num.field, [1])
            return
        g = num.gcd(den)
        if not g.is_one():
            num = num // g
            den = den // g
        lc = den.leading()
        if lc != 1:
            inv = lc.inv()
            num = num * inv
            den = den * inv
        self.num, self.den = num, den

    @property
    def field(self) -> FieldSpec:
        return self.num.field

    @classmethod
    def const(cls, field: FieldSpec, c: Scalar) -> "RatFn":
        return cls(Poly(field, [c]))

    @classmethod
    def zero(cls, field: FieldSpec) -> "RatFn":
        return cls(Poly(field, []), Poly(field, [1]), _canonical=True)

    @classmethod
    def one(cls, field: FieldSpec) -> "RatFn":
        return cls(Poly(field, [1]), Poly(field, [1]), _canonical=True)

    @classmethod
    def x(cls, field: FieldSpec) -> "RatFn":
        return cls(Poly.x(field))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self):
        return not self.num.is_zero()

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "RatFn":
        if isinstance(other, RatFn):
            if other.field != self.field:
                raise ValueError("rational functions over different fields")
            return other
        if isinstance(other, Poly):
            return RatFn(other)
        if isinstance(other, (int, FqElem)):
            return RatFn(Poly(self.field, [other]))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return RatFn(self.num + o.num, self.den)
        # Henrici: with g = gcd(b, d), gcd(a d/g + c b/g, b d/g) = gcd(that, g)
        g = self.den.gcd(o.den)
        if g.is_one():
            num = self.num * o.den + o.num * self.den
            if num.is_zero():
                return RatFn.zero(self.field)
            return RatFn(num, self.den * o.den, _canonical=True)
        d1 = self.den // g
        d2 = o.den // g
        num = self.num * d2 + o.num * d1
        if num.is_zero():
            return RatFn.zero(self.field)
        g2 = num.gcd(g)
        if not g2.is_one():
            num = num // g2
            g = g // g2
        return RatFn(num, d1 * d2 * g, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return RatFn.zero(self.field)
        # cross-cancel keeps operands small; the result is then already canonical up to scaling
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        n1, d2 = (self.num, o.den) if g1.is_one() else (self.num // g1, o.den // g1)
        n2, d1 = (o.num, self.den) if g2.is_one() else (o.num // g2, self.den // g2)
        return RatFn(n1 * n2, d1 * d2, _canonical=True)

    __rmul__ = __mul__

    def inv(self) -> "RatFn":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero in F_q(x)")
        lc = self.num.leading().inv()
        return RatFn(self.den * lc, self.num * lc, _canonical=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return RatFn(self.num ** n, self.den ** n, _canonical=True)

    # -- Frobenius and valuation -------------------------------------------

    def frobenius(self, k: int = 1) -> "RatFn":
        """self^(q^k), computed as x -> x^(q^k)."""
        if k == 0:
            return self
        return RatFn(self.num.frobenius(k), self.den.frobenius(k), _canonical=True)

    def is_qth_power(self) -> bool:
        return self.num.is_qth_power() and self.den.is_qth_power()

    def qth_root(self) -> "RatFn":
        if not self.is_qth_power():
            raise QthRootNotExist(f"{self} is not a q-th power in F_q(x)")
        return RatFn(self.num.qth_root(), self.den.qth_root(), _canonical=True)

    def valuation(self):
        """x-adic valuation; |r| = q^(-v). inf for zero."""
        if self.num.is_zero():
            return INF
        return self.num.ord_x() - self.den.ord_x()

    # -- comparison / display -----------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, RatFn) else other
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((hash(self.num), hash(self.den)))

    def __str__(self):
        return print_ratfn(self)

    def __repr__(self):
        return f"RatFn({self})"


def ratfn_arith(a: RatFn, b: RatFn, op: str) -> RatFn:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def ratfn(field: FieldSpec, value) -> RatFn:
    """Coerce an int, FqElem, Poly, RatFn or expression string into F_q(x)."""
    if isinstance(value, RatFn):
        return value
    if isinstance(value, Poly):
        return RatFn(value)
    if isinstance(value, (int, FqElem)):
        return RatFn.const(field, value)
    if isinstance(value, str):
        return parse_ratfn(value, field)
    raise TypeError(f"cannot interpret {value!r} as an element of F_q(x)")


def fraction_sum_equals(terms, target: RatFn) -> bool:
    """Exact test of sum n_i/d_i == target for unreduced (n_i, d_i) Poly pairs.

    Clears all denominators at once, so no gcd is ever taken; this is much
    cheaper than summing canonical RatFn values when the d_i are large and
    share most of their factors.
    """
    terms = [(n, d) for n, d in terms if not n.is_zero()] + [(-target.num, target.den)]
    dens = [d for _, d in terms]
    k = len(dens)
    suffix = [None] * (k + 1)
    suffix[k] = Poly(target.field, [1])
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] * dens[i]
    total = Poly(target.field, [])
    prefix = Poly(target.field, [1])
    for i, (n, d) in enumerate(terms):
        total = total + n * prefix * suffix[i + 1]
        prefix = prefix * d
    return total.is_zero()


def frobenius_power(r: RatFn, k: int) -> RatFn:
    return r.frobenius(k)


def qth_root(r: RatFn) -> RatFn:
    return r.qth_root()


def valuation(r: RatFn):
    return r.valuation()


# ---------------------------------------------------------------------------
# printing and parsing


def _coeff_str(c: FqElem) -> str:
    return str(c)


def print_poly(a: Poly) -> str:
    if a.is_zero():
        return "0"
    parts = []
    coeffs = a.coeffs
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c.is_zero():
            continue
        if e == 0:
            parts.append(_coeff_str(c))
            continue
        mono = "x" if e == 1 else f"x^{e}"
        parts.append(mono if c == 1 else f"{_coeff_str(c)}*{mono}")
    return " + ".join(parts)


def print_ratfn(r: RatFn) -> str:
    num = print_poly(r.num)
    if r.den.is_one():
        return num
    if r.num.terms() > 1:
        num = f"({num})"
    den = print_poly(r.den)
    if r.den.terms() > 1 or (r.den.deg > 0 and r.den.leading() != 1):
        den = f"({den})"
    return f"{num}/{den}"


class _Parser:
    def __init__(self, text: str, field: FieldSpec):
        self.text = text
        self.field = field
        self.pos = 0

    def error(self, msg, pos=None):
        return ExprSyntaxError(msg, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> RatFn:
        if not self.text.strip():
            raise self.error("empty expression")
        r = self.expr()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return r

    def expr(self):
        r = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            r = r + rhs if op == "+" else r - rhs
        return r

    def term(self):
        r = self.unary()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            pos = self.pos
            self.pos += 1
            rhs = self.unary()
            if op == "*":
                r = r * rhs
            else:
                if rhs.is_zero():
                    raise DivisionByZero(f"division by zero at position {pos}")
                r = r / rhs
        return r

    def unary(self):
        if self.peek() == "-":
            self.pos += 1
            return -self.unary()
        if self.peek() == "+":
            self.pos += 1
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                raise self.error("exponent must be a non-negative integer literal")
            base = base ** int(self.text[start:self.pos])
            if self.peek() == "^":
                raise self.error("chained exponents are ambiguous; use parentheses")
        return base

    def integer(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])

    def atom(self):
        ch = self.peek()
        F = self.field
        if ch == "(":
            self.pos += 1
            r = self.expr()
            self.take(")")
            return r
        if ch.isdigit():
            return RatFn.const(F, self.integer())
        if ch == "[":
            start = self.pos
            self.pos += 1
            coords = []
            while True:
                self.skip()
                if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
                    raise self.error("expected a coordinate")
                coords.append(self.integer())
                if self.peek() == ",":
                    self.pos += 1
                    continue
                self.take("]")
                break
            if len(coords) > F.nu:
                raise self.error(f"literal has more than {F.nu} coordinates", start)
            return RatFn.const(F, F(coords))
        if ch.isalpha() or ch == "_":
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start:self.pos]
            if name != "x":
                raise UnknownSymbol(f"unknown symbol {name!r}", start)
            return RatFn.x(F)
        if not ch:
            raise self.error("unexpected end of expression")
        raise self.error(f"unexpected {ch!r}")


def parse_ratfn(text: str, field: FieldSpec) -> RatFn:
    """Parse an expression in x over F_q (see README for the grammar)."""
    return _Parser(text, field).parse()
