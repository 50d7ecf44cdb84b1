"""Galois fields F_q, q = p^nu, in a polynomial basis over F_p.

Elements of a prime field are plain residues; elements of an extension
field are coordinate vectors (constant term first) reduced modulo a fixed
monic irreducible polynomial. The modulus is the smallest monic irreducible
of degree nu when coefficient tuples are compared from the constant term up,
so encodings are reproducible.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Tuple, Union

from .errors import DivisionByZero, FieldTooLarge, NotPrime

MAX_ORDER = 2 ** 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# --- helpers on coefficient tuples over F_p (constant term first) ---------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _polymod_p(a, m, p):
    """Remainder of a modulo the monic polynomial m, coefficients mod p."""
    a = [x % p for x in a]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for k in range(dm + 1):
                a[i - dm + k] = (a[i - dm + k] - c * m[k]) % p
    return _trim(a[:dm]) if len(a) > dm else _trim(a)


def _is_irreducible_p(m, p):
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    d = len(m) - 1
    if d <= 1:
        return d == 1
    for e in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=e):
            f = list(low) + [1]
            if not _polymod_p(m, f, p):
                return False
    return True


def smallest_irreducible(p: int, nu: int) -> Tuple[int, ...]:
    """Smallest monic irreducible of degree nu over F_p, constant term first."""
    for low in itertools.product(range(p), repeat=nu):
        # itertools.product varies the last slot fastest; compare from c0 upward
        m = list(low) + [1]
        if _is_irreducible_p(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    p: int
    nu: int
    q: int
    modulus: Optional[Tuple[int, ...]] = None

    def __repr__(self):
        if self.nu == 1:
            return f"F_{self.q}"
        return f"F_{self.q}[{'+'.join(_mono(i, c) for i, c in reversed(list(enumerate(self.modulus))) if c)}]"

    # element constructors -------------------------------------------------

    def __call__(self, value: Union[int, "FqElem", tuple, list]) -> "FqElem":
        if isinstance(value, FqElem):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FqElem(self, (value % self.p,) + (0,) * (self.nu - 1))
        coords = [int(c) % self.p for c in value]
        if len(coords) > self.nu:
            if self.modulus is None:
                raise ValueError(f"literal has {len(coords)} coordinates; F_{self.q} has 1")
            coords = _polymod_p(coords, self.modulus, self.p)
        coords = coords + [0] * (self.nu - len(coords))
        return FqElem(self, tuple(coords))

    @property
    def zero(self) -> "FqElem":
        return self(0)

    @property
    def one(self) -> "FqElem":
        return self(1)

    def gen(self) -> "FqElem":
        """Class of the polynomial variable: a root of the modulus (or 1 when nu = 1)."""
        if self.nu == 1:
            return self.one
        return self((0, 1))

    def elements(self) -> Iterator["FqElem"]:
        """All q elements, ordered by integer code (c0 the least significant digit)."""
        for code in range(self.q):
            yield self.from_int(code)

    def from_int(self, code: int) -> "FqElem":
        coords = []
        for _ in range(self.nu):
            code, r = divmod(code, self.p)
            coords.append(r)
        return FqElem(self, tuple(coords))


def _mono(i, c):
    s = "" if (c == 1 and i) else str(c)
    if i == 0:
        return s
    return s + ("g" if i == 1 else f"g^{i}")


@lru_cache(maxsize=None)
def field_create(p: int, nu: int = 1) -> FieldSpec:
    """Return the field F_{p^nu}; repeated calls return the same object."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if nu < 1:
        raise ValueError("nu must be a positive integer")
    q = p ** nu
    if q > MAX_ORDER:
        raise FieldTooLarge(f"q = {q} exceeds {MAX_ORDER}")
    modulus = smallest_irreducible(p, nu) if nu > 1 else None
    return FieldSpec(p, nu, q, modulus)


def field_from_q(q: int) -> FieldSpec:
    """Field of order q, given as a prime power."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    nu = 0
    n = q
    while n % p == 0:
        n //= p
        nu += 1
    if n != 1:
        raise NotPrime(f"{q} is not a prime power")
    return field_create(p, nu)


@dataclass(frozen=True)
class FqElem:
    field: FieldSpec
    coords: Tuple[int, ...]

    # coercion ---------------------------------------------------------------

    def _coerce(self, other) -> "FqElem":
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise ValueError("operands belong to different fields")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def to_int(self) -> int:
        code = 0
        for c in reversed(self.coords):
            code = code * self.field.p + c
        return code

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple((-a) % p for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        p = F.p
        if F.nu == 1:
            return FqElem(F, ((self.coords[0] * other.coords[0]) % p,))
        prod = [0] * (2 * F.nu - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    prod[i + j] += a * b
        red = _polymod_p(prod, F.modulus, p)
        return FqElem(F, tuple(red) + (0,) * (F.nu - len(red)))

    __rmul__ = __mul__

    def inv(self) -> "FqElem":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in F_q")
        if self.field.nu == 1:
            return FqElem(self.field, (pow(self.coords[0], -1, self.field.p),))
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field.q, self.coords))

    def __str__(self):
        if self.field.nu == 1:
            return str(self.coords[0])
        return "[" + ",".join(str(c) for c in self.coords) + "]"

    __repr__ = __str__


def fq_arith(a: FqElem, b: FqElem, op: str) -> FqElem:
    """Dispatch one of add/sub/mul/div/pow/inv; for pow, b is an int exponent."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** b
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown operation {op!r}")
