"""F_q-linear polynomials u(t) = sum_j a_j t^(q^j) with coefficients in F_q(x).

Coefficients are indexed by Frobenius level j rather than by the raw
exponent q^j, so the Frobenius tau is an index shift and nothing in the
operator code depends on q beyond scalar Frobenius twists.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import ConstantTermObstruction
from .gf import FieldSpec
from .polyrat import RatFn, ratfn


class LinPoly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable = ()):
        cs = [ratfn(field, c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs: Tuple[RatFn, ...] = tuple(cs)

    @classmethod
    def monomial(cls, field: FieldSpec, j: int, coeff=1) -> "LinPoly":
        """coeff * t^(q^j)."""
        z = RatFn.zero(field)
        return cls(field, [z] * j + [ratfn(field, coeff)])

    @classmethod
    def identity(cls, field: FieldSpec) -> "LinPoly":
        return cls.monomial(field, 0)

    @classmethod
    def zero(cls, field: FieldSpec) -> "LinPoly":
        return cls(field, [])

    @property
    def level(self) -> int:
        """Top Frobenius level n (deg u = q^n); -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def degree(self):
        return self.field.q ** self.level if self.coeffs else None

    def __getitem__(self, j: int) -> RatFn:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return RatFn.zero(self.field)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    # -- vector space structure --------------------------------------------

    def __add__(self, other: "LinPoly") -> "LinPoly":
        if not isinstance(other, LinPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return LinPoly(self.field, [self[j] + other[j] for j in range(n)])

    def __sub__(self, other: "LinPoly") -> "LinPoly":
        if not isinstance(other, LinPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return LinPoly(self.field, [self[j] - other[j] for j in range(n)])

    def __neg__(self):
        return LinPoly(self.field, [-a for a in self.coeffs])

    def scale(self, c) -> "LinPoly":
        c = ratfn(self.field, c)
        return LinPoly(self.field, [c * a for a in self.coeffs])

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, LinPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, r) -> RatFn:
        return lin_eval(self, r)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[j]
            if a.is_zero():
                continue
            mono = "t" if j == 0 else f"t^{self.field.q ** j}"
            if a.is_one():
                parts.append(mono)
            else:
                parts.append(f"({a})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LinPoly({self})"

    def to_json(self) -> List[dict]:
        return [{"j": j, "coeff": str(a)} for j, a in enumerate(self.coeffs) if not a.is_zero()]

    @classmethod
    def from_json(cls, field: FieldSpec, data: Sequence[dict]) -> "LinPoly":
        if not isinstance(data, list):
            raise ValueError("LinPoly JSON must be an array of {j, coeff} objects")
        top = max((int(d["j"]) for d in data), default=-1)
        coeffs = [RatFn.zero(field)] * (top + 1)
        for d in data:
            j = int(d["j"])
            if j < 0:
                raise ValueError("Frobenius level must be non-negative")
            coeffs[j] = coeffs[j] + ratfn(field, str(d["coeff"]))
        return cls(field, coeffs)


# ---------------------------------------------------------------------------


def lin_compose(u: LinPoly, v: LinPoly) -> LinPoly:
    """(u o v)(t) = u(v(t)); level m collects a_j * b_k^(q^j) over j + k = m."""
    F = u.field
    if u.is_zero() or v.is_zero():
        return LinPoly.zero(F)
    out = [RatFn.zero(F)] * (len(u.coeffs) + len(v.coeffs) - 1)
    for j, a in enumerate(u.coeffs):
        if a.is_zero():
            continue
        for k, b in enumerate(v.coeffs):
            if not b.is_zero():
                out[j + k] = out[j + k] + a * b.frobenius(j)
    return LinPoly(F, out)


def rho(u: LinPoly, lam) -> LinPoly:
    """Multiplicative shift: (rho_lam u)(t) = u(lam t)."""
    lam = ratfn(u.field, lam)
    return LinPoly(u.field, [a * lam.frobenius(j) for j, a in enumerate(u.coeffs)])


def tau_power(u: LinPoly, k: int) -> LinPoly:
    """Frobenius tau^k (u -> u^(q^k)); for k < 0 the inverse, where it exists."""
    F = u.field
    if k >= 0:
        return LinPoly(F, [RatFn.zero(F)] * k + [a.frobenius(k) for a in u.coeffs])
    m = -k
    for j in range(min(m, len(u.coeffs))):
        if not u.coeffs[j].is_zero():
            raise ConstantTermObstruction(j)
    out = []
    for a in u.coeffs[m:]:
        for _ in range(m):
            a = a.qth_root()
        out.append(a)
    return LinPoly(F, out)


def tau(u: LinPoly) -> LinPoly:
    return tau_power(u, 1)


def lin_eval(u: LinPoly, r) -> RatFn:
    """u(r) = sum_j a_j r^(q^j), exactly."""
    r = ratfn(u.field, r)
    total = RatFn.zero(u.field)
    if r.is_zero():
        return total
    for j, a in enumerate(u.coeffs):
        if not a.is_zero():
            total = total + a * r.frobenius(j)
    return total


# ---------------------------------------------------------------------------


class BiLinPoly:
    """sum c[j,k] s^(q^j) t^(q^k); only nonzero entries are stored."""

    __slots__ = ("field", "entries")

    def __init__(self, field: FieldSpec, entries: Dict[Tuple[int, int], RatFn] = None):
        self.field = field
        self.entries: Dict[Tuple[int, int], RatFn] = {}
        for key, c in (entries or {}).items():
            if not c.is_zero():
                self.entries[key] = c

    def __getitem__(self, key: Tuple[int, int]) -> RatFn:
        return self.entries.get(key, RatFn.zero(self.field))

    def add_to(self, key: Tuple[int, int], c: RatFn) -> None:
        v = self.entries.get(key)
        v = c if v is None else v + c
        if v.is_zero():
            self.entries.pop(key, None)
        else:
            self.entries[key] = v

    def shape(self) -> Tuple[int, int]:
        if not self.entries:
            return (0, 0)
        return (max(j for j, _ in self.entries) + 1, max(k for _, k in self.entries) + 1)

    def truncate(self, max_j: int = None, max_k: int = None) -> "BiLinPoly":
        return BiLinPoly(self.field, {
            (j, k): c for (j, k), c in self.entries.items()
            if (max_j is None or j <= max_j) and (max_k is None or k <= max_k)
        })

    def __eq__(self, other):
        if not isinstance(other, BiLinPoly):
            return NotImplemented
        return self.entries == other.entries

    def first_difference(self, other: "BiLinPoly"):
        """Smallest key (j, k) where the two differ, with both entries; None if equal."""
        for key in sorted(set(self.entries) | set(other.entries)):
            if self[key] != other[key]:
                return key, self[key], other[key]
        return None

    def __repr__(self):
        body = ", ".join(f"({j},{k}): {c}" for (j, k), c in sorted(self.entries.items()))
        return f"BiLinPoly({{{body}}})"


def subst_st(u: LinPoly) -> BiLinPoly:
    """u(st): (st)^(q^j) = s^(q^j) t^(q^j), so the result is diagonal."""
    return BiLinPoly(u.field, {(j, j): a for j, a in enumerate(u.coeffs)})


def bilin_accumulate(field: FieldSpec, terms) -> BiLinPoly:
    """sum coeff * in_t(t) * in_s(s)^(q^frob) over (coeff, in_t, in_s, frob) terms."""
    out = BiLinPoly(field)
    for coeff, in_t, in_s, frob in terms:
        if frob < 0:
            raise ValueError("Frobenius exponent must be non-negative")
        coeff = ratfn(field, coeff)
        if coeff.is_zero():
            continue
        for j, b in enumerate(in_s.coeffs):
            if b.is_zero():
                continue
            cb = coeff * b.frobenius(frob)
            for k, a in enumerate(in_t.coeffs):
                if not a.is_zero():
                    out.add_to((j + frob, k), cb * a)
    return out
