"""Generalized exponential and logarithm of a delta operator, as truncated
F_q-linear series sum_j b_j t^(q^j), and the generating-function identity
e(t log(z)) = sum_n Q_n(t) z^(q^n).

Truncation is by Frobenius level: a series of order M is known modulo
t^(q^(M+1)).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from .carlitz import CarlitzCache, carlitz_module
from .linpoly import BiLinPoly, LinPoly
from .polyrat import RatFn, fraction_sum_equals, ratfn
from .report import HYPOTHESIS_NOT_MET, CheckReport, combine
from .umbral import BasicSequence, DeltaOperator, norm_hypothesis
from .errors import OrderExceeded


@dataclass(frozen=True)
class FormalLinSeries:
    field: object
    coeffs: Tuple[RatFn, ...]
    order: int

    def __post_init__(self):
        cs = tuple(self.coeffs[: self.order + 1])
        cs = cs + (RatFn.zero(self.field),) * (self.order + 1 - len(cs))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_linpoly(cls, u: LinPoly, order: int) -> "FormalLinSeries":
        return cls(u.field, u.coeffs, order)

    @classmethod
    def identity(cls, field, order: int) -> "FormalLinSeries":
        return cls(field, (RatFn.one(field),), order)

    def __getitem__(self, j: int) -> RatFn:
        return self.coeffs[j]

    def __len__(self):
        return self.order + 1

    def replace(self, j: int, value) -> "FormalLinSeries":
        cs = list(self.coeffs)
        cs[j] = ratfn(self.field, value)
        return FormalLinSeries(self.field, tuple(cs), self.order)

    def as_linpoly(self) -> LinPoly:
        return LinPoly(self.field, self.coeffs)

    def first_difference(self, other: "FormalLinSeries"):
        for j in range(min(self.order, other.order) + 1):
            if self.coeffs[j] != other.coeffs[j]:
                return j
        return None


def exp_series(op: DeltaOperator, M: int) -> FormalLinSeries:
    """b_0 = 1, b_(j+1) = b_j^q / (D_(j+1) S_(j+1)); delta e = e."""
    if M > op.N:
        raise OrderExceeded(f"order {M} exceeds operator order {op.N}")
    b = [RatFn.one(op.field)]
    for j in range(M):
        b.append(b[j].frobenius(1) / op.c[j + 1])
    return FormalLinSeries(op.field, tuple(b), M)


def log_series(op: DeltaOperator, M: int) -> FormalLinSeries:
    """Composition inverse of exp_series: beta_l = -sum_(m=1..l) b_m beta_(l-m)^(q^m)."""
    b = exp_series(op, M)
    return series_inverse(b)


def series_inverse(b: FormalLinSeries) -> FormalLinSeries:
    F = b.field
    if not b[0].is_one():
        raise ValueError("compositional inverse needs b_0 = 1")
    beta = [RatFn.one(F)]
    for l in range(1, b.order + 1):
        s = RatFn.zero(F)
        for m in range(1, l + 1):
            if not b[m].is_zero():
                s = s + b[m] * beta[l - m].frobenius(m)
        beta.append(-s)
    return FormalLinSeries(F, tuple(beta), b.order)


def series_compose(u: FormalLinSeries, v: FormalLinSeries) -> FormalLinSeries:
    """(u o v)_m = sum_(j+k=m) u_j v_k^(q^j), to order min(M_u, M_v)."""
    M = min(u.order, v.order)
    F = u.field
    out = [RatFn.zero(F)] * (M + 1)
    for j in range(M + 1):
        a = u[j]
        if a.is_zero():
            continue
        for k in range(M + 1 - j):
            if not v[k].is_zero():
                out[j + k] = out[j + k] + a * v[k].frobenius(j)
    return FormalLinSeries(F, tuple(out), M)


# ---------------------------------------------------------------------------


def compose_first_difference(u: FormalLinSeries, v: FormalLinSeries, w: FormalLinSeries):
    """First level m <= min order where (u o v)_m != w_m, or None.

    Each level is tested with an exact fraction-free zero test instead of
    forming the canonical coefficient, which is what makes order-6 checks
    over large fields affordable.
    """
    M = min(u.order, v.order, w.order)
    for m in range(M + 1):
        terms = []
        for j in range(m + 1):
            a, b = u[j], v[m - j]
            if a.is_zero() or b.is_zero():
                continue
            bj = b.frobenius(j)
            terms.append((a.num * bj.num, a.den * bj.den))
        if not fraction_sum_equals(terms, w[m]):
            return m
    return None


def inverse_check(op: DeltaOperator, M: int, perturb: bool = False) -> CheckReport:
    e = exp_series(op, M)
    lg = log_series(op, M)
    if perturb:
        lg = lg.replace(min(2, M), lg[min(2, M)] + 1)
    ident = FormalLinSeries.identity(op.field, M)
    children = []
    for name, u, v in (("exp o log", e, lg), ("log o exp", lg, e)):
        r = CheckReport(f"{name} = id to order {M}")
        j = compose_first_difference(u, v, ident)
        if j is not None:
            r.fail(f"differs at level {j}", {"level": j, "coeff": series_compose(u, v)[j]})
        children.append(r)
    return combine("composition inverse", children)


def delta_fixed_point_check(op: DeltaOperator, s: FormalLinSeries) -> CheckReport:
    """delta_0 s = tau s coefficientwise to order M, i.e. c_n b_n = b_(n-1)^q."""
    rep = CheckReport(f"fixed point delta e = e to order {s.order}")
    if s.order > op.N:
        raise OrderExceeded("series order exceeds operator order")
    for n in range(1, s.order + 1):
        lhs = op.c[n] * s[n]
        rhs = s[n - 1].frobenius(1)
        if lhs != rhs:
            return rep.fail(f"fails at level {n}", {"level": n, "delta0": lhs, "tau": rhs})
    return rep


def generating_identity_sides(op: DeltaOperator, seq: BasicSequence, M: int):
    """Both sides of e(t log z) = sum_n Q_n(t) z^(q^n) as BiLinPoly in (z, t), z-level <= M.

    Entry (z-level, t-level). Left: b_j t^(q^j) (log z)^(q^j), where
    (log z)^(q^j) = sum_m beta_m^(q^j) z^(q^(m+j)). Right: gamma[n][j].
    """
    if M > seq.N:
        raise OrderExceeded("M exceeds basic-sequence order")
    b = exp_series(op, M)
    beta = log_series(op, M)
    F = op.field
    lhs = BiLinPoly(F)
    for j in range(M + 1):
        if b[j].is_zero():
            continue
        for m in range(M + 1 - j):
            if not beta[m].is_zero():
                lhs.add_to((m + j, j), b[j] * beta[m].frobenius(j))
    rhs = BiLinPoly(F, {(n, j): seq.gamma[n][j] for n in range(M + 1) for j in range(n + 1)})
    return lhs, rhs


def generating_identity_check(op: DeltaOperator, seq: BasicSequence, M: int,
                              perturb: bool = False) -> CheckReport:
    rep = CheckReport(f"generating function identity to order {M}")
    lhs, rhs = generating_identity_sides(op, seq, M)
    if perturb:
        lhs.add_to((M, 0), RatFn.one(op.field))
    diff = lhs.first_difference(rhs)
    if diff is not None:
        key, l, r = diff
        return rep.fail(f"differs at (z-level, t-level) = {key}", {"entry": key, "lhs": l, "rhs": r})
    return rep


def valuation_profile(op: DeltaOperator, M: int, perturb: bool = False) -> CheckReport:
    """-v(b_j) = (q^j - 1)/(q - 1) exactly and -v(beta_j) <= (q^j - 1)/(q - 1), j <= M."""
    why = norm_hypothesis(op)
    if why is not None:
        return CheckReport("valuation profile", status=HYPOTHESIS_NOT_MET, detail=why)
    q = op.q
    b = exp_series(op, M)
    beta = log_series(op, M)
    if perturb:
        b = b.replace(M, b[M] * RatFn.x(op.field))
    children = []
    for j in range(M + 1):
        bound = (q ** j - 1) // (q - 1)
        r = CheckReport(f"j={j}: -v(b_j) = {bound}, -v(beta_j) <= {bound}")
        vb = -b[j].valuation()
        vbeta = -beta[j].valuation() if not beta[j].is_zero() else None
        if vb != bound:
            r.fail(f"-v(b_{j}) = {vb}", {"j": j, "neg_v_b": vb})
        elif vbeta is not None and vbeta > bound:
            r.fail(f"-v(beta_{j}) = {vbeta}", {"j": j, "neg_v_beta": vbeta})
        children.append(r)
    return combine("valuation profile", children)


def functional_equation_check(cache: CarlitzCache, s, M: int) -> CheckReport:
    """C_s(e_C(t)) = e_C(st) as series truncated at level M."""
    from .umbral import SigmaSpec, delta_make

    F = cache.field
    s = ratfn(F, s)
    rep = CheckReport(f"C_s(e_C(t)) = e_C(st), s = {s}")
    op = delta_make(SigmaSpec("carlitz"), M, cache)
    e = exp_series(op, M)
    Cs = FormalLinSeries.from_linpoly(carlitz_module(cache, s), M)
    lhs = series_compose(Cs, e)
    rhs = FormalLinSeries(F, tuple(e[j] * s.frobenius(j) for j in range(M + 1)), M)
    j = lhs.first_difference(rhs)
    if j is not None:
        return rep.fail(f"differs at level {j}", {"level": j})
    return rep


def series_table(op: DeltaOperator, M: int) -> Sequence[dict]:
    b = exp_series(op, M)
    beta = log_series(op, M)
    return [{"j": j, "b": str(b[j]), "beta": str(beta[j])} for j in range(M + 1)]
