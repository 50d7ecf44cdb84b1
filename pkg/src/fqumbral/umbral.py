"""Delta operators, basic sequences and expansions in them.

A delta operator is given by a sigma sequence, delta_0 = sum_l sigma_l Delta^(l)
with Delta the Carlitz difference operator. Everything acts diagonally on the
monomials t^(q^n), so the operator is stored as its eigenvalues

    c_n = D_n S_n,   S_n = sum_(l=1..n) sigma_l / D_(n-l)^(q^l),

and the iterated operators delta_0^(l) = tau^l delta^l as the products
E[l][n] = prod_(k<l) c_(n-k)^(q^k). None of this needs q-th roots, so it
stays inside F_q(x); only delta itself (tau^-1 delta_0) can leave it.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .carlitz import CarlitzCache, carlitz_f, k_binomial
from .errors import HypothesisNotMet, NotDeltaOperator, OrderExceeded
from .linpoly import (LinPoly, bilin_accumulate, lin_eval, rho,
                      subst_st, tau_power)
from .polyrat import INF, RatFn, ratfn
from .report import HYPOTHESIS_NOT_MET, CheckReport, combine

PRESETS = ("carlitz", "laguerre", "example2")


@dataclass(frozen=True)
class SigmaSpec:
    """A preset name or an explicit list sigma_1..sigma_L (zero beyond L)."""

    kind: str
    values: Tuple[RatFn, ...] = ()

    def __post_init__(self):
        if self.kind not in PRESETS + ("explicit",):
            raise ValueError(f"unknown sigma preset {self.kind!r}")

    @classmethod
    def preset(cls, name: str) -> "SigmaSpec":
        return cls(name)

    @classmethod
    def explicit(cls, field, values: Sequence) -> "SigmaSpec":
        return cls("explicit", tuple(ratfn(field, v) for v in values))

    def sigma(self, l: int, cache: CarlitzCache) -> RatFn:
        F = cache.field
        if l < 1:
            raise ValueError("sigma is indexed from 1")
        if self.kind == "carlitz":
            return RatFn.one(F) if l == 1 else RatFn.zero(F)
        if self.kind == "laguerre":
            return RatFn.one(F)
        if self.kind == "example2":
            s = cache.Lrat(l).inv()
            return s if l % 2 else -s
        if l <= len(self.values):
            return self.values[l - 1]
        return RatFn.zero(F)

    def __str__(self):
        if self.kind != "explicit":
            return self.kind
        return "[" + ", ".join(str(v) for v in self.values) + "]"


class DeltaOperator:
    """delta = tau^-1 delta_0 with delta_0(t^(q^n)) = c_n t^(q^n), tabulated up to order N."""

    def __init__(self, cache: CarlitzCache, N: int, c: Sequence[RatFn],
                 sigma: Optional[SigmaSpec] = None):
        self.cache = cache
        self.field = cache.field
        self.N = N
        self.sigma = sigma
        self.c: List[RatFn] = list(c)  # c[0] = 0
        self.S: List[Optional[RatFn]] = [None] + [
            self.c[n] / cache.Drat(n) for n in range(1, N + 1)
        ]
        q_frob = [[None] * (N + 1) for _ in range(N + 1)]  # c_n^(q^k), memoized
        for n in range(N + 1):
            q_frob[0][n] = self.c[n]
        E = [[RatFn.zero(self.field)] * (N + 1) for _ in range(N + 1)]
        for n in range(N + 1):
            E[0][n] = RatFn.one(self.field)
        for l in range(1, N + 1):
            for n in range(l, N + 1):
                k = l - 1
                m = n - k
                if q_frob[k][m] is None:
                    q_frob[k][m] = self.c[m].frobenius(k)
                E[l][n] = E[l - 1][n] * q_frob[k][m]
        self.E = E

    @classmethod
    def from_eigenvalues(cls, cache: CarlitzCache, c: Sequence) -> "DeltaOperator":
        """Build from c_0 = 0, c_1, ..., c_N directly (no sigma sequence)."""
        F = cache.field
        c = [ratfn(F, v) for v in c]
        if not c[0].is_zero():
            raise ValueError("delta_0(t) must vanish")
        for n in range(1, len(c)):
            if c[n].is_zero():
                raise NotDeltaOperator(n)
        return cls(cache, len(c) - 1, c)

    @property
    def q(self) -> int:
        return self.field.q

    def sigma_values(self) -> List[RatFn]:
        """sigma_1..sigma_N; derived from the eigenvalues when no sigma sequence was given."""
        if self.sigma is not None:
            return [self.sigma.sigma(l, self.cache) for l in range(1, self.N + 1)]
        carl = delta_make(SigmaSpec("carlitz"), self.N, self.cache)
        seq = basic_sequence(carl, self.N)
        T = InvariantOperator(tuple(self.c))
        return invariant_expand(carl, seq, T)[1:]

    def _check_level(self, u: LinPoly):
        if u.level > self.N:
            raise OrderExceeded(f"deg u = q^{u.level} exceeds operator order q^{self.N}")

    def __repr__(self):
        return f"DeltaOperator(q={self.q}, sigma={self.sigma}, N={self.N})"


def delta_make(sigma: SigmaSpec, N: int, cache: CarlitzCache) -> DeltaOperator:
    """Tabulate S_n, c_n = D_n S_n and E[l][n] for n <= N.

    Raises NotDeltaOperator(n) for the first n with S_n = 0.
    """
    if N > cache.N:
        raise OrderExceeded(f"N = {N} exceeds Carlitz cache size {cache.N}")
    F = cache.field
    sig = [None] + [sigma.sigma(l, cache) for l in range(1, N + 1)]
    c = [RatFn.zero(F)]
    for n in range(1, N + 1):
        S = RatFn.zero(F)
        for l in range(1, n + 1):
            if not sig[l].is_zero():
                S = S + sig[l] / cache.Drat(n - l).frobenius(l)
        if S.is_zero():
            raise NotDeltaOperator(n)
        c.append(cache.Drat(n) * S)
    return DeltaOperator(cache, N, c, sigma)


def delta0_apply(op: DeltaOperator, u: LinPoly) -> LinPoly:
    op._check_level(u)
    return LinPoly(u.field, [op.c[n] * a for n, a in enumerate(u.coeffs)])


def delta_apply(op: DeltaOperator, u: LinPoly) -> LinPoly:
    """tau^-1 delta_0 u; raises QthRootNotExist when the result leaves F_q(x)."""
    return tau_power(delta0_apply(op, u), -1)


def delta0_iter(op: DeltaOperator, l: int, u: LinPoly) -> LinPoly:
    """delta_0^(l) = tau^l delta^l, acting by E[l][n] on t^(q^n)."""
    if not 0 <= l <= op.N:
        raise OrderExceeded(f"l = {l} outside 0..{op.N}")
    op._check_level(u)
    return LinPoly(u.field, [op.E[l][n] * a for n, a in enumerate(u.coeffs)])


def delta0_recursive(cache: CarlitzCache, l: int, u: LinPoly) -> LinPoly:
    """Delta^(l) by the recursion Delta^(k) u = (Delta^(k-1) u)(xt) - x^(q^(k-1)) (Delta^(k-1) u)(t).

    The subtracted term uses Delta^(k-1) u, not u: this is the reading under
    which Delta^(l)(t^(q^n)) = D_n / D_(n-l)^(q^l) t^(q^n).
    """
    if not 0 <= l <= cache.N:
        raise OrderExceeded(f"l = {l} outside 0..{cache.N}")
    F = cache.field
    x = RatFn.x(F)
    v = u
    for k in range(1, l + 1):
        v = rho(v, x) - v.scale(x.frobenius(k - 1))
    return v


# ---------------------------------------------------------------------------


class BasicSequence:
    """Normalized basic sequence Q_n = sum_j gamma[n][j] t^(q^j), n <= N."""

    def __init__(self, op: DeltaOperator, gamma: List[List[RatFn]]):
        self.op = op
        self.field = op.field
        self.gamma = gamma
        self.N = len(gamma) - 1
        self.Q: List[LinPoly] = [LinPoly(self.field, row) for row in gamma]

    def P(self, n: int) -> LinPoly:
        """P_n = D_n Q_n."""
        return self.Q[n].scale(self.op.cache.Drat(n))

    def __len__(self):
        return len(self.Q)


def basic_sequence(op: DeltaOperator, N: Optional[int] = None) -> BasicSequence:
    """Coefficient recurrence gamma[n][i+1] = gamma[n-1][i]^q / c_(i+1), Q_n(1) = 0."""
    N = op.N if N is None else N
    if N > op.N:
        raise OrderExceeded(f"N = {N} exceeds operator order {op.N}")
    F = op.field
    gamma = [[RatFn.one(F)]]
    for n in range(1, N + 1):
        prev = gamma[-1]
        row = [None] + [prev[i].frobenius(1) / op.c[i + 1] for i in range(n)]
        g0 = RatFn.zero(F)
        for j in range(1, n + 1):
            g0 = g0 - row[j]
        row[0] = g0
        gamma.append(row)
    return BasicSequence(op, gamma)


def q_triangular_solve(seq: BasicSequence, f: LinPoly) -> List[RatFn]:
    """Coordinates of f in {Q_l} by back substitution (Q_l has top level l)."""
    if f.level > seq.N:
        raise OrderExceeded(f"deg f = q^{f.level} exceeds sequence order q^{seq.N}")
    F = f.field
    rest = list(f.coeffs)
    n = len(rest) - 1
    psi = [RatFn.zero(F)] * (n + 1)
    for l in range(n, -1, -1):
        if rest[l].is_zero():
            continue
        a = rest[l] / seq.gamma[l][l]
        psi[l] = a
        for j in range(l + 1):
            rest[j] = rest[j] - a * seq.gamma[l][j]
    return psi


def taylor_expand(op: DeltaOperator, seq: BasicSequence, f: LinPoly) -> List[RatFn]:
    """psi_l = (delta_0^(l) f)(1) = sum_j a_j E[l][j], so that f = sum_l psi_l Q_l."""
    op._check_level(f)
    if f.level > seq.N:
        raise OrderExceeded(f"deg f = q^{f.level} exceeds sequence order q^{seq.N}")
    F = f.field
    n = f.level
    psi = []
    for l in range(n + 1):
        s = RatFn.zero(F)
        for j in range(l, n + 1):
            a = f.coeffs[j]
            if not a.is_zero():
                s = s + a * op.E[l][j]
        psi.append(s)
    return psi


def combine_sequence(seq: BasicSequence, coeffs: Sequence[RatFn]) -> LinPoly:
    """sum_l coeffs[l] Q_l."""
    out = LinPoly.zero(seq.field)
    for l, a in enumerate(coeffs):
        if not a.is_zero():
            out = out + seq.Q[l].scale(a)
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantOperator:
    """Diagonal operator t^(q^n) -> cprime[n] t^(q^n), n <= len(cprime) - 1."""

    cprime: Tuple[RatFn, ...]

    @classmethod
    def identity(cls, field, N: int) -> "InvariantOperator":
        return cls(tuple(RatFn.one(field) for _ in range(N + 1)))

    @classmethod
    def of_delta0(cls, op: DeltaOperator) -> "InvariantOperator":
        return cls(tuple(op.c))

    def apply(self, u: LinPoly) -> LinPoly:
        if u.level >= len(self.cprime):
            raise OrderExceeded("operator not given to this order")
        return LinPoly(u.field, [self.cprime[n] * a for n, a in enumerate(u.coeffs)])


def invariant_expand(op: DeltaOperator, seq: BasicSequence, T: InvariantOperator) -> List[RatFn]:
    """Coefficients sigma'_l = (T P_l)(1) / D_l = (T Q_l)(1) with T = sum sigma'_l delta_0^(l)."""
    N = min(seq.N, len(T.cprime) - 1)
    return [lin_eval(T.apply(seq.Q[l]), 1) for l in range(N + 1)]


def invariant_reconstruct(op: DeltaOperator, sig: Sequence[RatFn]) -> List[RatFn]:
    """Eigenvalues of sum_l sig[l] delta_0^(l): c'_n = sum_(l<=n) sig[l] E[l][n]."""
    F = op.field
    out = []
    for n in range(len(sig)):
        s = RatFn.zero(F)
        for l in range(n + 1):
            if not sig[l].is_zero():
                s = s + sig[l] * op.E[l][n]
        out.append(s)
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CarlitzExpansion:
    """u = sum_i a[i] f_i in the normalized Carlitz basis."""

    a: Tuple[RatFn, ...]

    def norm_exponent(self):
        """e with sup-norm q^e; -inf for the zero function."""
        vals = [-v.valuation() for v in self.a if not v.is_zero()]
        return max(vals) if vals else -INF

    def reconstruct(self, cache: CarlitzCache) -> LinPoly:
        out = LinPoly.zero(cache.field)
        for i, a in enumerate(self.a):
            if not a.is_zero():
                out = out + carlitz_f(cache, i).scale(a)
        return out


def carlitz_expand(cache: CarlitzCache, u: LinPoly) -> CarlitzExpansion:
    """Back substitution against f_i (top level i, leading coefficient 1/D_i)."""
    if u.level > cache.N:
        raise OrderExceeded(f"deg u = q^{u.level} exceeds cache size q^{cache.N}")
    F = u.field
    rest = list(u.coeffs)
    n = len(rest) - 1
    a = [RatFn.zero(F)] * (n + 1)
    for i in range(n, -1, -1):
        if rest[i].is_zero():
            continue
        ai = rest[i] * cache.Drat(i)
        a[i] = ai
        fi = carlitz_f(cache, i)
        for j in range(i):
            if not fi.coeffs[j].is_zero():
                rest[j] = rest[j] - ai * fi.coeffs[j]
        rest[i] = RatFn.zero(F)
    return CarlitzExpansion(tuple(a))


def sup_norm(cache: CarlitzCache, u: LinPoly):
    """Exponent e with ||u|| = q^e (orthonormality of the f_i)."""
    return carlitz_expand(cache, u).norm_exponent()


# ---------------------------------------------------------------------------
# identity checks


def k_binomial_check(seq: BasicSequence, i: int, perturb: bool = False) -> CheckReport:
    """P_i(st) = sum_n binom(i,n) P_n(t) P_(i-n)(s)^(q^n) and its normalized form in Q."""
    cache = seq.op.cache
    F = seq.field
    rep = CheckReport(f"K-binomial i={i}")
    lhs = subst_st(seq.P(i))
    terms = []
    for n in range(i + 1):
        b = RatFn(k_binomial(cache, i, n))
        if perturb and n == min(1, i):
            b = b + 1
        terms.append((b, seq.P(n), seq.P(i - n), n))
    rhs = bilin_accumulate(F, terms)
    diff = lhs.first_difference(rhs)
    if diff is not None:
        key, l, r = diff
        return rep.fail(f"P form differs at entry (s-level, t-level) = {key}",
                        {"entry": key, "lhs": l, "rhs": r})
    lhs_q = subst_st(seq.Q[i])
    rhs_q = bilin_accumulate(F, [(1, seq.Q[n], seq.Q[i - n], n) for n in range(i + 1)])
    diff = lhs_q.first_difference(rhs_q)
    if diff is not None:
        key, l, r = diff
        return rep.fail(f"Q form differs at entry {key}", {"entry": key, "lhs": l, "rhs": r})
    return rep


def iterate_identity_check(op: DeltaOperator, seq: BasicSequence, l: int, j: int, perturb: bool = False) -> CheckReport:
    """delta_0^(l) P_j = D_j / D_(j-l)^(q^l) * P_(j-l)^(q^l)."""
    cache = op.cache
    rep = CheckReport(f"iterate identity l={l} j={j}")
    lhs = delta0_iter(op, l, seq.P(j))
    factor = cache.Drat(j) / cache.Drat(j - l).frobenius(l)
    if perturb:
        factor = factor + 1
    rhs = tau_power(seq.P(j - l), l).scale(factor)
    if lhs != rhs:
        k = next(k for k in range(max(len(lhs), len(rhs))) if lhs[k] != rhs[k])
        return rep.fail(f"differs at level {k}", {"level": k, "lhs": lhs[k], "rhs": rhs[k]})
    return rep


def taylor_check(op: DeltaOperator, seq: BasicSequence, f: LinPoly, perturb: bool = False) -> CheckReport:
    """Operator-route psi reconstructs f and equals the triangular-solve coordinates."""
    rep = CheckReport(f"Taylor expansion (level {f.level})")
    psi = taylor_expand(op, seq, f)
    if perturb and psi:
        psi[0] = psi[0] + 1
    back = combine_sequence(seq, psi)
    if back != f:
        k = next(k for k in range(max(len(back), len(f))) if back[k] != f[k])
        return rep.fail(f"reconstruction differs at level {k}", {"level": k, "got": back[k], "want": f[k]})
    oracle = q_triangular_solve(seq, f)
    psi = psi + [RatFn.zero(f.field)] * (len(oracle) - len(psi))
    oracle = oracle + [RatFn.zero(f.field)] * (len(psi) - len(oracle))
    for l, (a, b) in enumerate(zip(psi, oracle)):
        if a != b:
            return rep.fail(f"psi_{l} differs from triangular solve", {"l": l, "operator": a, "solve": b})
    return rep


def taylor_bilinear_check(op: DeltaOperator, seq: BasicSequence, f: LinPoly) -> CheckReport:
    """f(st) = sum_l (delta_0^(l) f)(s) / D_l * P_l(t) as a two-variable identity."""
    rep = CheckReport(f"two-variable Taylor formula (level {f.level})")
    cache = op.cache
    lhs = subst_st(f)
    terms = [(cache.Drat(l).inv(), seq.P(l), delta0_iter(op, l, f), 0) for l in range(f.level + 1)]
    rhs = bilin_accumulate(f.field, terms)
    diff = lhs.first_difference(rhs)
    if diff is not None:
        return rep.fail(f"differs at entry {diff[0]}", {"entry": diff[0], "lhs": diff[1], "rhs": diff[2]})
    return rep


def delta0_from_sequence(seq: BasicSequence) -> List[RatFn]:
    """Eigenvalues of the delta_0 defined on the sequence by delta_0 P_n = [n] P_(n-1)^q.

    On the normalized sequence this reads delta_0 Q_n = Q_(n-1)^q. The action on
    each monomial is computed through the Q-coordinates and must come out diagonal.
    """
    F = seq.field
    c = [RatFn.zero(F)]
    for n in range(1, seq.N + 1):
        coords = q_triangular_solve(seq, LinPoly.monomial(F, n))
        img = LinPoly.zero(F)
        for m in range(1, len(coords)):
            if not coords[m].is_zero():
                img = img + tau_power(seq.Q[m - 1], 1).scale(coords[m])
        if any(not img[k].is_zero() for k in range(len(img)) if k != n):
            raise AssertionError(f"delta_0 from the sequence is not diagonal at n={n}")
        c.append(img[n])
    return c


def uniqueness_check(seq: BasicSequence) -> CheckReport:
    """Regenerate the sequence from the delta_0 it defines; the gamma table must repeat."""
    rep = CheckReport("uniqueness of the basic sequence")
    c = delta0_from_sequence(seq)
    op2 = DeltaOperator.from_eigenvalues(seq.op.cache, c)
    seq2 = basic_sequence(op2, seq.N)
    for n in range(seq.N + 1):
        for j in range(n + 1):
            if seq.gamma[n][j] != seq2.gamma[n][j]:
                return rep.fail(f"gamma[{n}][{j}] differs", {"n": n, "j": j})
    return rep


def norm_hypothesis(op: DeltaOperator) -> Optional[str]:
    """None when |sigma_1| = 1 and |sigma_l| <= 1 for l <= N, else the reason."""
    sig = op.sigma_values()
    if not sig:
        return None
    if sig[0].valuation() != 0:
        return f"|sigma_1| = q^{-sig[0].valuation()} != 1"
    for l, s in enumerate(sig[1:], start=2):
        if s.valuation() < 0:
            return f"|sigma_{l}| = q^{-s.valuation()} > 1"
    return None


def random_linpoly(field, level: int, rng: random.Random, max_deg: int = 3, max_pole: int = 3) -> LinPoly:
    """Random F_q-linear polynomial of top level <= level; coefficients may have poles at x = 0."""
    from .polyrat import Poly

    elems = list(field.elements())
    coeffs = []
    for _ in range(level + 1):
        if rng.random() < 0.2:
            coeffs.append(RatFn.zero(field))
            continue
        num = Poly(field, [rng.choice(elems) for _ in range(rng.randint(1, max_deg + 1))])
        den = Poly.monomial(field, rng.randint(0, max_pole))
        if rng.random() < 0.3:
            den = den * Poly(field, [1] + [rng.choice(elems) for _ in range(rng.randint(1, 2))])
        coeffs.append(RatFn(num, den) if not num.is_zero() else RatFn.zero(field))
    return LinPoly(field, coeffs)


def orthonormal_check(op: DeltaOperator, seq: BasicSequence, N: Optional[int] = None,
                      samples: int = 50, seed: int = 0, perturb: bool = False) -> CheckReport:
    """Norm statement: under the sigma hypotheses every ||Q_n|| = q^0 and ||f|| = max |psi_n|."""
    cache = op.cache
    N = seq.N if N is None else N
    why = norm_hypothesis(op)
    if why is not None:
        return CheckReport("orthonormal basis", status=HYPOTHESIS_NOT_MET, detail=why)
    children = []
    for n in range(N + 1):
        Q = seq.Q[n]
        if perturb and n == N:
            Q = Q + LinPoly.monomial(op.field, 0, RatFn.x(op.field).inv())
        exp = carlitz_expand(cache, Q)
        r = CheckReport(f"||Q_{n}|| = 1")
        e = exp.norm_exponent()
        if e != 0:
            r.fail(f"norm exponent {e}", {"n": n, "exponent": e})
        elif any(a.valuation() < 0 for a in exp.a):
            r.fail("Carlitz coefficient of negative valuation", {"n": n})
        children.append(r)
    rng = random.Random(seed)
    for k in range(samples):
        f = random_linpoly(op.field, rng.randint(0, N), rng)
        psi = taylor_expand(op, seq, f)
        lhs = sup_norm(cache, f)
        vals = [-p.valuation() for p in psi if not p.is_zero()]
        rhs = max(vals) if vals else -INF
        r = CheckReport(f"norm equality sample {k}")
        if lhs != rhs:
            r.fail(f"sup-norm exponent {lhs} != max psi exponent {rhs}", {"sample": k, "f": str(f)})
        children.append(r)
    return combine("orthonormal basis", children)


def check_hypothesis_or_raise(op: DeltaOperator) -> None:
    why = norm_hypothesis(op)
    if why is not None:
        raise HypothesisNotMet(why)
