"""Verification suites: each runs a family of identity checks for one field
and returns a combined CheckReport. ``perturb=True`` injects a single
coefficient change into the first check of the suite (negative control).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .carlitz import CarlitzCache, carlitz_e, carlitz_module, gekeler_sides, k_binomial
from .errors import NotDeltaOperator
from .genfun import (delta_fixed_point_check, exp_series, functional_equation_check,
                     generating_identity_check, inverse_check, valuation_profile)
from .gf import FieldSpec
from .linpoly import LinPoly, bilin_accumulate, lin_compose, subst_st
from .polyrat import Poly, RatFn
from .report import CheckReport, combine
from .umbral import (PRESETS, SigmaSpec, basic_sequence, delta0_iter, delta0_recursive,
                     delta_make, iterate_identity_check, k_binomial_check, orthonormal_check, random_linpoly,
                     taylor_bilinear_check, taylor_check, uniqueness_check)

SUITES = ("kbinomial", "taylor", "gekeler", "orthonormal", "genfun", "module")


@dataclass
class SuiteConfig:
    field: FieldSpec
    sigmas: Sequence[SigmaSpec] = tuple(SigmaSpec(p) for p in PRESETS)
    n: int = 5
    terms: int = 4
    seed: int = 0
    samples: int = 10
    perturb: bool = False


class _Perturb:
    """Hands out the perturbation flag exactly once."""

    def __init__(self, on: bool):
        self.on = on

    def __call__(self) -> bool:
        on, self.on = self.on, False
        return on


def carlitz_kbinomial_check(cache: CarlitzCache, i: int, perturb: bool = False) -> CheckReport:
    """e_i(st) = sum_n binom(i,n) e_n(t) e_(i-n)(s)^(q^n)."""
    rep = CheckReport(f"Carlitz K-binomial i={i}")
    terms = []
    for n in range(i + 1):
        b = RatFn(k_binomial(cache, i, n))
        if perturb and n == 1:
            b = b + 1
        terms.append((b, carlitz_e(cache, n), carlitz_e(cache, i - n), n))
    lhs = subst_st(carlitz_e(cache, i))
    rhs = bilin_accumulate(cache.field, terms)
    diff = lhs.first_difference(rhs)
    if diff is not None:
        return rep.fail(f"differs at entry {diff[0]}", {"entry": diff[0], "lhs": diff[1], "rhs": diff[2]})
    return rep


def polys_up_to_degree(field: FieldSpec, d: int) -> List[Poly]:
    """All nonzero polynomials of degree <= d, lexicographic in coefficient tuples."""
    out = []
    for tup in itertools.product(list(field.elements()), repeat=d + 1):
        p = Poly(field, tup)
        if not p.is_zero():
            out.append(p)
    return out


def module_composition_check(cache: CarlitzCache, max_deg: int = 2, perturb: bool = False) -> CheckReport:
    children = []
    polys = polys_up_to_degree(cache.field, max_deg)
    C = {p: carlitz_module(cache, p) for p in polys}
    flag = _Perturb(perturb)
    for t in polys:
        for s in polys:
            lhs = carlitz_module(cache, t * s)
            if flag():
                lhs = lhs + LinPoly.monomial(cache.field, 0, 1)
            rhs = lin_compose(C[t], C[s])
            if lhs != rhs:
                r = CheckReport(f"C_(ts) = C_t o C_s, t={t}, s={s}")
                k = next(k for k in range(max(len(lhs), len(rhs))) if lhs[k] != rhs[k])
                r.fail(f"differs at level {k}", {"t": str(t), "s": str(s), "level": k})
                children.append(r)
                return combine("Carlitz module composition", children)
    children.append(CheckReport(f"C_(ts) = C_t o C_s for all {len(polys) ** 2} pairs, deg <= {max_deg}"))
    return combine("Carlitz module composition", children)


def _operator(cfg: SuiteConfig, cache: CarlitzCache, sigma: SigmaSpec, N: int):
    return delta_make(sigma, N, cache)


def suite_kbinomial(cfg: SuiteConfig, cache: CarlitzCache) -> CheckReport:
    flag = _Perturb(cfg.perturb)
    children = [carlitz_kbinomial_check(cache, i, i >= 1 and flag()) for i in range(cfg.n + 1)]
    for sigma in cfg.sigmas:
        op = _operator(cfg, cache, sigma, cfg.n)
        seq = basic_sequence(op)
        sub = [k_binomial_check(seq, i, flag()) for i in range(cfg.n + 1)]
        children.append(combine(f"K-binomial, sigma = {sigma}", sub))
    return combine("kbinomial", children)


def suite_taylor(cfg: SuiteConfig, cache: CarlitzCache) -> CheckReport:
    flag = _Perturb(cfg.perturb)
    children = []
    rng = random.Random(cfg.seed)
    for sigma in cfg.sigmas:
        op = _operator(cfg, cache, sigma, cfg.n)
        seq = basic_sequence(op)
        sub = []
        for j in range(cfg.n + 1):
            for l in range(j + 1):
                sub.append(iterate_identity_check(op, seq, l, j, flag()))
        for k in range(cfg.samples):
            f = random_linpoly(cache.field, rng.randint(0, cfg.n), rng)
            sub.append(taylor_check(op, seq, f, flag()))
            if k < 3:
                sub.append(taylor_bilinear_check(op, seq, f))
        sub.append(uniqueness_check(seq))
        children.append(combine(f"Taylor expansion, sigma = {sigma}", sub))
    # diagonal iterate against the recursive construction, Carlitz case
    carl = delta_make(SigmaSpec("carlitz"), cfg.n, cache)
    sub = []
    for l in range(min(4, cfg.n) + 1):
        tests = [LinPoly.monomial(cache.field, m) for m in range(cfg.n + 1)]
        tests += [random_linpoly(cache.field, cfg.n, rng) for _ in range(3)]
        r = CheckReport(f"diagonal vs recursive Delta^({l})")
        for u in tests:
            if delta0_iter(carl, l, u) != delta0_recursive(cache, l, u):
                r.fail("mismatch", {"u": str(u)})
                break
        sub.append(r)
    children.append(combine("Delta^(l) two constructions", sub))
    return combine("taylor", children)


def gekeler_check(cache: CarlitzCache, h: int, perturb: bool = False) -> CheckReport:
    rep = CheckReport(f"Gekeler identity h={h}")
    lhs, rhs = gekeler_sides(cache, h)
    if perturb:
        lhs = lhs + 1
    if lhs != rhs:
        return rep.fail("sides differ (cleared denominators)", {"h": h, "difference": str(lhs - rhs)})
    return rep


def suite_gekeler(cfg: SuiteConfig, cache: CarlitzCache) -> CheckReport:
    flag = _Perturb(cfg.perturb)
    return combine("gekeler", [gekeler_check(cache, h, flag()) for h in range(1, cfg.n + 1)])


def suite_orthonormal(cfg: SuiteConfig, cache: CarlitzCache) -> CheckReport:
    flag = _Perturb(cfg.perturb)
    children = []
    for sigma in cfg.sigmas:
        op = _operator(cfg, cache, sigma, cfg.n)
        seq = basic_sequence(op)
        rep = orthonormal_check(op, seq, cfg.n, samples=cfg.samples, seed=cfg.seed, perturb=False)
        if rep.status == "hypothesis_not_met":
            children.append(rep)
            continue
        if flag():
            rep = orthonormal_check(op, seq, cfg.n, samples=cfg.samples, seed=cfg.seed, perturb=True)
        rep.name = f"orthonormal basis, sigma = {sigma}"
        children.append(rep)
    return combine("orthonormal", children)


def suite_genfun(cfg: SuiteConfig, cache: CarlitzCache) -> CheckReport:
    flag = _Perturb(cfg.perturb)
    M = cfg.terms
    children = []
    for sigma in cfg.sigmas:
        N = max(cfg.n, M)
        op = _operator(cfg, cache, sigma, N)
        seq = basic_sequence(op)
        e = exp_series(op, M)
        if flag():
            e = e.replace(min(2, M), e[min(2, M)] + 1)
        sub = [
            delta_fixed_point_check(op, e),
            inverse_check(op, M, flag()),
            generating_identity_check(op, seq, M, flag()),
            valuation_profile(op, M),
        ]
        children.append(combine(f"generating functions, sigma = {sigma}", sub))
    return combine("genfun", children)


def suite_module(cfg: SuiteConfig, cache: CarlitzCache) -> CheckReport:
    flag = _Perturb(cfg.perturb)
    children = [module_composition_check(cache, 2 if cache.field.q <= 3 else 1, flag())]
    x = Poly.x(cache.field)
    M = min(cfg.terms, cache.N)
    for s in (x, x * x + 1):
        children.append(functional_equation_check(cache, RatFn(s), M))
    return combine("module", children)


RUNNERS = {
    "kbinomial": suite_kbinomial,
    "taylor": suite_taylor,
    "gekeler": suite_gekeler,
    "orthonormal": suite_orthonormal,
    "genfun": suite_genfun,
    "module": suite_module,
}


def run_suite(name: str, cfg: SuiteConfig, cache: Optional[CarlitzCache] = None) -> CheckReport:
    """Run one suite (or ``all``). NotDeltaOperator propagates to the caller."""
    if cache is None:
        cache = CarlitzCache(cfg.field, max(cfg.n, cfg.terms, 2))
    if name == "all":
        return combine("all", [RUNNERS[s](cfg, cache) for s in SUITES])
    if name not in RUNNERS:
        raise ValueError(f"unknown suite {name!r}")
    return RUNNERS[name](cfg, cache)


__all__ = ["SUITES", "SuiteConfig", "run_suite", "NotDeltaOperator"]
