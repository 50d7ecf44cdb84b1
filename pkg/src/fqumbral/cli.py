"""Command-line front end: tables, verification suites, expansion and evaluation.

Exit codes: 0 ok, 1 identity violation, 2 invalid input, 3 not a delta operator.
JSON output always carries ``"schema": 1``; rational functions are strings in
the polyrat grammar, so every table round-trips through ``parse_ratfn``.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .carlitz import CarlitzCache, carlitz_e, carlitz_f
from .errors import FqUmbralError, NotDeltaOperator
from .genfun import (delta_fixed_point_check, exp_series, generating_identity_check,
                     inverse_check, log_series, valuation_profile)
from .gf import FieldSpec, field_from_q
from .laurent import eval_lin_series, ratfn_to_laurent
from .linpoly import LinPoly
from .polyrat import INF, Poly, parse_ratfn, print_poly, print_ratfn
from .report import FAIL
from .suites import SUITES, SuiteConfig, run_suite
from .umbral import (PRESETS, SigmaSpec, basic_sequence, carlitz_expand, delta_make,
                     q_triangular_solve, taylor_expand)

SCHEMA = 1
EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_NOT_DELTA = 0, 1, 2, 3


class InputError(Exception):
    """Bad command-line input (exit 2)."""


@dataclass(frozen=True)
class RunConfig:
    p: int
    nu: int
    preset: Optional[str] = None
    sigma_path: Optional[str] = None
    n: int = 5
    terms: int = 4
    seed: int = 0
    samples: int = 10
    format: str = "json"
    out: Optional[str] = None
    perturb: bool = False

    @property
    def q(self) -> int:
        return self.p ** self.nu

    @property
    def field(self) -> FieldSpec:
        return field_from_q(self.q)

    def sigmas(self, default: Sequence[str] = ("carlitz",)) -> List[SigmaSpec]:
        if self.sigma_path is not None:
            return [load_sigma(self.sigma_path, self.field)]
        if self.preset is not None:
            return [SigmaSpec(self.preset)]
        return [SigmaSpec(p) for p in default]

    def header(self, command: str) -> dict:
        h = {"schema": SCHEMA, "command": command, "q": self.q, "p": self.p, "nu": self.nu}
        if self.sigma_path is not None:
            h["sigma"] = [str(s) for s in self.sigmas()[0].values]
        elif self.preset is not None:
            h["preset"] = self.preset
        return h


def load_sigma(path: str, field: FieldSpec) -> SigmaSpec:
    """A sigma file is a JSON list of strings sigma_1, sigma_2, ... (or {"sigma": [...]})."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read sigma file {path}: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("sigma")
    if not isinstance(data, list) or not data:
        raise InputError("sigma file must hold a non-empty JSON list")
    vals = [parse_ratfn(str(v), field) for v in data]
    return SigmaSpec.explicit(field, vals)


def config_from_args(args) -> RunConfig:
    q = args.q
    try:
        F = field_from_q(q)
    except (FqUmbralError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    if args.nu is not None and args.nu != F.nu:
        raise InputError(f"--nu {args.nu} does not match q = {q} = {F.p}^{F.nu}")
    if args.n < 0 or args.terms < 0:
        raise InputError("--n and --terms must be non-negative")
    return RunConfig(p=F.p, nu=F.nu, preset=args.preset, sigma_path=args.sigma, n=args.n,
                     terms=args.terms, seed=args.seed, samples=getattr(args, "samples", 10),
                     format=args.format, out=args.out, perturb=getattr(args, "perturb", False))


# -- rendering --------------------------------------------------------------


def _s(r) -> str:
    return print_poly(r) if isinstance(r, Poly) else print_ratfn(r)


def _coeffs(u: LinPoly, upto: Optional[int] = None) -> List[str]:
    n = u.level if upto is None else upto
    return [_s(u[j]) for j in range(n + 1)]


def _exponent(e):
    if e == -INF:
        return None
    return int(e)


def _text_rows(rows: List[dict]) -> List[str]:
    out = []
    for row in rows:
        parts = []
        for k, v in row.items():
            if isinstance(v, list):
                v = "[" + ", ".join(str(a) for a in v) + "]"
            parts.append(f"{k} = {v}")
        out.append("  ".join(parts))
    return out


def emit(cfg: RunConfig, payload: dict, text_lines: List[str]) -> None:
    if cfg.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = "\n".join(text_lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands ---------------------------------------------------------------


def cmd_carlitz(cfg: RunConfig) -> int:
    cache = CarlitzCache(cfg.field, cfg.n)
    rows = []
    for i in range(cfg.n + 1):
        rows.append({
            "i": i,
            "bracket": _s(cache.brackets[i]) if i else None,
            "D": _s(cache.D[i]),
            "L": _s(cache.L[i]),
            "e_coeffs": _coeffs(carlitz_e(cache, i)),
            "f_coeffs": _coeffs(carlitz_f(cache, i)),
        })
    payload = cfg.header("carlitz")
    payload["rows"] = rows
    emit(cfg, payload, [f"Carlitz table, q = {cfg.q}"] + _text_rows(rows))
    return EXIT_OK


def _operator(cfg: RunConfig, N: int, cache: Optional[CarlitzCache] = None):
    cache = cache or CarlitzCache(cfg.field, N)
    return delta_make(cfg.sigmas()[0], N, cache)


def cmd_basic(cfg: RunConfig) -> int:
    op = _operator(cfg, cfg.n)
    seq = basic_sequence(op)
    rows = []
    for n in range(cfg.n + 1):
        rows.append({
            "n": n,
            "gamma_row": [_s(g) for g in seq.gamma[n]],
            "Q_coeffs": _coeffs(seq.Q[n], n),
            "P_coeffs": _coeffs(seq.P(n), n),
        })
    payload = cfg.header("basic")
    payload["rows"] = rows
    emit(cfg, payload, [f"basic sequence, q = {cfg.q}, sigma = {cfg.sigmas()[0]}"] + _text_rows(rows))
    return EXIT_OK


def cmd_verify(cfg: RunConfig, suite: str) -> int:
    scfg = SuiteConfig(cfg.field, tuple(cfg.sigmas(PRESETS)), n=cfg.n, terms=cfg.terms,
                       seed=cfg.seed, samples=cfg.samples, perturb=cfg.perturb)
    rep = run_suite(suite, scfg)
    payload = cfg.header("verify")
    payload.update({"suite": suite, "n": cfg.n, "terms": cfg.terms, "seed": cfg.seed,
                    "perturb": cfg.perturb, "status": rep.status})
    lines = rep.lines()
    ff = rep.first_failure()
    if ff is not None:
        payload["first_failure"] = {"name": ff.name, "detail": ff.detail}
        if ff.counterexample is not None:
            payload["first_failure"]["counterexample"] = ff.to_json().get("counterexample")
        lines.append(f"first failure: {ff.name} -- {ff.detail}")
    payload["report"] = rep.to_json()
    emit(cfg, payload, lines)
    return EXIT_VIOLATION if rep.status == FAIL else EXIT_OK


def cmd_genfun(cfg: RunConfig, check: Optional[str]) -> int:
    M = cfg.terms
    op = _operator(cfg, max(M, cfg.n))
    b, beta = exp_series(op, M), log_series(op, M)
    rows = [{"j": j, "b": _s(b[j]), "beta": _s(beta[j])} for j in range(M + 1)]
    payload = cfg.header("genfun")
    payload["rows"] = rows
    lines = [f"exponential and logarithm, q = {cfg.q}, sigma = {cfg.sigmas()[0]}"] + _text_rows(rows)
    code = EXIT_OK
    if check:
        if check == "inverse":
            rep = inverse_check(op, M, cfg.perturb)
        elif check == "fixedpoint":
            e = b.replace(min(2, M), b[min(2, M)] + 1) if cfg.perturb else b
            rep = delta_fixed_point_check(op, e)
        elif check == "identity":
            rep = generating_identity_check(op, basic_sequence(op), M, cfg.perturb)
        else:
            rep = valuation_profile(op, M, cfg.perturb)
        payload["check"] = rep.to_json()
        lines += rep.lines()
        if rep.status == FAIL:
            code = EXIT_VIOLATION
    emit(cfg, payload, lines)
    return code


def _read_linpoly(cfg: RunConfig, args) -> LinPoly:
    F = cfg.field
    if args.poly is not None:
        text = args.poly
    elif args.input is not None:
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(str(exc)) from exc
    else:
        raise InputError("expand needs --poly JSON, --input FILE or --Q n")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid LinPoly JSON: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("terms")
    if not isinstance(data, list):
        raise InputError("LinPoly JSON must be a list of {\"j\": level, \"coeff\": expr}")
    try:
        return LinPoly.from_json(F, data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"invalid LinPoly term: {exc}") from exc


def cmd_expand(cfg: RunConfig, args) -> int:
    if args.Q is not None:
        N = max(cfg.n, args.Q)
        op = _operator(cfg, N)
        seq = basic_sequence(op)
        u = seq.Q[args.Q]
    else:
        u = _read_linpoly(cfg, args)
        N = max(cfg.n, u.level, 0)
        op = _operator(cfg, N)
        seq = basic_sequence(op)
    psi = taylor_expand(op, seq, u)
    psi_solve = q_triangular_solve(seq, u)
    exp = carlitz_expand(op.cache, u)
    payload = cfg.header("expand")
    payload.update({
        "input": u.to_json(),
        "psi": [_s(a) for a in psi],
        "psi_agrees_with_triangular_solve": list(psi) == list(psi_solve),
        "carlitz_coeffs": [_s(a) for a in exp.a],
        "norm_exponent": _exponent(exp.norm_exponent()),
    })
    lines = [
        f"u = {u}",
        "psi = (" + ", ".join(payload["psi"]) + ")",
        "Carlitz coefficients = (" + ", ".join(payload["carlitz_coeffs"]) + ")",
        f"sup-norm = q^{payload['norm_exponent']}",
    ]
    emit(cfg, payload, lines)
    return EXIT_OK if payload["psi_agrees_with_triangular_solve"] else EXIT_VIOLATION


def cmd_eval(cfg: RunConfig, args) -> int:
    F = cfg.field
    P = args.prec
    point = parse_ratfn(args.point, F)
    lam = ratfn_to_laurent(point, P + 1)
    # grow the series until the evaluation reaches the requested precision
    M = max(cfg.terms, 2)
    from .errors import InsufficientTerms

    while True:
        op = _operator(cfg, M)
        ser = exp_series(op, M) if args.series == "exp" else log_series(op, M)
        try:
            val = eval_lin_series(ser, lam, P)
            break
        except InsufficientTerms:
            if M >= args.max_terms:
                raise
            M += 2
    coeffs = [] if val.is_zero() else [
        {"n": val.lead + k, "c": str(c)} for k, c in enumerate(val.unit.coeffs) if not c.is_zero()]
    payload = cfg.header("eval")
    payload.update({"series": args.series, "point": _s(point), "prec": P,
                    "valuation": None if val.is_zero() else val.lead,
                    "coefficients": coeffs, "value": str(val)})
    emit(cfg, payload, [f"{args.series}({_s(point)}) = {val}"])
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--q", type=int, default=2, help="field order q = p^nu (default 2)")
    p.add_argument("--nu", type=int, default=None, help="extension degree; must agree with --q")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--preset", choices=PRESETS, default=None, help="named sigma sequence")
    g.add_argument("--sigma", metavar="FILE", default=None, help="JSON list of sigma_1, sigma_2, ...")
    p.add_argument("--n", type=int, default=5, help="maximum index N")
    p.add_argument("--terms", type=int, default=4, help="series order M")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", metavar="PATH", default=None, help="write output here instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="fqumbral", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("carlitz", parents=[common], help="brackets, factorials, e_i and f_i")
    sub.add_parser("basic", parents=[common], help="basic-sequence coefficient table")
    v = sub.add_parser("verify", parents=[common], help="run an identity suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--samples", type=int, default=10, help="random polynomials per randomized check")
    v.add_argument("--perturb", action="store_true",
                   help="negative control: change one coefficient before the first comparison")
    gf = sub.add_parser("genfun", parents=[common], help="exponential and logarithm coefficients")
    gf.add_argument("--check", choices=("inverse", "fixedpoint", "identity", "valuations"))
    gf.add_argument("--perturb", action="store_true", help="negative control for --check")
    ex = sub.add_parser("expand", parents=[common], help="expand a linear polynomial")
    src = ex.add_mutually_exclusive_group()
    src.add_argument("--poly", metavar="JSON", help='e.g. \'[{"j": 1, "coeff": "1"}]\'')
    src.add_argument("--input", metavar="FILE", help="file holding LinPoly JSON")
    src.add_argument("--Q", type=int, metavar="N", help="expand Q_N of the sequence itself")
    ev = sub.add_parser("eval", parents=[common], help="evaluate e or log at a Laurent point")
    ev.add_argument("--point", required=True, metavar="EXPR", help="rational function in x")
    ev.add_argument("--prec", type=int, default=16, metavar="P", help="absolute precision O(x^P)")
    ev.add_argument("--series", choices=("exp", "log"), default="exp")
    ev.add_argument("--max-terms", type=int, default=24, help="largest series order tried")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        if args.command == "carlitz":
            return cmd_carlitz(cfg)
        if args.command == "basic":
            return cmd_basic(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, args.suite)
        if args.command == "genfun":
            return cmd_genfun(cfg, args.check)
        if args.command == "expand":
            return cmd_expand(cfg, args)
        return cmd_eval(cfg, args)
    except NotDeltaOperator as exc:
        print(f"error: not a delta operator: {exc}", file=sys.stderr)
        return EXIT_NOT_DELTA
    except (InputError, FqUmbralError, ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
