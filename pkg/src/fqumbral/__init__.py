"""Exact umbral calculus over F_q(x): Carlitz polynomials, delta operators,
basic sequences of K-binomial type, generating functions and their
evaluation in F_q((x)).
"""
from .carlitz import (CarlitzCache, carlitz_e, carlitz_e_oracle, carlitz_f, carlitz_module,
                      gekeler_sides, k_binomial)
from .errors import (ConstantTermObstruction, DivergentAtPoint, DivisionByZero,
                     EnumerationTooLarge, ExprSyntaxError, FieldTooLarge, FqUmbralError,
                     HypothesisNotMet, InsufficientTerms, NotDeltaOperator, NotPolynomial,
                     NotPrime, OrderExceeded, QthRootNotExist, UnknownSymbol, ZeroToPrecision)
from .genfun import (FormalLinSeries, exp_series, log_series, series_compose,
                     series_inverse)
from .gf import FieldSpec, FqElem, field_create, field_from_q
from .laurent import LaurentSeries, eval_lin_series, ratfn_to_laurent
from .linpoly import BiLinPoly, LinPoly, lin_compose, lin_eval, rho, tau, tau_power
from .polyrat import Poly, RatFn, parse_ratfn, print_ratfn, ratfn
from .report import CheckReport
from .umbral import (PRESETS, BasicSequence, DeltaOperator, InvariantOperator, SigmaSpec,
                     basic_sequence, carlitz_expand, delta_make, q_triangular_solve,
                     sup_norm, taylor_expand)

__version__ = "0.1.0"
