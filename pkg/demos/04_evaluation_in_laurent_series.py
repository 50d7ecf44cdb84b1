"""
Evaluating the exponential at a point of F_q((x))
=================================================

An F_q-linear series can be evaluated at lambda in F_q((x)) when its terms
shrink. The result is a truncated Laurent series with a known absolute
precision. At v(lambda) = 1 the Carlitz exponential does not converge and
the evaluator says so.
"""
from fqumbral import (CarlitzCache, DivergentAtPoint, RatFn, SigmaSpec, basic_sequence,
                      delta_make, eval_lin_series, exp_series, field_from_q, parse_ratfn,
                      ratfn_to_laurent)
from fqumbral.laurent import point_evaluation_check

F = field_from_q(2)
op = delta_make(SigmaSpec("carlitz"), 10, CarlitzCache(F, 10))
b = exp_series(op, 10)

#####################################################################
# e(x^2) modulo x^12.

lam = ratfn_to_laurent(parse_ratfn("x^2", F), 13)
print("e(x^2) =", eval_lin_series(b, lam, 12))

#####################################################################
# Both sides of e(lambda t) = sum_n Q_n(t) e(lambda)^(q^n), summed
# independently, agree to the working precision.

print(point_evaluation_check(op, basic_sequence(op), lam, parse_ratfn("x", F), 12).lines()[0])

#####################################################################
# At lambda = x the term valuations stop increasing.

try:
    eval_lin_series(b, ratfn_to_laurent(RatFn.x(F), 12), 12)
except DivergentAtPoint as exc:
    print("divergent:", exc)
