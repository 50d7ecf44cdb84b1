"""
Exponential and logarithm of a delta operator
=============================================

The exponential e(z) = sum b_j z^(q^j) of a delta operator and its
compositional inverse, the logarithm, are formal F_q-linear series. For
the Carlitz operator they reduce to the classical Carlitz exponential
with b_j = 1/D_j and logarithm with beta_j = (-1)^j / L_j.
"""
from fqumbral import (CarlitzCache, SigmaSpec, basic_sequence, delta_make, exp_series,
                      field_from_q, log_series)
from fqumbral.genfun import generating_identity_check, inverse_check, valuation_profile

F = field_from_q(2)
cache = CarlitzCache(F, 6)
op = delta_make(SigmaSpec("carlitz"), 6, cache)

#####################################################################
# Coefficients of both series.

b, beta = exp_series(op, 4), log_series(op, 4)
for j in range(5):
    print(f"b_{j} = {b[j]}    beta_{j} = {beta[j]}")

#####################################################################
# Composition in either order is the identity, and the valuations of
# b_j follow -v(b_j) = (q^j - 1)/(q - 1).

print(inverse_check(op, 4).lines()[0])
print(valuation_profile(op, 6).lines()[0])

#####################################################################
# The generating identity e(lambda t) = sum_n Q_n(t) e(lambda)^(q^n)
# holds coefficient by coefficient for the laguerre operator too.

lag = delta_make(SigmaSpec("laguerre"), 6, cache)
print(generating_identity_check(lag, basic_sequence(lag), 3).lines()[0])
