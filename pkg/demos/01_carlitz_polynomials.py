"""
Carlitz polynomials over F_2(x)
===============================

The Carlitz polynomial e_i(t) is the product of (t - m) over all
polynomials m in F_q[x] of degree below i. It is F_q-linear in t, so it is
stored by its coefficients on t, t^q, t^(q^2), ...
"""
from fqumbral import CarlitzCache, carlitz_e, carlitz_e_oracle, carlitz_f, field_from_q

F = field_from_q(2)
cache = CarlitzCache(F, 4)

#####################################################################
# The first few e_i, built by the Moore-determinant recurrence.

for i in range(4):
    print(f"e_{i}(t) =", carlitz_e(cache, i))

#####################################################################
# The recurrence agrees with the defining product, computed directly
# by expanding every factor (t - m).

for i in range(4):
    assert carlitz_e(cache, i) == carlitz_e_oracle(cache, i)
print("recurrence matches the product for i <= 3")

#####################################################################
# Dividing by the Carlitz factorial D_i gives f_i, whose leading
# coefficient is 1/D_i.

for i in range(3):
    print(f"D_{i} = {cache.Drat(i)}    f_{i}(t) = {carlitz_f(cache, i)}")
