"""
Delta operators and their basic sequences
=========================================

A diagonal delta operator is fixed by the sequence sigma of its
eigenvalue factors. Each one determines a unique basic sequence Q_n of
K-binomial type. Three presets ship with the library.
"""
import random

from fqumbral import CarlitzCache, SigmaSpec, basic_sequence, delta_make, field_from_q
from fqumbral.umbral import k_binomial_check, random_linpoly, taylor_check

F = field_from_q(3)
cache = CarlitzCache(F, 4)

#####################################################################
# Build each preset and print its first basic polynomials.

for preset in ("carlitz", "laguerre", "example2"):
    op = delta_make(SigmaSpec(preset), 3, cache)
    seq = basic_sequence(op)
    print(f"--- {preset}")
    for n in range(3):
        print(f"Q_{n}(t) =", seq.Q[n])

#####################################################################
# The example2 sequence has a closed form t^(q^n) - t^(q^(n-1)).
# Every basic sequence satisfies the K-binomial identity, checked here
# as an exact equality of bilinear polynomials in s and t.

op = delta_make(SigmaSpec("laguerre"), 3, cache)
seq = basic_sequence(op)
for i in range(4):
    print(k_binomial_check(seq, i).lines()[0])

#####################################################################
# A random F_q-linear polynomial is recovered from its generalized
# Taylor coefficients.

f = random_linpoly(F, 3, random.Random(1))
print("f =", f)
print(taylor_check(op, seq, f).lines()[0])
