# Resultants, common zeros and the coprime splitting.
from fractions import Fraction as F

from streamzeros import (bezout, decompose, dim_check, dim_omega,
                         enumerate_common_zeros, parse_poly, resultant)
from streamzeros.structure import random_members

p, q = parse_poly("z^2-3z+1"), parse_poly("z+2")
print("resultant", resultant(p, q).delta)
a, b, d = bezout(p, q)
print("A =", a, " B =", b, " A P + B Q =", a * p + b * q)

for text in ("z^2-3z+1", "z^2-2z", "2z^3+z^2-3"):
    r = parse_poly(text)
    k = dim_omega(r)
    print(text, "dim", k, dim_check(r, k, 5), dim_check(r, k + 1, 5))

# common zeros live on the 1/|Delta| grid
for u, v in (("z-1", "z+1"), ("z^2+1", "z+3"), ("z-2", "z-3")):
    zs = enumerate_common_zeros(parse_poly(u), parse_poly(v), (0, 3))
    print(u, v, len(zs), [z.values for z in zs[:4]])

# split a point of Omega_{PQ}
for x in random_members(p * q, 3, 10, seed=1):
    w = decompose(p, q, x)
    print(w.scale, w.u.values[:4], w.v.values[:4], w.verify(p, q, x))
