# Inverse of z^2-3z+1, its orbits and their code words.
from fractions import Fraction as F

import numpy as np

from streamzeros import (alphabet, decode, encode, inverse, parse_poly,
                         periodic_orbit, window_of)

p = parse_poly("z^2-3z+1")

# two-sided inverse: anticausal tail from the small root, causal from the big one
inv = inverse(p)
w = window_of(inv, -6, 6)
for n, v in zip(range(-6, 7), w.values):
    print(f"{n:3d}  {v: .12f}")
print("exact entry at -1:", inv.exact_entry(-1))
print("tail bound beyond the window:", w.tail_bound)

# letters the coding can use
print("alphabet:", alphabet(p).letters)

# a rational seed always lands on a cycle
x = periodic_orbit(p, (F(0), F(1, 2)))
word = encode(p, x)
print("orbit", x.values, "-> word", word.letters)
print("decoded back:", decode(p, word).values)

# a longer cycle
x = periodic_orbit(p, (F(3, 11), F(7, 11)))
word = encode(p, x)
print("period", len(x), "word", word.letters)
assert decode(p, word) == x

# the same word on a finite window goes through the summable inverse
y = decode(p, word, window=(0, 9))
print("window decode matches:", all(y.entry(n) == x.entry(n) for n in range(10)))

# compare against the closed form
wp = (3 + np.sqrt(5)) / 2
closed = [-wp ** (-(n + 1)) / np.sqrt(5) for n in range(0, 7)]
print("max gap to closed form:", np.max(np.abs(w.values[6:] - closed)))
