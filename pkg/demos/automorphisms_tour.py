# Strong automorphisms of quadratic polynomials.
from fractions import Fraction as F

from streamzeros import (apply_automorphism, block_images, cf_expand,
                         parse_poly, parse_quadirr, pell_solve,
                         periodic_orbit, saut_eigendata, saut_group)
from streamzeros.automorphisms import cf_matrices, pell_of_generator

for text in ("z^2-3z+1", "-3z^2+1", "z^2-2z+1", "3z^2+4z+1", "4z^2+5z+1", "z^2-11z+1"):
    p = parse_poly(text)
    c = saut_group(p)
    print(text, c.kind, c.generator)
    if c.kind == "infinite_cyclic" and c.generator.pp and text != "z^2-2z+1":
        print("   pell data", pell_of_generator(c.generator, p))
        for theta, lam in saut_eigendata(c.generator, p):
            print("   theta", theta, "lambda", lam)

# continued fractions and the matrices built from them
for s in ("(3+sqrt(5))/2", "1/sqrt(3)", "sqrt(19)"):
    cf = cf_expand(parse_quadirr(s))
    m = cf_matrices(cf)
    print(s, cf, "element", m.saut_element(1))

print(pell_solve(61), pell_solve(94))

# the generator acting on an orbit, one block at a time
p = parse_poly("z^2-3z+1")
b = saut_group(p).generator
print("blocks:", block_images(b, p, 0), block_images(b, p, 1))
x = periodic_orbit(p, (F(1, 9), F(4, 9)))
y = apply_automorphism(b, x, p)
print(x.values)
print(y.values)
