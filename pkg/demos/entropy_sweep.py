# Word counts versus the exact entropy for a few polynomials.
from math import log

from streamzeros import entropy_estimate, entropy_exact, parse_poly

for text in ("z^2-3z+1", "-3z^2+1", "z^2-4z+1", "z^-1-3+z"):
    p = parse_poly(text)
    h = entropy_exact(p)
    est = entropy_estimate(p, word_len=9, grid=256)
    print(f"{text}: exact {h:.6f}  backward depth {est.backward_depth}")
    prev = None
    for n, count, e in est.rows:
        ratio = "" if prev is None else f"  log ratio {log(count / prev):.4f}"
        print(f"  n={n:2d}  count={count:7d}  (1/n) log = {e:.4f}{ratio}")
        prev = count

# (1/n) log N_n carries a log(C)/n bias; successive ratios settle much faster.
# Counts cannot exceed the number of seeds (256**2 here), which is why the
# z^2-4z+1 ratios collapse at n=9.
