"""Exact computation with the stream zeros of integer polynomials."""

from .errors import *  # noqa: F401,F403
from .quadratic import QuadIrr, parse_quadirr
from .poly import (LaurentPoly, bezout, format_poly, parse_poly, poly_gcd,
                   poly_mul, resultant, squarefree_decomposition)
from .streams import (IDENTITY, FiniteSupport, GeometricTails, Tail, Window,
                      add, convolve, negate, scale, shift, window_of)
from .inverse import find_roots, inverse, is_hyperbolic, verify_inverse
from .dynamics import (Alphabet, CodeWord, TorusSeq, Verdict, alphabet, decode,
                       encode, entropy_estimate, entropy_exact, is_admissible,
                       is_member, orbit, periodic_orbit, preimage)
from .structure import (conjugacy_check, decompose, dim_check, dim_omega,
                        enumerate_common_zeros, factor_check)
from .automorphisms import (IntMatrix, apply_automorphism, block_images,
                            cf_expand, cf_matrices, is_saut, pell_solve,
                            saut_eigendata, saut_group)

__version__ = "0.1.0"
