"""Strip gluing calculus: from stratified descriptions to codes.

An end of a surface decomposes into strips, each asymptotically like the
planar region 0 <= y <= x^beta.  Gluing strips along boundary arcs (chains)
or in a cycle (tubes) keeps the largest exponent, so the exponent of every
end follows from its strip decomposition by a max-fold.
"""

from fractions import Fraction as F

from horncode import (
    PuiseuxExpr,
    StrataSpec,
    code_from_strata,
    glue_strips,
    strip_exponent_from_profile,
    tube_from_strips,
)
from horncode.code_model import canonical_json, canonicalize

# -- strip exponents from profiles --------------------------------------------

profile = PuiseuxExpr.from_terms([(3.0, F(1, 3)), (7.0, F(-2))])
print(f"profile {profile}  ->  strip exponent",
      strip_exponent_from_profile(profile))

# -- the max rule --------------------------------------------------------------

print("glue [1/2, -1, 1/3]  ->", glue_strips([F(1, 2), F(-1), F(1, 3)]))
print("cycle of four 1/2-strips ->", tube_from_strips([F(1, 2)] * 4))

# -- assembling full codes ------------------------------------------------------

# the paraboloid: one end made of four quadrant strips of exponent 1/2
paraboloid = StrataSpec.build(1, 0, [[F(1, 2)] * 4])
print("\nparaboloid:", canonical_json(code_from_strata(paraboloid)).decode())

# unbounded Moebius band: one end from a cycle of two 1-strips, theta = -1
moebius = StrataSpec.build(-1, 0, [[F(1), F(1)]])
print("moebius   :", canonical_json(code_from_strata(moebius)).decode())

# the Cayley surface x^2+y^2+z^2-2xyz=1: four unbounded sheets, each touching
# the central sphere-like component at one point
horns = [StrataSpec.build(1, 0, [[F(1)]], {f"p{k}": [F(1)]})
         for k in range(1, 5)]
center = StrataSpec.build(1, 0, [], {f"p{k}": [F(1)] for k in range(1, 5)})
cayley = code_from_strata(horns + [center])
print("cayley    :", canonical_json(canonicalize(cayley)).decode())
print("cayley component count:", len(cayley.components),
      " shared labels:", sorted(cayley.singular_labels))
