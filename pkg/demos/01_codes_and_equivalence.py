"""Classification codes of the classical surfaces, and deciding equivalence.

Each surface gets a tuple of symbols per component: orientability theta,
genus, the sorted end exponents, and horn-exponent vectors at labeled
singular points.  Two surfaces are inner-lipeomorphic exactly when their
codes match up to relabeling, which `code_equiv` decides.
"""

from fractions import Fraction as F

from horncode import (
    canonicalize,
    code_equiv,
    curve_code,
    make_code,
    make_component_code,
    normalize,
)
from horncode.code_model import canonical_json

# -- single-component codes ---------------------------------------------------

paraboloid = make_code([make_component_code(1, 0, [F(1, 2)], {})])
torus = make_code([make_component_code(1, 1, [], {})])
klein = make_code([make_component_code(-1, 1, [], {})])
moebius = make_code([make_component_code(-1, 0, [F(1)], {})])

print("paraboloid :", canonical_json(paraboloid).decode())
print("torus      :", canonical_json(torus).decode())
print("klein      :", canonical_json(klein).decode())
print("moebius    :", canonical_json(moebius).decode())
print()
print("torus ~ klein bottle?", code_equiv(torus, klein) is not None)

# -- multi-component: two unit spheres tangent at one point -------------------

sphere_with_contact = make_component_code(1, 0, [], {"tangency": [F(1)]})
edge_of_spheres = make_code([sphere_with_contact, sphere_with_contact])

# the same surface described with the components swapped and relabeled
other_description = make_code([
    make_component_code(1, 0, [], {"o": [F(1)]}),
    make_component_code(1, 0, [], {"o": [F(1)]}),
])
witness = code_equiv(edge_of_spheres, other_description)
print("edge-of-spheres self-equivalence witness:",
      witness.component_bijection, dict(witness.point_bijection))

# the shared point carries two smooth sheets, so it stays singular
print("sheets at the tangency:", edge_of_spheres.sheet_total("tangency"))
print("normalize keeps it:",
      normalize(edge_of_spheres).singular_labels == {"tangency"})

# a single smooth sheet with horn exponent 1 is a regular marked point
marked = make_code([make_component_code(1, 0, [F(1)], {"m": [F(1)]})])
print("regular marked point erased:",
      normalize(marked).singular_labels == frozenset())

# -- complex plane curves ----------------------------------------------------

# a smooth cubic: genus 1, three ends, no singular points
cubic = curve_code([(1, 3)], {})
print("\nsmooth cubic code:", canonical_json(cubic).decode())

# a node curve: two rational branches crossing at one point
node = curve_code([(0, 1), (0, 1)], {"node": {0: 1, 1: 1}})
print("node curve code  :", canonical_json(canonicalize(node)).decode())
