"""Inner-Lipschitz classification invariants of semialgebraic surfaces.

Subpackages and modules:

- ``code_model``: exact classification codes, canonical forms, equivalence.
- ``strata``: strip/tube gluing calculus and code assembly.
- ``contact``: curve parsing and contact-exponent estimation at infinity.
- ``mesh_geometry``: sampled model surfaces, geodesic distances, link-length
  growth, topology, and tangent-direction dimension.
- ``normal_forms``: punctured model surfaces realizing a requested code.
- ``cli``: command-line front end and the reproducible corpus runner.
"""

from .code_model import (
    ComponentCode,
    EquivWitness,
    InnerLipschitzCode,
    canonicalize,
    code_equiv,
    curve_code,
    make_code,
    make_component_code,
    normalize,
)
from .rationals import Rational, as_rational, format_rational, rational_round
from .puiseux import PuiseuxExpr
from .strata import (
    StrataSpec,
    StripSpec,
    code_from_strata,
    glue_strips,
    strip_exponent_from_profile,
    tube_from_strips,
)

__version__ = "0.1.0"
