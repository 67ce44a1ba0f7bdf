"""Standard-model derived manifolds over polynomial data.

Exact polynomial ideals stand in for ``C^infty(R^n)/I``; standard models
``S_{V,E,s}`` carry their 1- and 2-morphisms modulo ``I_s^2`` and ``I_s``,
and pointwise linear algebra at witness points decides etale, submersion and
immersion questions.
"""

import types as _types

from .cinf_ring import CotModule, FgRing, RingMor, cotangent, cotangent_pushforward, quotient_op
from .count import CountProblem, CountResult, find_zeros, intersection_number, virtual_count
from .errors import (
    CountError, DimensionError, DManifoldError, GroebnerCapExceeded, InvalidMorphism, ParseError,
    WitnessError,
)
from .fibre import (
    FibreData, cotangent_exact_at, d_transverse_at, fibre_product, iso_sign_at, manifold_target,
    map_to_euclidean, orient_fibre_product, orientation_parity, swap_sign,
)
from .glue import GlueData, Overlap, format_report, validate_glue
from .groebner import (
    Ideal, buchberger, groebner_certificate, ideal_member, ideal_square, normal_form,
    substitute_mod,
)
from .linalg import rank
from .parse import parse_poly, parse_polys
from .poly import Poly, variables
from .polymatrix import PolyMatrix, jacobian
from .standard import (
    EtaleVerdict, StdModel, StdMor, StdTwoMor, Validation, classify_mor_at, compose_mor,
    cotangent_complex, etale_at, hcompose_2mor, is_manifold_at, make_std_model, mor_equal, omega,
    pullback_vmor, standard_embedding, two_mor_equal, validate_2mor, validate_mor, vcompose_2mor,
)
from .vvect import (
    MorClass, OrientationLine, VComplex, VMor, VTwoMor, classify_at, classify_matrices,
    compose_vmor, hcompose, orientation_line, vcompose,
)
from .witness import WitnessPoint, as_witness

__version__ = "0.1.0"

__all__ = sorted(name for name, value in globals().items()
                 if not name.startswith("_") and not isinstance(value, _types.ModuleType))
