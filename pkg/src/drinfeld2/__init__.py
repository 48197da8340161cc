"""Exact-arithmetic toolkit for rank-2 modules over finite fields.

Computes Frobenius characteristic quadratics, classifies them, enumerates
isogeny classes and Euler-Poincare characteristics against closed-form
reference counts, and measures endomorphism-order conductors.
"""

__version__ = "1.0.0"

from .census import (
    brute_force_module_census,
    chi_census,
    chi_of,
    closed_form_chi_count,
    closed_form_isogeny_count,
    discrepancy_report,
    enumerate_char_polys,
)
from .errors import CrossCheckError, PolyParseError, ScaleGuardError
from .fields import (
    FieldCtx,
    FieldElem,
    arith,
    embed_elem,
    frobenius_q,
    is_square_in_Fq,
    make_ctx,
    norm_to_Fq,
)
from .modules import (
    CharPoly,
    DrinfeldModule,
    char_poly,
    commutant_basis,
    format_module,
    frobenius,
    is_supersingular,
    make_module,
    parse_module,
    phi_of,
    torsion_kernel,
)
from .ore import OrePoly, additive_eval, ore_arith, ore_mul, right_divmod
from .orders import discriminant, measured_conductor, order_bound, order_lattice
from .polys import (
    APoly,
    enumerate_polys,
    format_apoly,
    gcd_monic,
    is_irreducible,
    monic_gen,
    parse_apoly,
    poly_arith,
    poly_divmod,
    square_part,
)
from .weil import ClassLabel, classify, is_imaginary, valid_ordinary, valid_supersingular
