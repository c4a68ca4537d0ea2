"""Exact workbench for centrification of algebra presentations.

Everything is computed in exact arithmetic: rationals, prime fields and
rational functions in one parameter, with central variables adjoined as a
free commutative ring.
"""

from .coeffs import (CentralPoly, CentralRing, CoeffError, FieldDescriptor,
                     Mod, RatFunc, central_reduce)
from .freealg import (Alphabet, EMPTY_WORD, FreeAlgebraError, NcPoly,
                      TensorElement, deglex_key)
from .rewrite import (CompletionError, CompletionResult, Composition,
                      GsCertificate, ReductionTrace, RewriteError, Rule,
                      RewriteSystem, complete, composition_element,
                      find_compositions, irreducible_words, is_gs_basis,
                      normal_form, trace_reduce)
from .centrify import (CentrifyError, FlatnessCertificate, Obstacle,
                       ObstacleError, Presentation, ZPresentation,
                       central_relations, centrify, check_prop_gsbasis,
                       obstacle, specialize, z_presentation)
from .hopf import (HopfError, PrimitivityReport, antipode,
                   antipode_convolution, certify_primitive_family, coproduct,
                   counit, is_primitive, primitivity_defect, word_coproduct)
from .presets import (LieData, LieReport, PresetError, abelian3, build_as,
                      build_aw1, build_aw2, build_bi, build_preset,
                      build_ruea, build_uea, cocycle_ideal, lie_validate,
                      sl2, sl2_restricted_gf3, solvable3)
from .parser import (ParseError, PresentationDocument, parse_presentation,
                     print_presentation)

__all__ = [n for n in dir() if not n.startswith("_")]
__version__ = "0.1.0"
