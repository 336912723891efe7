"""fcmono: exact monodromy of Lauricella's hypergeometric system E_C.

Constructs the 2^n-dimensional monodromy representation attached to
rational exponents (a, b, c_1..c_n), verifies its defining identities
in exact cyclotomic arithmetic, classifies the Zariski closure of the
group from parameter criteria, ships the n = 2, 3 integer models, and
cross-validates numerically through series and contour evaluation of
the underlying function F_C.
"""

from ._kernel import KERNEL_NAME
from .classify import ClassificationReport, classify, delta0_case, sl_determinant_note
from .cyclotomic import (CycNum, ParameterSet, UnitRoots, cyclotomic,
                         cyclotomic_polynomial, involution, rational,
                         unit_roots)
from .linalg import (ExactMatrix, SingularMatrixError, basis_vector, identity,
                     index_words, rkron, word_rank, word_weight)
from .models import (IntegerModel, gamma2_generator_check, load_fixture,
                     moebius_action_check, segre_quadric_check,
                     verify_change_of_basis)
from .monodromy import (MonodromySystem, ReflectionGen,
                        UndefinedIntersectionError, build_Gk, build_H,
                        build_M0, build_Mk, build_fI, build_MI,
                        build_reflection, build_v, delta0_value,
                        kernel_basis_of_N0, nu_matrix, run_identity_checks)
from .numerics import (ContourValue, ConvergenceError, DomainError,
                       GammaPoleError, SeriesConfig, SeriesValue,
                       TorusQuadrature, fc_contour, fc_series, gamma_value,
                       numeric_embed, torus_quadrature)
from .structure import (EnumerationResult, IrreducibilityVerdict,
                        ProbeResult, ReducibleWitness,
                        build_reducible_witness, check_irr,
                        conjugate_orbit_probe, enumerate_group,
                        verify_reducible_witness)

__version__ = "0.1.0"
