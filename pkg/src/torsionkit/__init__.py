"""torsionkit: determinant lines, refined torsion of finite chirality
complexes, twisted CW cochain torsion, 1-D zeta-regularized spectra, and
temporal gauge fixing."""

from .chain import (
    Cohomology,
    DetLineElement,
    GradedComplex,
    NotAcyclicError,
    ShortExactSequenceData,
    canonical_iso,
    cohomology,
    cone,
    fusion,
    les_of_ses,
    torsion_acyclic,
    verify_complex,
)
from .chirality import (
    ChiralityComplex,
    OddSignatureData,
    admissible_lambdas,
    dual_differential,
    eta_xi_finite,
    graded_determinant,
    odd_signature,
    random_chirality_complex,
    refined_torsion_element,
    rho,
    small_complex,
    spectral_split,
)
from .cw import (
    CWData,
    Representation,
    build_cochain,
    build_relative,
    check_sigma_relation,
    sigma,
    sigma_boundary,
    sigma_relative,
    tau_section,
    transmission_split,
    trivial_representation,
    validate_representation,
)
from .gauge import (
    GaugeField,
    GaugeTransformation,
    curvature_residual,
    gauge_transform,
    monodromy,
    pure_gauge_field,
    solve_gauge_ode,
    temporal_residual,
)
from .holomorphy import (
    ComplexFamily,
    RepresentationCurve,
    SectionModel,
    cr_order,
    cr_residual,
    graded_det_along_curve,
    projection_derivative_check,
    section_ratio,
)
from .linalg import AgmonError, DegeneracyError, SpectralGapError, StructuralError
from .spectral import (
    CircleModel,
    IntervalModel,
    ZetaEvaluator,
    circle_laplace_spectrum,
    eta_circle,
    gluing_check_lesch,
    gluing_constant_K,
    graded_det_circle,
    interval_det,
    k_squared_holomorphy,
    rat_circle,
    zeta_det_laplacian_circle,
)

__version__ = "0.1.0"
