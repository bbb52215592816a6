"""Left-invariant pseudo-Riemannian metrics on the Lie groups of real hyperbolic
space and the three-dimensional Heisenberg group: orbit classification,
Milnor-type frames and curvature.
"""
from .errors import (
    DegenerateMetric,
    DegeneratePlane,
    InternalConsistencyError,
    InvalidAlgebra,
    NotSymmetric,
    PseudoMilnorError,
    SingularMatrix,
    UnsupportedAlgebra,
    UnsupportedSignature,
    ZeroPair,
)
from .forms import (
    DEFAULT_TOL,
    MetricTensor,
    SignatureMatrix,
    act_on_metric,
    ipq,
    is_in_O_pq,
    jacobi_eigh,
    pseudo_orthonormalize,
    signature,
    symmetric_eigen,
)
from .lie import (
    GroupElementWitness,
    LieAlgebra,
    abelian,
    derivation_space,
    heisenberg3,
    is_automorphism,
    is_derivation,
    is_in_q1,
    is_in_q1_transpose,
    jacobi_check,
    rhn,
)
from .reduction import (
    O11Normalization,
    ReductionResult,
    dual_reduce,
    dual_representative,
    o11_normalize,
    q1_reduce,
    reduce_metric,
    representative,
    synthesize_metric,
)
from .frames import (
    FrameCheck,
    MilnorFrame,
    RahmaniForm,
    canonical_table,
    milnor_frame,
    milnor_frame_h3,
    milnor_frame_rhn,
    rahmani_form,
    verify_frame,
)
from .curvature import (
    ConnectionTable,
    CurvatureReport,
    CurvatureTensor,
    classify_curvature,
    curvature_tensor,
    einstein_residual,
    levi_civita,
    levi_civita_koszul,
    ricci,
    ricci_operator,
    sample_sectional,
    scalar_curvature,
    sectional,
    soliton_fit,
    u_operator,
    wedge,
)
from .hyperbolic import normalized_constant, predicted_constant, realize_constant_curvature

__version__ = "0.1.0"
