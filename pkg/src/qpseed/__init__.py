"""Quivers with potential from positive braid words.

Builds the face quiver and potential of a braid's plabic fence, mutates
them with exact reduction, walks exchange graphs with framed-seed
certificates, reports rigidity evidence, and checks point membership on
augmentation varieties.  A CLI (`qpseed`) and an HTTP service expose
the same operations.
"""

from .algebra import (
    Arrow,
    PathSum,
    Potential,
    cyc_normalize,
    cyclic_derivative,
    substitute,
    substitute_path_sum,
)
from .errors import (
    BraidSyntaxError,
    CertificateError,
    ConsistencyError,
    InputError,
    PreconditionError,
    QPSeedError,
    ReductionError,
)
from .fence import (
    BraidWord,
    PlabicFence,
    braid_from_fence,
    build_qp,
    faces,
    fence_from_braid,
    parse_braid,
    pente_rows_at,
    source_sequence,
)
from .mutation import (
    QP,
    MutationLog,
    Quiver,
    empty_cycles,
    local_reduce,
    mutate,
    premutate,
    probe_nondegeneracy,
    qp_equivalent,
    qp_isomorphism,
    split_reduced,
    two_acyclic,
)
from .rigidity import rigidity_certificate, trace_space_dims
from .walker import (
    ExchangeGraph,
    FramedSeed,
    b_matrix,
    canonical_key,
    explore,
    filling_certificate,
    fz_mutate,
)
from .augvar import (
    BraidMatrixSystem,
    braid_permutation,
    determinant,
    full_twist,
    link_components,
    mat_mul,
    p_matrix,
    residual,
    residual_is_zero,
)

__version__ = "0.1.0"
