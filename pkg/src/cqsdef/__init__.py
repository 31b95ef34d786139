"""Exact-arithmetic toolkit for one-parameter toric deformations of
two-dimensional cyclic quotient singularities."""

from .lattice import (
    Cone2,
    ContinuedFraction,
    Vec2,
    cf_eval,
    cf_expand,
    dual_cone,
    hilbert_basis_2d,
    primitive,
)
from .cqs import (
    CqsModel,
    HypersurfaceError,
    InvalidSingularityError,
    cqs_new,
    from_display_coords,
    is_rdp,
    is_t_singularity,
    to_display_coords,
)
from .chains import (
    NormalForm,
    ZeroChain,
    alpha_seq,
    blow_down,
    chain_to_nq,
    enumerate_K,
    rdp_chain,
    special_k,
)
from .minkowski import (
    Decomposition,
    Segment,
    enum_decompositions,
    lattice_point_count,
    segment,
    segment_length,
)
from .totalspace import (
    Deformation,
    EquationSet,
    GeneratorRelations,
    VersalMap,
    build_deformation,
    components_of,
    deformation_equations,
    generator_relations,
    lies_in_component,
    nu_count,
    theta_rewrite,
    versal_map,
)
from .fibers import SingularityList, general_fiber, is_smoothing
from .resolutions import (
    Fan3,
    FanDecomposition,
    PResolutionFan,
    assemble_fan3,
    canonical_model,
    canonical_model_via_hull,
    fan_decomposition,
    is_canonical_cone3,
    lattice_points_right,
    p_resolution_fan,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
