"""Exact computations with multi-fans and multi-polytopes.

Multi-fans generalize fans of toric geometry: cones may overlap and repeat,
and each top-dimensional cone carries a pair of nonnegative weights.  The
package computes their covering degree, completeness, h/e-vectors, genus
and signature; Duistermaat-Heckman functions and winding numbers of
multi-polytopes; Ehrhart polynomials with reciprocity; and three mutually
validating lattice-point counts (shifted DH summation, character
localization, Todd formulas).  All core arithmetic is exact.
"""

__version__ = "0.1.0"

from .linalg import (
    DimensionMismatch,
    FiniteQuotient,
    QuotientMap,
    SingularMatrix,
    UnityRoot,
    character,
    dual_basis,
    pairing,
    quotient_group,
    quotient_projection,
    smith_normal_form,
)
from .fan import (
    ConeFrame,
    FanInvariants,
    GenericityError,
    InvalidFan,
    MultiFan,
    NotComplete,
    boundary_cycle_check,
    decompose_star,
    degree,
    e_vector,
    h_vector,
    invariants,
    is_complete,
    is_generic,
    is_precomplete,
    local_degree,
    minimal_normalize,
    project,
    random_generic_vector,
    signature,
    ty_genus,
    validate,
)
from .polytope import (
    SHIFT_EXACT,
    SHIFT_MINUS,
    SHIFT_PLUS,
    MultiPolytope,
    OnHyperplane,
    dh_eval,
    dh_eval_framed,
    dh_frames,
    project_polytope,
    wall_crossing_check,
    wn_eval,
)
from .ehrhart import (
    EhrhartPoly,
    character_identity_check,
    character_series_eval,
    count,
    count_interior,
    dilate,
    ehrhart_polynomial,
    lattice_dh_values,
    reciprocity_check,
    support_box,
)
from .cohomology import (
    FaceRingElement,
    chern_class,
    equivariant_todd_class,
    exp_class,
    face_reduce,
    index,
    index_value_at,
    integral,
    kp_count,
    pullback,
    restrict,
    todd_class,
    todd_count,
    volume,
    volume_polynomial,
)
from .document import FormatError, parse, serialize
from .fixtures import example, example_document, example_names
from .grid import DHSample, grid_samples

__all__ = [name for name in dir() if not name.startswith("_")]
