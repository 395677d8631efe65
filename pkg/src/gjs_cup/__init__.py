"""Exact Temperley-Lieb diagram calculus with cup-padding coordinates and
finite shift-operator checks."""

from .scalar import DELTA, ONE, Q, ZERO, Scalar, ScalarPoleError
from .diagrams import (
    Diagram,
    canonical_string,
    cap,
    catalan,
    close_pairing,
    concat_diagrams,
    enumerate_diagrams,
    from_pairs,
    from_string,
    reflect,
    stitch,
)
from .algebra import (
    GradedElement,
    OperatorMatrix,
    adjoint,
    bullet,
    combine,
    inner,
    left_matrix,
    multiply,
    norm2,
    right_matrix,
    trace,
)
from .cups import (
    CupLabel,
    MidLabel,
    ThetaBasis,
    check_cup_action,
    compute_Vn,
    cup_power,
    dimension_identity,
    membership,
    qj_projector,
    theta_coords,
)
from .shift import (
    ShiftTruncation,
    chebyshev,
    check_psi_intertwining,
    inner_nu,
    moment_crosscheck,
    r_function_min,
    semicircle_moment,
    telescoping_check,
    vi_identity_check,
)
from .aop import (
    ExpansionReport,
    bullet_closure_check,
    expansion_check,
    orthogonality_check,
    pythagoras_certificate,
)
from .expr import evaluate, parse, to_text
from .reports import Report

__version__ = "0.1.0"
