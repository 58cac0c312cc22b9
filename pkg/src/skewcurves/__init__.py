"""Skew evolutes, skew involutes and the map M_alpha on hedgehogs."""

__version__ = "0.1.0"

from .errors import (
    DegenerateCurveError,
    NoClosedInvoluteError,
    NonConvexError,
    RightAngleError,
    SkewCurveError,
    StationaryLineError,
)
from .support import (
    FourierSupport,
    PlaneCurveSamples,
    amplitudes,
    curvature_radius,
    curve_point,
    cusp_count,
    cusp_locations,
    evaluate,
    radius_energy,
    sample_curve,
    sign_changes,
    signed_area,
    signed_length,
    steiner_point,
)
from .transforms import (
    HarmonicMultiplier,
    d_multiplier,
    m_map,
    m_multiplier,
    skew_evolute,
    skew_involute,
)
from .gutkin import GutkinRoot, fattened_hypocycloid, gutkin_roots, verify_invariant
from .dynamics import (
    IterationTrace,
    TorusState,
    cusp_growth,
    equidistribution_stat,
    iterate,
    shape_distance,
    torus_orbit,
)
from .oracle import (
    OrientedLine,
    ParametricCurve,
    envelope_point,
    open_support_evolute,
    oracle_deviation,
    rotated_tangent,
    skew_evolute_numeric,
    spiral_pair_congruence,
)
