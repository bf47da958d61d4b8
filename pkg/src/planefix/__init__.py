"""Fixed points of plane homeomorphisms near invariant continua.

Index computations along polygonal curves, dyadic disc approximations of
grid continua, and a certification pipeline that locates fixed points by
degree bisection.
"""
__version__ = "0.1.0"

from .kernels import BACKEND
from .errors import *  # noqa: F401,F403
from .geometry import Point2, PolyCurve, Segment, circle, rectangle
from .maps import PlaneMap, parse_map
from .index import IndexCertificate, IndexConfig, index_along, index_batch, arc_index_difference
from .grid import GridContinuum, build_disc, access_segments, parse_continuum, read_grid, write_grid
from .fixedpoint import (
    CutClass,
    CutRegion,
    FixedPointFound,
    FixedPointResult,
    IndexWitness,
    PipelineConfig,
    certify_theorem_a,
    certify_theorem_d,
    check_invariance,
    classify_cut,
    locate_by_subdivision,
    two_fixed_points_scenario,
)
