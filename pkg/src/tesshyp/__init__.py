"""Finite truncations of a binary-subdivision plane tessellation family and
computational Gromov-hyperbolicity checks on them."""

__version__ = "0.1.0"

from .dyadic import Dyadic
from .graph import (
    DistanceField,
    Graph,
    VertexLabel,
    assemble,
    ball_subgraph,
    distance,
    single_source_distances,
)
from .generators import (
    GenConfig,
    build,
    build_half_period,
    build_period,
    build_square_grid,
    build_tessellation,
    center_vertex,
)
from .tiles import Face, TileSet, extract_tiles
from .hyperbolicity import (
    CurvePoint,
    DeltaReport,
    base_point_doubling_check,
    delta_at_base,
    delta_growth_curve,
    gromov_product,
)

__all__ = [
    "Dyadic",
    "Graph",
    "VertexLabel",
    "DistanceField",
    "assemble",
    "ball_subgraph",
    "distance",
    "single_source_distances",
    "GenConfig",
    "build",
    "build_half_period",
    "build_period",
    "build_tessellation",
    "build_square_grid",
    "center_vertex",
    "Face",
    "TileSet",
    "extract_tiles",
    "CurvePoint",
    "DeltaReport",
    "base_point_doubling_check",
    "delta_at_base",
    "delta_growth_curve",
    "gromov_product",
]
