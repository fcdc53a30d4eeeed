"""Geodesic t-spanners of low complexity inside polygons.

The package builds sparse graphs on point sites where edges are geodesic
paths and the total number of segments, not the number of edges, is the
complexity that gets bounded.
"""

from .domain_spanner import (
    Separator,
    SubInstance,
    balanced_sp_separator,
    build_domain_spanner,
    split_domain,
)
from .errors import (
    DegenerateInputError,
    GeospannerError,
    InvalidEpsilonError,
    InvalidParamsError,
    InvalidPolygonError,
    OutsidePolygonError,
    ParseError,
    VerificationError,
)
from .generators import (
    LowerBoundInstance,
    gen_lower_bound_3eps,
    gen_lower_bound_general,
    random_domain,
    random_simple_polygon,
    random_sites,
)
from .geodesic import GeodesicPath, geodesic_distance, shortest_path
from .io_formats import (
    PolygonInstance,
    read_instance,
    read_spanner,
    spanner_from_file,
    write_instance,
    write_spanner,
)
from .metrics import (
    ScalingResult,
    SpannerReport,
    all_pairs_geodesic,
    hop_count,
    measure,
    scaling_experiment,
)
from .polygon import PolygonalDomain, SimplePolygon
from .refinement import build_refined_spanner
from .render_svg import render_svg
from .simple_spanner import build_simple_spanner
from .spanner_graph import SpannerGraph
from .trapezoids import TrapezoidalDecomposition, decompose
from .triangulation import Triangulation, triangulate
from .visibility import domain_geodesic
from .weighted_line import WeightedSite1D, build_2spanner, build_grouped_spanner

__all__ = [
    "DegenerateInputError",
    "GeodesicPath",
    "GeospannerError",
    "InvalidEpsilonError",
    "InvalidParamsError",
    "InvalidPolygonError",
    "LowerBoundInstance",
    "OutsidePolygonError",
    "ParseError",
    "PolygonInstance",
    "PolygonalDomain",
    "ScalingResult",
    "Separator",
    "SimplePolygon",
    "SpannerGraph",
    "SpannerReport",
    "SubInstance",
    "TrapezoidalDecomposition",
    "Triangulation",
    "VerificationError",
    "WeightedSite1D",
    "all_pairs_geodesic",
    "balanced_sp_separator",
    "build_2spanner",
    "build_domain_spanner",
    "build_grouped_spanner",
    "build_refined_spanner",
    "build_simple_spanner",
    "decompose",
    "domain_geodesic",
    "gen_lower_bound_3eps",
    "gen_lower_bound_general",
    "geodesic_distance",
    "hop_count",
    "measure",
    "random_domain",
    "random_simple_polygon",
    "random_sites",
    "read_instance",
    "read_spanner",
    "render_svg",
    "scaling_experiment",
    "shortest_path",
    "spanner_from_file",
    "split_domain",
    "triangulate",
    "write_instance",
    "write_spanner",
]

__version__ = "0.1.0"
