"""Faces, refinements and intersections of fractal cubes given by digit sets."""

from .digits import (
    DigitSet, boundary_digits, face_digits, make_digit_set, normalize_face,
    project_digits, refine, section_digits,
)
from .errors import DimensionMismatch, FractalCubeError, GuardExceeded, ParseError
from .faces import (
    FaceVector, boundary_face_vectors, complementary_set, enumerate_face_vectors,
    is_complementary, is_subface, positive_part,
)
from .intersection import (
    AnalysisReport, CardinalityClass, DimensionValue, IntersectionProblem, StructureGraph,
    analyze, build_structure_graph, classify_cardinality, dimension, enumerate_finite_points,
    g_edge_set, g_set, measure_finite, reachable, self_intersection_report,
)

__version__ = "0.1.0"
