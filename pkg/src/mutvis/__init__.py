"""Mutual-visibility sets in Cartesian products of paths and cycles."""

from .constructions import (
    Family,
    InsertionPlan,
    UnsupportedSize,
    construct_cylinder,
    construct_torus,
    construct_torus_base,
    construct_torus_square,
    embed_cylinder,
    extend_torus,
    extend_torus_to,
    insertion_plan,
    lemma1_check,
)
from .grid import (
    Cycle,
    Factor,
    InputError,
    Kind,
    Path,
    ProductGraph,
    Vertex,
    circ_dist,
    circ_interval,
    dist,
    interval,
    lin_interval,
)
from .known import KnownValue, known_mu
from .solver import SolveReport, mu_exact, mu_lower_bound, upper_bound
from .visibility import (
    RefusalError,
    VertexSet,
    VisibilityReport,
    brute_force_paths,
    is_mutual_visibility_set,
    is_visible,
)

__version__ = "0.1.0"
