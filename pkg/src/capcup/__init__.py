"""Combinatorial configurations of caps and cups.

A configuration is a linearly ordered vertex set with every triple marked
as a cap or a cup.  The package covers ingestion of planar point sets,
chain tables and gon detection, slope labelings and the alpha-statistic,
constructive witnesses with independent certificate checking, and an
exhaustive search engine.
"""

from .certificate import (
    Certificate,
    InterweavedPair,
    LacedCup,
    format_certificate,
    is_interweaved,
    parse_certificate,
    verify_certificate,
)
from .chains import (
    CAP,
    CUP,
    Chain,
    ChainTables,
    GonWitness,
    SourceSizes,
    find_forbidden,
    gon_search,
    is_chain,
)
from .configuration import (
    Configuration,
    Orientation,
    format_configuration,
    is_mirror_canonical,
    mirror,
    parse_configuration,
    restrict,
)
from .errors import (
    CapCupError,
    DegenerateInputError,
    ForbiddenPatternError,
    ParseError,
    PreconditionError,
    ProofInvariantError,
)
from .generators import capcup_extremal_points, random_point_set
from .labeling import (
    AlphaBetaPlane,
    AlphaStatistic,
    GridSimplex,
    SlopeLabeling,
    alpha_beta_plane,
    alpha_statistic,
    canonical_labeling,
    grid_simplex,
    mirror_labeling,
    validate_labeling,
)
from .points import (
    PointSet,
    configuration_from_points,
    format_points,
    orient_points,
    parse_points,
    shear_to_distinct_x,
)
from .render import render_ascii, render_svg
from .search import (
    AvoidanceSpec,
    SearchReport,
    check_conjecture_k,
    check_main_theorem,
    count_free,
    enumerate_free,
    k_family,
    max_free_size,
    random_free_configuration,
    random_walk_free,
    realizable_free_sample,
)
from .witness import (
    find_gon,
    find_interweaved_laced_pair,
    full_grid_family,
    gon_from_interweaved_pair,
    lacing_witness,
)

__version__ = "0.1.0"
