"""modnc: exact enumeration and asymptotics of modular k-noncrossing diagrams.

A diagram on [1..n] is a partial matching drawn with arcs in the upper
half-plane; it is modular (for a crossing bound k) when no k arcs mutually
cross, every arc spans at least four positions, and every arc sits in a
stack of at least two parallel arcs.  This package computes the number of
such diagrams exactly for k = 2..9, validates every closed form against
brute-force enumeration, and certifies the exponential growth rates by
exact rational root isolation.
"""

from .series_kernel import (
    ComputationError,
    MultiPoly,
    PowerSeries,
    Rational,
    as_integer,
)
from .matchings import count_matchings, fk_series, rho, table1_root_check
from .oracle import (
    ColorStats,
    Diagram,
    color_stats,
    count_modular,
    enumerate_vk_shapes,
    is_modular,
    max_mutual_crossing,
)
from .shape_gf import (
    ShapeTable,
    ik_bivariate,
    ik_colored,
    verify_recursion_u2,
    verify_recursion_u3,
    verify_recursion_u4,
    wk_trivariate,
)
from .diagram_gf import (
    BuildingBlocks,
    building_blocks,
    q2_series,
    qk_series,
    remark_mismatch,
    verify_sigma_identity,
)
from .asymptotics import (
    GrowthReport,
    constant_fit,
    dominant_singularity,
    growth_table,
    singularity_polynomial,
    subexp_fit,
    theta_derivative_nonzero,
)

__version__ = "0.1.0"

__all__ = [
    "BuildingBlocks", "ColorStats", "ComputationError", "Diagram",
    "GrowthReport", "MultiPoly", "PowerSeries", "Rational", "ShapeTable",
    "as_integer", "building_blocks", "color_stats", "constant_fit",
    "count_matchings", "count_modular", "dominant_singularity",
    "enumerate_vk_shapes", "fk_series", "growth_table", "ik_bivariate",
    "ik_colored", "is_modular", "max_mutual_crossing", "q2_series",
    "qk_series", "remark_mismatch", "rho", "singularity_polynomial",
    "subexp_fit", "table1_root_check", "theta_derivative_nonzero",
    "verify_recursion_u2", "verify_recursion_u3", "verify_recursion_u4",
    "verify_sigma_identity", "wk_trivariate",
]
