"""Least-squares set estimation over grid polytopes, with its theory bench.

Fit convex polytopes to indicator-regression data (Y = I(X in G) + noise),
select the vertex budget adaptively, and check the estimator's risk,
deviation, and lower-bound claims numerically at desk scale.
"""

from .adaptive import (
    AdaptConfig,
    AdaptResult,
    adapt_threshold,
    phi_rate,
    replay_selection,
    select_r_hat,
)
from .bounds import (
    ConstantsTable,
    HypothesisFamily,
    build_capped_ball,
    build_simplex_family,
    constants,
    hellinger_sq,
    kl_divergence,
    lower_bound_values,
    polytopal_approx_disk,
    verify_all,
    verify_cap_sandwich_2d,
)
from .estimator import (
    ClassSpec,
    FitResult,
    SearchConfig,
    anneal_minimize,
    convex_rate_r,
    criterion,
    estimate_polytope,
    exact_minimize,
)
from .geometry import (
    Ball,
    CapCarvedBall,
    ConvexBody,
    GridPolytope,
    MeasureEstimate,
    Polytope,
    cap_volume,
    contains,
    contains_many,
    dilation_area_2d,
    nikodym_distance,
    regular_polygon,
    snap_to_grid,
    sphere_packing,
    unit_ball_volume,
    volume,
)
from .harness import (
    RiskCurve,
    RPolicy,
    StudyConfig,
    TailTable,
    cli_dispatch,
    emit_csv,
    emit_svg_plot,
    fit_rate,
    run_risk_study,
    tail_study,
)
from .model import ModelConfig, Sample, generate_sample, read_sample, write_sample

__version__ = "0.1.0"

__all__ = [
    "AdaptConfig",
    "AdaptResult",
    "Ball",
    "CapCarvedBall",
    "ClassSpec",
    "ConstantsTable",
    "ConvexBody",
    "FitResult",
    "GridPolytope",
    "HypothesisFamily",
    "MeasureEstimate",
    "ModelConfig",
    "Polytope",
    "RPolicy",
    "RiskCurve",
    "Sample",
    "SearchConfig",
    "StudyConfig",
    "TailTable",
    "adapt_threshold",
    "anneal_minimize",
    "build_capped_ball",
    "build_simplex_family",
    "cap_volume",
    "cli_dispatch",
    "constants",
    "contains",
    "contains_many",
    "convex_rate_r",
    "criterion",
    "dilation_area_2d",
    "emit_csv",
    "emit_svg_plot",
    "estimate_polytope",
    "exact_minimize",
    "fit_rate",
    "generate_sample",
    "hellinger_sq",
    "kl_divergence",
    "lower_bound_values",
    "nikodym_distance",
    "phi_rate",
    "polytopal_approx_disk",
    "read_sample",
    "regular_polygon",
    "replay_selection",
    "run_risk_study",
    "select_r_hat",
    "snap_to_grid",
    "sphere_packing",
    "tail_study",
    "unit_ball_volume",
    "verify_all",
    "verify_cap_sandwich_2d",
    "volume",
    "write_sample",
]
