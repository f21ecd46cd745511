//! Derivative-free global multiobjective optimization by the mean value of level sets.
//!
//! A vector objective is scalarized with a weighted Chebyshev (or weighted
//! sum) function. The scalar problem is solved globally by iterating
//! `c_{k+1} = M(f, c_k)`, the mean of `f` over the level set `{f <= c_k}`,
//! until the modified variance on the level set drops below a tolerance.
//! Integrals are taken with respect to a quadrature measure on a grid over
//! the box domain. Repeating the solve over random strictly positive weights
//! yields an approximation of the weak Pareto front.
//!
//! ```
//! use mvlsm_core::{build_front, registry_get, FrontConfig};
//!
//! let problem = registry_get("SCH1").unwrap();
//! let config = FrontConfig { num_weights: 20, grid_budget: 2000, apply_filter: true, ..FrontConfig::default() };
//! let front = build_front(&problem, &config).unwrap();
//! assert!(!front.points.is_empty());
//! ```

pub mod error;
pub mod front;
pub mod io;
pub mod levelset;
pub mod metrics;
pub mod problem;
pub mod scalarize;
pub mod solver;

pub use error::{Error, Result};
pub use front::{
    build_front, build_front_with_weights, draw_weights, pareto_dominates, strictly_dominates,
    weak_nondominated_filter, FrontApproximation, FrontConfig, FrontContext, FrontPoint, RunRecord,
};
pub use levelset::{
    build_grid, build_grid_with, level_set_stats, GridScheme, LevelSetStats, ObjectiveTable,
    SampleGrid, DEFAULT_BUDGET,
};
pub use metrics::{
    default_reference_point, hypervolume, performance_profile, purity, reference_front,
    ProfileCurve, ReferenceFront, DEFAULT_MATCH_TOL,
};
pub use problem::{
    registry_get, registry_ids, registry_problems, AnalyticFront, BoxDomain, MultiobjectiveProblem,
    ObjectiveVector,
};
pub use scalarize::{
    chebyshev, ideal_from_table, ideal_point, normalize_weights, random_weight, weighted_sum,
    IdealPointInfo, Scalarization, ScalarizationKind, WeightVector, DEFAULT_XI,
};
pub use solver::{
    minimizer_points, solve, InitialLevel, SolveStatus, SolveTrace, SolverConfig, DEFAULT_C0,
    DEFAULT_EPSILON, DEFAULT_K_MAX,
};
