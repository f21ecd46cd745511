//! Weak Pareto front assembly from many scalarized solves.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::levelset::{build_grid_with, GridScheme, ObjectiveTable, SampleGrid, DEFAULT_BUDGET};
use crate::problem::MultiobjectiveProblem;
use crate::scalarize::{
    ideal_from_table, random_weight, IdealPointInfo, Scalarization, ScalarizationKind,
    WeightVector, DEFAULT_XI,
};
use crate::solver::{solve, SolveStatus, SolverConfig};

/// `a` is strictly better than `b` in every objective.
pub fn strictly_dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    check_len(a.len(), b.len())?;
    Ok(a.iter().zip(b).all(|(x, y)| x < y))
}

/// `a <= b` componentwise with at least one strict inequality.
pub fn pareto_dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    check_len(a.len(), b.len())?;
    Ok(pareto_dominates_unchecked(a, b))
}

pub(crate) fn pareto_dominates_unchecked(a: &[f64], b: &[f64]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        strict |= x < y;
    }
    strict
}

/// Indices of points not strictly dominated by any other point, in input order.
///
/// Pairwise `O(m^2)`; all points must share one length.
pub fn weak_nondominated_filter<P: AsRef<[f64]>>(points: &[P]) -> Result<Vec<usize>> {
    if let Some(first) = points.first() {
        let r = first.as_ref().len();
        for p in points {
            check_len(r, p.as_ref().len())?;
        }
    }
    Ok((0..points.len())
        .filter(|&i| {
            let b = points[i].as_ref();
            !points
                .iter()
                .any(|a| a.as_ref().iter().zip(b).all(|(x, y)| x < y))
        })
        .collect())
}

/// A candidate weak Pareto point with the weight that certifies it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontPoint {
    pub run_index: usize,
    pub grid_index: usize,
    pub x: Vec<f64>,
    pub fx: Vec<f64>,
    pub weight: WeightVector,
    pub c_bar: f64,
}

/// Outcome of one weight's solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run_index: usize,
    pub weights: Vec<f64>,
    pub status: SolveStatus,
    pub iterations: usize,
    pub c_bar: f64,
    pub minimizer_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontConfig {
    pub num_weights: usize,
    pub seed: u64,
    pub grid_budget: usize,
    pub grid_scheme: GridScheme,
    pub solver: SolverConfig,
    pub xi: f64,
    pub scalarization: ScalarizationKind,
    pub apply_filter: bool,
}

impl Default for FrontConfig {
    fn default() -> Self {
        Self {
            num_weights: 100,
            seed: 0,
            grid_budget: DEFAULT_BUDGET,
            grid_scheme: GridScheme::Trapezoid,
            solver: SolverConfig::default(),
            xi: DEFAULT_XI,
            scalarization: ScalarizationKind::Chebyshev,
            apply_filter: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontApproximation {
    pub problem_id: String,
    pub num_variables: usize,
    pub num_objectives: usize,
    pub config: FrontConfig,
    pub ideal: IdealPointInfo,
    pub filtered: bool,
    pub runs: Vec<RunRecord>,
    pub points: Vec<FrontPoint>,
}

impl FrontApproximation {
    pub fn objective_vectors(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(|p| p.fx.clone()).collect()
    }

    pub fn converged_runs(&self) -> usize {
        self.runs
            .iter()
            .filter(|r| r.status == SolveStatus::Converged)
            .count()
    }

    /// Mean iteration count over converged runs.
    pub fn mean_iterations(&self) -> f64 {
        let (sum, n) = self
            .runs
            .iter()
            .filter(|r| r.status == SolveStatus::Converged)
            .fold((0usize, 0usize), |(s, n), r| (s + r.iterations, n + 1));
        if n == 0 {
            0.0
        } else {
            sum as f64 / n as f64
        }
    }

    /// The scalarization a point was certified under.
    pub fn scalarization_for(&self, point: &FrontPoint) -> Result<Scalarization> {
        Scalarization::of_kind(
            self.config.scalarization,
            point.weight.clone(),
            &self.ideal.utopian,
        )
    }
}

/// Everything shared by the per-weight solves of one problem.
pub struct FrontContext<'a> {
    pub problem: &'a MultiobjectiveProblem,
    pub grid: SampleGrid,
    pub table: ObjectiveTable,
    pub ideal: IdealPointInfo,
}

impl<'a> FrontContext<'a> {
    pub fn new(problem: &'a MultiobjectiveProblem, config: &FrontConfig) -> Result<Self> {
        let grid = build_grid_with(problem.domain(), config.grid_budget, config.grid_scheme)?;
        let table = ObjectiveTable::evaluate(problem, &grid)?;
        let ideal = ideal_from_table(&table, &vec![config.xi; problem.num_objectives()])?;
        Ok(Self {
            problem,
            grid,
            table,
            ideal,
        })
    }
}

/// Draws `config.num_weights` strict weights from one seeded stream.
pub fn draw_weights(r: usize, num_weights: usize, seed: u64) -> Result<Vec<WeightVector>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..num_weights)
        .map(|_| random_weight(r, &mut rng))
        .collect()
}

/// Solves the scalarized problem for random strict weights and collects the minimizers.
pub fn build_front(
    problem: &MultiobjectiveProblem,
    config: &FrontConfig,
) -> Result<FrontApproximation> {
    if config.num_weights == 0 {
        return Err(Error::Config("num_weights must be at least 1".into()));
    }
    let weights = draw_weights(problem.num_objectives(), config.num_weights, config.seed)?;
    build_front_with_weights(problem, &weights, config)
}

/// [`build_front`] with caller-supplied weights. Non-strict weights are rejected.
pub fn build_front_with_weights(
    problem: &MultiobjectiveProblem,
    weights: &[WeightVector],
    config: &FrontConfig,
) -> Result<FrontApproximation> {
    if weights.is_empty() {
        return Err(Error::Config("at least one weight is required".into()));
    }
    for w in weights {
        check_len(problem.num_objectives(), w.len())?;
        if !w.is_strict() {
            return Err(Error::InvalidWeights(format!(
                "front construction needs strictly positive weights, got {:?}",
                w.entries()
            )));
        }
    }
    config.solver.validate()?;
    let ctx = FrontContext::new(problem, config)?;

    let solved: Vec<_> = weights
        .par_iter()
        .map(|w| {
            let scal = Scalarization::of_kind(config.scalarization, w.clone(), &ctx.ideal.utopian)?;
            let values = scal.apply(&ctx.table)?;
            solve(&values, &ctx.grid, &config.solver)
        })
        .collect::<Result<_>>()?;

    let mut runs = Vec::with_capacity(weights.len());
    let mut points = Vec::new();
    let mut seen = HashSet::new();
    for (run_index, (w, trace)) in weights.iter().zip(solved).enumerate() {
        runs.push(RunRecord {
            run_index,
            weights: w.entries().to_vec(),
            status: trace.status,
            iterations: trace.iterations(),
            c_bar: trace.c_bar,
            minimizer_count: trace.minimizer_indices.len(),
        });
        match trace.status {
            SolveStatus::Converged => {}
            SolveStatus::EmptyInitialLevelSet => {
                log::warn!(
                    "{}: run {run_index} skipped, initial level set empty",
                    problem.id()
                );
                continue;
            }
            SolveStatus::HitIterationCap => {
                log::warn!("{}: run {run_index} hit the iteration cap", problem.id());
                continue;
            }
        }
        for &i in &trace.minimizer_indices {
            if seen.insert(i) {
                points.push(FrontPoint {
                    run_index,
                    grid_index: i,
                    x: ctx.grid.point(i).to_vec(),
                    fx: ctx.table.row(i).to_vec(),
                    weight: w.clone(),
                    c_bar: trace.c_bar,
                });
            }
        }
    }

    if config.apply_filter && !points.is_empty() {
        let keep =
            weak_nondominated_filter(&points.iter().map(|p| p.fx.as_slice()).collect::<Vec<_>>())?;
        let keep: HashSet<usize> = keep.into_iter().collect();
        points = points
            .into_iter()
            .enumerate()
            .filter(|(i, _)| keep.contains(i))
            .map(|(_, p)| p)
            .collect();
    }

    Ok(FrontApproximation {
        problem_id: problem.id().to_string(),
        num_variables: problem.dim(),
        num_objectives: problem.num_objectives(),
        config: config.clone(),
        ideal: ctx.ideal,
        filtered: config.apply_filter,
        runs,
        points,
    })
}
