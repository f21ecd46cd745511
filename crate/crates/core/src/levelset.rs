//! Domain discretization and level-set integral statistics.
//!
//! The Lebesgue measure on the box is replaced by a discrete quadrature
//! measure on grid nodes. A level set `{x : f(x) <= c}` is represented by
//! masking the nodes whose value exceeds `c` and keeping the quadrature mass
//! of the survivors, so integrals over a level set carry an `O(1/p)` boundary
//! error for `p` nodes per dimension.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::problem::{BoxDomain, MultiobjectiveProblem};

/// Default number of grid nodes.
pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case", tag = "scheme")]
pub enum GridScheme {
    /// Tensor grid with endpoints and product trapezoid weights.
    #[default]
    Trapezoid,
    /// Pseudo-random uniform points with equal weights `volume / N`.
    MonteCarlo { seed: u64 },
}

/// Quadrature nodes and weights over a box.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    dim: usize,
    points: Vec<f64>,
    quad_weights: Vec<f64>,
    total_measure: f64,
    per_dim_counts: Vec<usize>,
}

impl SampleGrid {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.quad_weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quad_weights.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.points.chunks_exact(self.dim)
    }

    pub fn quad_weights(&self) -> &[f64] {
        &self.quad_weights
    }

    pub fn total_measure(&self) -> f64 {
        self.total_measure
    }

    /// Nodes per dimension; empty for Monte Carlo grids.
    pub fn per_dim_counts(&self) -> &[usize] {
        &self.per_dim_counts
    }

    /// Grid from explicit nodes and weights.
    pub fn from_parts(dim: usize, points: Vec<f64>, quad_weights: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Config("grid dimension must be at least 1".into()));
        }
        check_len(quad_weights.len() * dim, points.len())?;
        if quad_weights.iter().any(|w| !(*w > 0.0 && w.is_finite())) {
            return Err(Error::Config("quadrature weights must be positive".into()));
        }
        let total_measure = quad_weights.iter().sum();
        Ok(Self {
            dim,
            points,
            quad_weights,
            total_measure,
            per_dim_counts: Vec::new(),
        })
    }

    /// Same nodes, each carrying weight `total_measure / N`.
    pub fn with_uniform_weights(&self) -> Self {
        let w = self.total_measure / self.len() as f64;
        Self {
            quad_weights: vec![w; self.len()],
            ..self.clone()
        }
    }
}

/// Largest `p` with `p^n <= budget`.
fn nodes_per_dim(budget: usize, n: usize) -> usize {
    let mut p = (budget as f64).powf(1.0 / n as f64).round() as usize;
    let fits = |p: usize| {
        (0..n)
            .try_fold(1usize, |acc, _| acc.checked_mul(p))
            .is_some_and(|v| v <= budget)
    };
    while p > 0 && !fits(p) {
        p -= 1;
    }
    while fits(p + 1) {
        p += 1;
    }
    p
}

/// 1-D trapezoid nodes and weights on `[lo, hi]` with `p >= 2` nodes.
pub(crate) fn trapezoid_1d(lo: f64, hi: f64, p: usize) -> (Vec<f64>, Vec<f64>) {
    let h = (hi - lo) / (p - 1) as f64;
    let nodes = (0..p)
        .map(|i| {
            if i == p - 1 {
                hi
            } else {
                (lo + (hi - lo) * i as f64 / (p - 1) as f64).clamp(lo, hi)
            }
        })
        .collect();
    let weights = (0..p)
        .map(|i| if i == 0 || i == p - 1 { h / 2.0 } else { h })
        .collect();
    (nodes, weights)
}

/// Tensor trapezoid grid with `floor(budget^(1/n))` nodes per dimension.
pub fn build_grid(domain: &BoxDomain, budget: usize) -> Result<SampleGrid> {
    build_grid_with(domain, budget, GridScheme::Trapezoid)
}

pub fn build_grid_with(
    domain: &BoxDomain,
    budget: usize,
    scheme: GridScheme,
) -> Result<SampleGrid> {
    let n = domain.dim();
    match scheme {
        GridScheme::Trapezoid => {
            let p = nodes_per_dim(budget, n);
            if p < 2 {
                return Err(Error::Config(format!(
                    "budget {budget} is below 2^{n}; need at least 2 nodes per dimension"
                )));
            }
            let axes: Vec<_> = (0..n)
                .map(|d| trapezoid_1d(domain.lower()[d], domain.upper()[d], p))
                .collect();
            let total = p.pow(n as u32);
            let mut points = Vec::with_capacity(total * n);
            let mut quad_weights = Vec::with_capacity(total);
            // Last coordinate varies fastest.
            let mut idx = vec![0usize; n];
            for _ in 0..total {
                let mut w = 1.0;
                for (d, &i) in idx.iter().enumerate() {
                    points.push(axes[d].0[i]);
                    w *= axes[d].1[i];
                }
                quad_weights.push(w);
                for d in (0..n).rev() {
                    idx[d] += 1;
                    if idx[d] < p {
                        break;
                    }
                    idx[d] = 0;
                }
            }
            Ok(SampleGrid {
                dim: n,
                points,
                quad_weights,
                total_measure: domain.volume(),
                per_dim_counts: vec![p; n],
            })
        }
        GridScheme::MonteCarlo { seed } => {
            if budget < 2 {
                return Err(Error::Config(format!(
                    "Monte Carlo grid needs at least 2 points, got {budget}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut points = Vec::with_capacity(budget * n);
            for _ in 0..budget {
                for d in 0..n {
                    let (lo, hi) = (domain.lower()[d], domain.upper()[d]);
                    points.push(lo + (hi - lo) * rng.gen::<f64>());
                }
            }
            let volume = domain.volume();
            Ok(SampleGrid {
                dim: n,
                points,
                quad_weights: vec![volume / budget as f64; budget],
                total_measure: volume,
                per_dim_counts: Vec::new(),
            })
        }
    }
}

/// Objective vectors at every grid node, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveTable {
    r: usize,
    data: Vec<f64>,
}

impl ObjectiveTable {
    /// Evaluates `problem` at every node of `grid` in parallel.
    pub fn evaluate(problem: &MultiobjectiveProblem, grid: &SampleGrid) -> Result<Self> {
        check_len(problem.dim(), grid.dim())?;
        let r = problem.num_objectives();
        let rows: Vec<Vec<f64>> = (0..grid.len())
            .into_par_iter()
            .map(|i| problem.evaluate_in_domain(grid.point(i)))
            .collect();
        let mut data = Vec::with_capacity(rows.len() * r);
        for (i, row) in rows.into_iter().enumerate() {
            check_len(r, row.len())?;
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite(format!(
                    "{} at grid point {:?}",
                    problem.id(),
                    grid.point(i)
                )));
            }
            data.extend(row);
        }
        Ok(Self { r, data })
    }

    pub fn from_rows(r: usize, rows: Vec<Vec<f64>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * r);
        for row in rows {
            check_len(r, row.len())?;
            data.extend(row);
        }
        Ok(Self { r, data })
    }

    pub fn num_objectives(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.r).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.r..(i + 1) * self.r]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.data.chunks_exact(self.r.max(1))
    }
}

/// Mean value, variance and modified variance of a function over `{f <= c}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelSetStats {
    pub c: f64,
    #[serde(rename = "measure")]
    pub in_measure: f64,
    #[serde(rename = "count")]
    pub in_count: usize,
    pub mean: f64,
    pub variance: f64,
    pub modified_variance: f64,
}

/// Discrete level-set statistics of `values` (aligned with the grid nodes) at threshold `c`.
pub fn level_set_stats(values: &[f64], grid: &SampleGrid, c: f64) -> Result<LevelSetStats> {
    check_len(grid.len(), values.len())?;
    if let Some(i) = values.iter().position(|v| v.is_nan()) {
        return Err(Error::NonFinite(format!("values[{i}] is NaN")));
    }
    let weights = grid.quad_weights();
    let mut mass = 0.0;
    let mut count = 0usize;
    let mut first = 0.0;
    for (&v, &w) in values.iter().zip(weights) {
        if v <= c {
            mass += w;
            count += 1;
            first += w * v;
        }
    }
    if count == 0 {
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        return Err(Error::EmptyLevelSet { min });
    }
    let mean = first / mass;
    let (mut central, mut about_c) = (0.0, 0.0);
    for (&v, &w) in values.iter().zip(weights) {
        if v <= c {
            central += w * (v - mean) * (v - mean);
            about_c += w * (v - c) * (v - c);
        }
    }
    Ok(LevelSetStats {
        c,
        in_measure: mass,
        in_count: count,
        mean,
        variance: central / mass,
        modified_variance: about_c / mass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize) -> BoxDomain {
        BoxDomain::cube(n, 0.0, 1.0).unwrap()
    }

    fn equal_weight_grid(n: usize) -> SampleGrid {
        SampleGrid::from_parts(1, (0..n).map(|i| i as f64).collect(), vec![1.0; n]).unwrap()
    }

    #[test]
    fn three_point_trapezoid_by_hand() {
        let g = build_grid(&unit(1), 3).unwrap();
        assert_eq!(
            g.points().flatten().copied().collect::<Vec<_>>(),
            vec![0.0, 0.5, 1.0]
        );
        assert_eq!(g.quad_weights(), &[0.25, 0.5, 0.25]);
        assert_eq!(g.total_measure(), 1.0);
    }

    #[test]
    fn grid_sizes() {
        let g = build_grid(&unit(2), 10_000).unwrap();
        assert_eq!(g.per_dim_counts(), &[100, 100]);
        assert_eq!(g.len(), 10_000);
        let g = build_grid(&unit(4), 10_000).unwrap();
        assert_eq!(g.per_dim_counts(), &[10; 4]);
        let g = build_grid(&unit(3), 10_000).unwrap();
        assert_eq!(g.per_dim_counts(), &[21; 3]);
        // Leftover budget is unused.
        let g = build_grid(&unit(2), 99).unwrap();
        assert_eq!(g.per_dim_counts(), &[9, 9]);
    }

    #[test]
    fn budget_too_small() {
        assert!(matches!(build_grid(&unit(3), 7), Err(Error::Config(_))));
        assert!(build_grid(&unit(3), 8).is_ok());
        assert!(build_grid(&unit(1), 1).is_err());
    }

    #[test]
    fn measure_matches_volume() {
        let d = BoxDomain::new(vec![-5.0, 0.0, 2.0], vec![10.0, 0.5, 3.0]).unwrap();
        let g = build_grid(&d, 1000).unwrap();
        let sum: f64 = g.quad_weights().iter().sum();
        assert!((sum - d.volume()).abs() <= 1e-9 * d.volume());
        for x in g.points() {
            d.check_contains(x).unwrap();
        }
        let mc = build_grid_with(&d, 500, GridScheme::MonteCarlo { seed: 1 }).unwrap();
        let sum: f64 = mc.quad_weights().iter().sum();
        assert!((sum - d.volume()).abs() <= 1e-9 * d.volume());
        for x in mc.points() {
            d.check_contains(x).unwrap();
        }
    }

    #[test]
    fn grid_endpoints_are_exact() {
        let d = BoxDomain::new(vec![-0.3], vec![0.7]).unwrap();
        let g = build_grid(&d, 7).unwrap();
        assert_eq!(g.point(0), &[-0.3]);
        assert_eq!(g.point(6), &[0.7]);
    }

    #[test]
    fn constant_values() {
        let g = equal_weight_grid(4);
        let s = level_set_stats(&[5.0; 4], &g, 7.0).unwrap();
        assert_eq!(s.mean, 5.0);
        assert_eq!(s.variance, 0.0);
        assert_eq!(s.modified_variance, 4.0);
        assert_eq!(s.in_count, 4);
    }

    #[test]
    fn one_two_three_by_hand() {
        let g = equal_weight_grid(3);
        let s = level_set_stats(&[1.0, 2.0, 3.0], &g, 2.0).unwrap();
        assert_eq!(s.in_count, 2);
        assert_eq!(s.in_measure, 2.0);
        assert_eq!(s.mean, 1.5);
        assert_eq!(s.variance, 0.25);
        assert_eq!(s.modified_variance, 0.5);
    }

    #[test]
    fn empty_level_set_reports_minimum() {
        let g = equal_weight_grid(3);
        assert_eq!(
            level_set_stats(&[1.0, 2.0, 3.0], &g, 0.5),
            Err(Error::EmptyLevelSet { min: 1.0 })
        );
    }

    #[test]
    fn single_point_limits() {
        let g = equal_weight_grid(3);
        let s = level_set_stats(&[1.0, 2.0, 3.0], &g, 1.25).unwrap();
        assert_eq!(s.in_count, 1);
        assert_eq!(s.variance, 0.0);
        assert_eq!(s.modified_variance, 0.0625);
    }

    #[test]
    fn nan_and_length_rejected() {
        let g = equal_weight_grid(3);
        assert!(level_set_stats(&[1.0, f64::NAN, 3.0], &g, 2.0).is_err());
        assert!(level_set_stats(&[1.0, 2.0], &g, 2.0).is_err());
    }

    #[test]
    fn quadrature_of_identity_on_unit_interval() {
        let g = build_grid(&unit(1), 101).unwrap();
        let values: Vec<f64> = g.points().map(|x| x[0]).collect();
        let all = level_set_stats(&values, &g, f64::INFINITY).unwrap();
        assert!((all.mean - 0.5).abs() < 1e-4);
        // Integral of (x - 1)^2 over [0, 1] is 1/3.
        let at_one = level_set_stats(&values, &g, 1.0).unwrap();
        assert!((at_one.modified_variance - 1.0 / 3.0).abs() < 1e-4);
    }

    #[test]
    fn uniform_and_trapezoid_means_agree() {
        let g = build_grid(&unit(2), 2500).unwrap();
        let u = g.with_uniform_weights();
        let values: Vec<f64> = g
            .points()
            .map(|x| (x[0] - 0.3).powi(2) + x[1].sin())
            .collect();
        let a = level_set_stats(&values, &g, f64::INFINITY).unwrap().mean;
        let b = level_set_stats(&values, &u, f64::INFINITY).unwrap().mean;
        assert!((a - b).abs() < 2.0 / 50.0, "{a} vs {b}");
    }

    #[test]
    fn objective_table_rows() {
        let p = crate::problem::registry_get("SCH1").unwrap();
        let g = build_grid(p.domain(), 16).unwrap();
        let t = ObjectiveTable::evaluate(&p, &g).unwrap();
        assert_eq!(t.len(), 16);
        assert_eq!(t.row(0), &[25.0, 49.0]);
        assert_eq!(t.row(15), &[100.0, 64.0]);
    }
}
