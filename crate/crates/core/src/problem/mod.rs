//! Box-constrained multiobjective problems and the built-in test suite.

mod registry;

pub use registry::{registry_get, registry_ids, registry_problems};

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};

/// Closed axis-aligned box `[lower, upper]` in `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxDomain {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxDomain {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidDomain("dimension must be at least 1".into()));
        }
        check_len(lower.len(), upper.len())?;
        for (i, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite()) {
                return Err(Error::InvalidDomain(format!("bound {i} is not finite")));
            }
            if lo >= hi {
                return Err(Error::InvalidDomain(format!(
                    "empty interior in coordinate {i}: [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The cube `[lo, hi]^n`.
    pub fn cube(n: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; n], vec![hi; n])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn volume(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| hi - lo)
            .product()
    }

    /// Checks that `x` lies in the closed box, reporting the first offending coordinate.
    pub fn check_contains(&self, x: &[f64]) -> Result<()> {
        check_len(self.dim(), x.len())?;
        for (index, ((&value, &lower), &upper)) in
            x.iter().zip(&self.lower).zip(&self.upper).enumerate()
        {
            // NaN fails both comparisons and is rejected here too.
            if !(value >= lower && value <= upper) {
                return Err(Error::DomainViolation {
                    index,
                    value,
                    lower,
                    upper,
                });
            }
        }
        Ok(())
    }
}

/// Image `F(x)` of a decision point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("objective {i} = {}", values[i])));
        }
        Ok(Self(values))
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ObjectiveVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<ObjectiveVector> for Vec<f64> {
    fn from(v: ObjectiveVector) -> Self {
        v.0
    }
}

/// Closed-form description of a problem's Pareto front, used to score approximations.
#[derive(Debug, Clone, Copy)]
pub enum AnalyticFront {
    /// Bi-objective front `f2 = curve(f1)` for `f1` in `[f1_min, f1_max]`.
    Curve {
        f1_min: f64,
        f1_max: f64,
        curve: fn(f64) -> f64,
    },
    /// Front on the positive orthant of the sphere `|F| = radius`.
    Sphere { radius: f64 },
}

impl AnalyticFront {
    /// Distance-like residual of `y` from the front: the vertical gap for
    /// curves, the radial gap for spheres.
    pub fn residual(&self, y: &[f64]) -> f64 {
        match *self {
            AnalyticFront::Curve { curve, .. } => (y[1] - curve(y[0])).abs(),
            AnalyticFront::Sphere { radius } => {
                (y.iter().map(|v| v * v).sum::<f64>().sqrt() - radius).abs()
            }
        }
    }

    /// Whether `y` lies on the front within `tol`, including the `f1` range for curves.
    pub fn contains(&self, y: &[f64], tol: f64) -> bool {
        let in_range = match *self {
            AnalyticFront::Curve { f1_min, f1_max, .. } => {
                y[0] >= f1_min - tol && y[0] <= f1_max + tol
            }
            AnalyticFront::Sphere { .. } => y.iter().all(|&v| v >= -tol),
        };
        in_range && self.residual(y) <= tol
    }
}

type ObjectiveFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// A vector objective `F: X -> R^r` over a box `X`.
///
/// Cloning is cheap; the objective closure is shared.
#[derive(Clone)]
pub struct MultiobjectiveProblem {
    id: String,
    domain: BoxDomain,
    num_objectives: usize,
    objective: Arc<ObjectiveFn>,
    analytic_front: Option<AnalyticFront>,
}

impl fmt::Debug for MultiobjectiveProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiobjectiveProblem")
            .field("id", &self.id)
            .field("n", &self.domain.dim())
            .field("r", &self.num_objectives)
            .field("analytic_front", &self.analytic_front.is_some())
            .finish()
    }
}

impl MultiobjectiveProblem {
    pub fn new<F>(
        id: impl Into<String>,
        domain: BoxDomain,
        num_objectives: usize,
        objective: F,
    ) -> Result<Self>
    where
        F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        if num_objectives < 2 {
            return Err(Error::Config(format!(
                "a multiobjective problem needs r >= 2, got {num_objectives}"
            )));
        }
        Ok(Self {
            id: id.into(),
            domain,
            num_objectives,
            objective: Arc::new(objective),
            analytic_front: None,
        })
    }

    pub fn with_analytic_front(mut self, front: AnalyticFront) -> Self {
        self.analytic_front = Some(front);
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn num_objectives(&self) -> usize {
        self.num_objectives
    }

    pub fn analytic_front(&self) -> Option<&AnalyticFront> {
        self.analytic_front.as_ref()
    }

    /// Evaluates `F(x)` after checking that `x` lies in the closed box.
    pub fn evaluate(&self, x: &[f64]) -> Result<ObjectiveVector> {
        self.domain.check_contains(x)?;
        let values = self.evaluate_in_domain(x);
        check_len(self.num_objectives, values.len())?;
        ObjectiveVector::new(values)
    }

    /// Evaluates without the domain check. Callers guarantee `x` is in the box.
    pub(crate) fn evaluate_in_domain(&self, x: &[f64]) -> Vec<f64> {
        (self.objective)(x)
    }
}
