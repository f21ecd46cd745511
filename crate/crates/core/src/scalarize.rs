//! Weight vectors, ideal/utopian points and the two scalarizations.

use rand::distributions::Open01;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::levelset::{ObjectiveTable, SampleGrid};
use crate::problem::MultiobjectiveProblem;

/// Default offset between the ideal and the utopian point, per objective.
pub const DEFAULT_XI: f64 = 1e-4;

/// Nonnegative weights with unit L1 norm. `strict` marks all entries positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    entries: Vec<f64>,
    strict: bool,
}

impl WeightVector {
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Divides `raw` by its L1 norm.
pub fn normalize_weights(raw: &[f64]) -> Result<WeightVector> {
    if raw.len() < 2 {
        return Err(Error::InvalidWeights(format!(
            "need at least 2 entries, got {}",
            raw.len()
        )));
    }
    if let Some(i) = raw.iter().position(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::InvalidWeights(format!(
            "entry {i} = {} is negative or not finite",
            raw[i]
        )));
    }
    let norm: f64 = raw.iter().sum();
    if norm <= 0.0 {
        return Err(Error::InvalidWeights("all entries are zero".into()));
    }
    Ok(WeightVector {
        entries: raw.iter().map(|w| w / norm).collect(),
        strict: raw.iter().all(|&w| w > 0.0),
    })
}

/// Draws `r` entries uniformly from the open interval (0, 1) and normalizes them.
pub fn random_weight<R: Rng + ?Sized>(r: usize, rng: &mut R) -> Result<WeightVector> {
    if r < 2 {
        return Err(Error::InvalidWeights(format!("need r >= 2, got {r}")));
    }
    let raw: Vec<f64> = (0..r).map(|_| rng.sample(Open01)).collect();
    normalize_weights(&raw)
}

/// `sum_l w_l f_l`.
pub fn weighted_sum(weights: &WeightVector, f: &[f64]) -> Result<f64> {
    check_len(weights.len(), f.len())?;
    Ok(weighted_sum_unchecked(&weights.entries, f))
}

/// `max_l w_l (f_l - u_l)`.
pub fn chebyshev(weights: &WeightVector, utopian: &[f64], f: &[f64]) -> Result<f64> {
    check_len(weights.len(), utopian.len())?;
    check_len(weights.len(), f.len())?;
    Ok(chebyshev_unchecked(&weights.entries, utopian, f))
}

fn weighted_sum_unchecked(w: &[f64], f: &[f64]) -> f64 {
    w.iter().zip(f).map(|(w, f)| w * f).sum()
}

fn chebyshev_unchecked(w: &[f64], u: &[f64], f: &[f64]) -> f64 {
    w.iter()
        .zip(u)
        .zip(f)
        .map(|((w, u), f)| w * (f - u))
        .fold(f64::NEG_INFINITY, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ScalarizationKind {
    #[default]
    Chebyshev,
    WeightedSum,
}

impl ScalarizationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalarizationKind::Chebyshev => "chebyshev",
            ScalarizationKind::WeightedSum => "weighted-sum",
        }
    }
}

impl std::str::FromStr for ScalarizationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "chebyshev" => Ok(ScalarizationKind::Chebyshev),
            "weighted-sum" => Ok(ScalarizationKind::WeightedSum),
            other => Err(Error::Config(format!("unknown scalarization `{other}`"))),
        }
    }
}

/// A weighted scalarization `R^r -> R`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scalarization {
    WeightedSum {
        weights: WeightVector,
    },
    Chebyshev {
        weights: WeightVector,
        utopian: Vec<f64>,
    },
}

impl Scalarization {
    pub fn weighted_sum(weights: WeightVector) -> Self {
        Scalarization::WeightedSum { weights }
    }

    pub fn chebyshev(weights: WeightVector, utopian: Vec<f64>) -> Result<Self> {
        check_len(weights.len(), utopian.len())?;
        Ok(Scalarization::Chebyshev { weights, utopian })
    }

    /// Builds the scalarization of `kind`; the utopian vector is only used by Chebyshev.
    pub fn of_kind(
        kind: ScalarizationKind,
        weights: WeightVector,
        utopian: &[f64],
    ) -> Result<Self> {
        match kind {
            ScalarizationKind::WeightedSum => Ok(Self::weighted_sum(weights)),
            ScalarizationKind::Chebyshev => Self::chebyshev(weights, utopian.to_vec()),
        }
    }

    pub fn kind(&self) -> ScalarizationKind {
        match self {
            Scalarization::WeightedSum { .. } => ScalarizationKind::WeightedSum,
            Scalarization::Chebyshev { .. } => ScalarizationKind::Chebyshev,
        }
    }

    pub fn weights(&self) -> &WeightVector {
        match self {
            Scalarization::WeightedSum { weights } | Scalarization::Chebyshev { weights, .. } => {
                weights
            }
        }
    }

    pub fn num_objectives(&self) -> usize {
        self.weights().len()
    }

    pub fn value(&self, f: &[f64]) -> Result<f64> {
        check_len(self.num_objectives(), f.len())?;
        Ok(self.value_unchecked(f))
    }

    pub(crate) fn value_unchecked(&self, f: &[f64]) -> f64 {
        match self {
            Scalarization::WeightedSum { weights } => weighted_sum_unchecked(&weights.entries, f),
            Scalarization::Chebyshev { weights, utopian } => {
                chebyshev_unchecked(&weights.entries, utopian, f)
            }
        }
    }

    /// Scalarized values at every row of `table`.
    pub fn apply(&self, table: &ObjectiveTable) -> Result<Vec<f64>> {
        check_len(self.num_objectives(), table.num_objectives())?;
        Ok(table.rows().map(|f| self.value_unchecked(f)).collect())
    }
}

/// Ideal point `F*`, offset `xi` and utopian point `u* = F* - xi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdealPointInfo {
    pub ideal: Vec<f64>,
    pub xi: Vec<f64>,
    pub utopian: Vec<f64>,
}

/// Minimizes each objective over the grid points and offsets by `xi`.
pub fn ideal_point(
    problem: &MultiobjectiveProblem,
    grid: &SampleGrid,
    xi: &[f64],
) -> Result<IdealPointInfo> {
    let table = ObjectiveTable::evaluate(problem, grid)?;
    ideal_from_table(&table, xi)
}

/// Same as [`ideal_point`] over already evaluated objectives.
pub fn ideal_from_table(table: &ObjectiveTable, xi: &[f64]) -> Result<IdealPointInfo> {
    let r = table.num_objectives();
    check_len(r, xi.len())?;
    if let Some(i) = xi.iter().position(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::Config(format!(
            "xi[{i}] = {} must be positive",
            xi[i]
        )));
    }
    if table.is_empty() {
        return Err(Error::EmptyInput("grid has no points".into()));
    }
    let mut ideal = vec![f64::INFINITY; r];
    for row in table.rows() {
        for (m, &v) in ideal.iter_mut().zip(row) {
            *m = m.min(v);
        }
    }
    let utopian = ideal.iter().zip(xi).map(|(f, x)| f - x).collect();
    Ok(IdealPointInfo {
        ideal,
        xi: xi.to_vec(),
        utopian,
    })
}
