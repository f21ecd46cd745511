//! Mean-value fixed-point iteration on the level sets of a scalar function.
//!
//! Starting from a level `c_0` whose level set is nonempty, each step
//! computes the modified variance `VF = V1(f, c_k)` and then moves to the
//! mean value `c_{k+1} = M(f, c_k)`. The sequence is non-increasing and
//! bounded below by the minimum, and stops once `VF < epsilon`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_len, Error, Result};
use crate::levelset::SampleGrid;

pub const DEFAULT_C0: f64 = 1e8;
pub const DEFAULT_EPSILON: f64 = 1e-8;
pub const DEFAULT_K_MAX: usize = 1000;

/// Initial level `c_0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialLevel {
    Value(f64),
    /// One above the largest value, so the first level set is the whole grid.
    Auto,
}

impl Default for InitialLevel {
    fn default() -> Self {
        InitialLevel::Value(DEFAULT_C0)
    }
}

impl fmt::Display for InitialLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialLevel::Value(v) => write!(f, "{v}"),
            InitialLevel::Auto => f.write_str("auto"),
        }
    }
}

impl FromStr for InitialLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(InitialLevel::Auto);
        }
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .map(InitialLevel::Value)
            .ok_or_else(|| {
                Error::Config(format!("c0 must be a finite number or `auto`, got `{s}`"))
            })
    }
}

impl Serialize for InitialLevel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            InitialLevel::Value(v) => s.serialize_f64(*v),
            InitialLevel::Auto => s.serialize_str("auto"),
        }
    }
}

impl<'de> Deserialize<'de> for InitialLevel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(InitialLevel::Value(v)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub c0: InitialLevel,
    pub epsilon: f64,
    pub k_max: usize,
    /// Slack for extracting the terminal level set `{f <= c_bar + membership_tol}`.
    pub membership_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self::with_epsilon(DEFAULT_EPSILON)
    }
}

impl SolverConfig {
    /// Defaults with the given tolerance; `membership_tol` follows as `10 * sqrt(epsilon)`.
    pub fn with_epsilon(epsilon: f64) -> Self {
        Self {
            c0: InitialLevel::default(),
            epsilon,
            k_max: DEFAULT_K_MAX,
            membership_tol: 10.0 * epsilon.sqrt(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Config(format!(
                "epsilon must be >= 0, got {}",
                self.epsilon
            )));
        }
        if self.k_max == 0 {
            return Err(Error::Config("k_max must be at least 1".into()));
        }
        if !(self.membership_tol >= 0.0 && self.membership_tol.is_finite()) {
            return Err(Error::Config(format!(
                "membership_tol must be >= 0, got {}",
                self.membership_tol
            )));
        }
        if let InitialLevel::Value(v) = self.c0 {
            if !v.is_finite() {
                return Err(Error::Config("c0 must be finite".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Converged,
    HitIterationCap,
    EmptyInitialLevelSet,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Converged => "converged",
            SolveStatus::HitIterationCap => "hit_iteration_cap",
            SolveStatus::EmptyInitialLevelSet => "empty_initial_level_set",
        }
    }
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Levels visited by one run and its terminal level set.
///
/// `c_seq[k]` and `vf_seq[k]` are aligned: `vf_seq[k]` is the modified
/// variance at level `c_seq[k]`. One iteration is one such pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveTrace {
    pub c_seq: Vec<f64>,
    pub vf_seq: Vec<f64>,
    pub status: SolveStatus,
    /// Level at which the stopping test fired; `c_0` when the initial level set is empty.
    pub c_bar: f64,
    pub minimizer_indices: Vec<usize>,
    pub membership_tol: f64,
}

impl SolveTrace {
    pub fn iterations(&self) -> usize {
        self.c_seq.len()
    }

    pub fn is_converged(&self) -> bool {
        self.status == SolveStatus::Converged
    }

    pub fn final_vf(&self) -> Option<f64> {
        self.vf_seq.last().copied()
    }
}

impl Serialize for SolveTrace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Report<'a> {
            status: SolveStatus,
            c_bar: f64,
            iterations: usize,
            c_seq: &'a [f64],
            vf_seq: &'a [f64],
            minimizer_count: usize,
        }
        Report {
            status: self.status,
            c_bar: self.c_bar,
            iterations: self.iterations(),
            c_seq: &self.c_seq,
            vf_seq: &self.vf_seq,
            minimizer_count: self.minimizer_indices.len(),
        }
        .serialize(s)
    }
}

/// Runs the iteration on `values` sampled at the nodes of `grid`.
pub fn solve(values: &[f64], grid: &SampleGrid, config: &SolverConfig) -> Result<SolveTrace> {
    config.validate()?;
    check_len(grid.len(), values.len())?;
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("values[{i}] = {}", values[i])));
    }
    if values.is_empty() {
        return Err(Error::EmptyInput("no values to minimize".into()));
    }
    let weights = grid.quad_weights();
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });

    let c0 = match config.c0 {
        InitialLevel::Value(v) => v,
        InitialLevel::Auto => hi + 1.0,
    };
    if c0 < lo {
        return Ok(SolveTrace {
            c_seq: Vec::new(),
            vf_seq: Vec::new(),
            status: SolveStatus::EmptyInitialLevelSet,
            c_bar: c0,
            minimizer_indices: Vec::new(),
            membership_tol: config.membership_tol,
        });
    }

    let eps = config.epsilon;
    let mut c = c0;
    let mut c_seq = Vec::new();
    let mut vf_seq = Vec::new();
    let mut status = SolveStatus::HitIterationCap;

    for _ in 0..config.k_max {
        let mut mass = 0.0;
        let mut first = 0.0;
        let mut second = 0.0;
        let mut in_lo = f64::INFINITY;
        let mut in_hi = f64::NEG_INFINITY;
        for (&v, &w) in values.iter().zip(weights) {
            if v <= c {
                mass += w;
                first += w * v;
                second += w * (v - c) * (v - c);
                in_lo = in_lo.min(v);
                in_hi = in_hi.max(v);
            }
        }
        // c never drops below the smallest in-set value, so the set stays nonempty.
        debug_assert!(mass > 0.0);
        let vf = second / mass;
        let next = (first / mass).clamp(in_lo, in_hi);
        c_seq.push(c);
        vf_seq.push(vf);

        if vf < eps {
            status = SolveStatus::Converged;
            break;
        }
        if next >= c {
            // Plateau: the mean no longer moves. A constant in-set is an exact
            // discrete fixed point; otherwise only a near-zero VF counts.
            if vf < 10.0 * eps || in_lo == in_hi {
                status = SolveStatus::Converged;
            }
            break;
        }
        c = next;
    }

    let c_bar = c;
    let threshold = c_bar + config.membership_tol;
    let minimizer_indices = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v <= threshold)
        .map(|(i, _)| i)
        .collect();

    Ok(SolveTrace {
        c_seq,
        vf_seq,
        status,
        c_bar,
        minimizer_indices,
        membership_tol: config.membership_tol,
    })
}

/// Grid points of the terminal level set of a converged run.
pub fn minimizer_points(trace: &SolveTrace, grid: &SampleGrid) -> Result<Vec<Vec<f64>>> {
    if !trace.is_converged() {
        return Err(Error::NotConverged(trace.status.to_string()));
    }
    trace
        .minimizer_indices
        .iter()
        .map(|&i| {
            if i < grid.len() {
                Ok(grid.point(i).to_vec())
            } else {
                Err(Error::DimensionMismatch {
                    expected: grid.len(),
                    found: i + 1,
                })
            }
        })
        .collect()
}
