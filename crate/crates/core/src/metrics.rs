//! Front-quality metrics and performance profiles.
//!
//! * [`purity`] measures the share of a front that survives in the
//!   nondominated union of all compared fronts ([`reference_front`]).
//! * [`hypervolume`] is the measure of the objective-space region dominated
//!   by a front and bounded above by a reference point. Two objectives use a
//!   sort-and-sweep over rectangles; three objectives sweep the third
//!   coordinate and accumulate 2-D slices.
//! * [`performance_profile`] builds Dolan–Moré curves from a
//!   solvers × problems cost matrix.

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::front::pareto_dominates_unchecked;

/// Default componentwise tolerance when matching points against a reference front.
pub const DEFAULT_MATCH_TOL: f64 = 1e-6;

/// Nondominated union of several fronts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceFront {
    pub points: Vec<Vec<f64>>,
    /// For each input front, how many reference points it contains.
    pub source_counts: Vec<usize>,
}

pub fn reference_front(fronts: &[Vec<Vec<f64>>]) -> Result<ReferenceFront> {
    let r = fronts
        .iter()
        .flatten()
        .next()
        .map(Vec::len)
        .ok_or_else(|| Error::EmptyInput("all fronts are empty".into()))?;
    let mut union: Vec<Vec<f64>> = Vec::new();
    for p in fronts.iter().flatten() {
        check_len(r, p.len())?;
        if !union.iter().any(|q| q == p) {
            union.push(p.clone());
        }
    }
    let points: Vec<Vec<f64>> = union
        .iter()
        .filter(|p| !union.iter().any(|q| pareto_dominates_unchecked(q, p)))
        .cloned()
        .collect();
    let source_counts = fronts
        .iter()
        .map(|front| {
            points
                .iter()
                .filter(|ref_pt| front.iter().any(|p| p == *ref_pt))
                .count()
        })
        .collect();
    Ok(ReferenceFront {
        points,
        source_counts,
    })
}

/// Fraction of `front` matching a reference point within `match_tol` in every component.
pub fn purity(front: &[Vec<f64>], reference: &ReferenceFront, match_tol: f64) -> Result<f64> {
    if front.is_empty() {
        return Err(Error::UndefinedPurity);
    }
    let matched = front
        .iter()
        .filter(|p| {
            reference.points.iter().any(|q| {
                q.len() == p.len()
                    && q.iter()
                        .zip(p.iter())
                        .all(|(a, b)| (a - b).abs() <= match_tol)
            })
        })
        .count();
    Ok(matched as f64 / front.len() as f64)
}

/// Componentwise maximum over all fronts plus 10% of the componentwise range.
pub fn default_reference_point(fronts: &[Vec<Vec<f64>>]) -> Result<Vec<f64>> {
    let first = fronts
        .iter()
        .flatten()
        .next()
        .ok_or_else(|| Error::EmptyInput("all fronts are empty".into()))?;
    let r = first.len();
    let mut lo = vec![f64::INFINITY; r];
    let mut hi = vec![f64::NEG_INFINITY; r];
    for p in fronts.iter().flatten() {
        check_len(r, p.len())?;
        for k in 0..r {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    Ok(lo
        .iter()
        .zip(&hi)
        .map(|(&l, &h)| {
            let range = h - l;
            let pad = if range > 0.0 {
                0.1 * range
            } else {
                0.1 * h.abs().max(1.0)
            };
            h + pad
        })
        .collect())
}

/// Area dominated by 2-D points, all strictly below `reference`.
fn hv2(points: &mut [Vec<f64>], reference: &[f64]) -> f64 {
    points.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut area = 0.0;
    let mut ceiling = reference[1];
    for p in points.iter() {
        if p[1] < ceiling {
            area += (reference[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    area
}

/// Volume dominated by 3-D points, all strictly below `reference`.
fn hv3(points: &mut [Vec<f64>], reference: &[f64]) -> f64 {
    points.sort_by(|a, b| a[2].total_cmp(&b[2]));
    let mut volume = 0.0;
    let mut slab: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        slab.push(vec![p[0], p[1]]);
        let top = points.get(i + 1).map_or(reference[2], |q| q[2]);
        let height = top - p[2];
        if height > 0.0 {
            volume += height * hv2(&mut slab, &reference[..2]);
        }
    }
    volume
}

/// Hypervolume of `front` with respect to `reference` for two or three objectives.
///
/// Points not strictly below `reference` in every component are dropped with a warning.
pub fn hypervolume(front: &[Vec<f64>], reference: &[f64]) -> Result<f64> {
    let r = reference.len();
    if r != 2 && r != 3 {
        return Err(Error::UnsupportedDimension(r));
    }
    let mut kept = Vec::with_capacity(front.len());
    for p in front {
        check_len(r, p.len())?;
        if p.iter().zip(reference).all(|(a, b)| a < b) {
            kept.push(p.clone());
        } else {
            log::warn!("hypervolume: dropping {p:?}, not below reference {reference:?}");
        }
    }
    if kept.is_empty() {
        return Ok(0.0);
    }
    Ok(match r {
        2 => hv2(&mut kept, reference),
        _ => hv3(&mut kept, reference),
    })
}

/// Dolan–Moré curve `rho_s(tau)` for one solver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileCurve {
    pub solver_id: String,
    pub tau_breakpoints: Vec<f64>,
    pub rho_values: Vec<f64>,
}

impl ProfileCurve {
    /// `rho_s(tau)` for arbitrary `tau`, stepping at the breakpoints.
    pub fn rho_at(&self, tau: f64) -> f64 {
        match self.tau_breakpoints.iter().rposition(|&t| t <= tau) {
            Some(i) => self.rho_values[i],
            None => 0.0,
        }
    }
}

/// Profiles from `costs[solver][problem]`; `None` marks a failure. Smaller is better.
///
/// Problems where every solver fails are excluded with a warning. All curves
/// share the same breakpoints: every distinct finite ratio.
pub fn performance_profile(
    solver_ids: &[String],
    costs: &[Vec<Option<f64>>],
) -> Result<Vec<ProfileCurve>> {
    check_len(solver_ids.len(), costs.len())?;
    let num_problems = costs
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::EmptyInput("no solvers".into()))?;
    if num_problems == 0 {
        return Err(Error::EmptyInput("no problems".into()));
    }
    for row in costs {
        check_len(num_problems, row.len())?;
        if let Some(c) = row.iter().flatten().find(|c| !(**c > 0.0 && c.is_finite())) {
            return Err(Error::Config(format!(
                "costs must be positive and finite, got {c}"
            )));
        }
    }

    let mut ratios: Vec<Vec<f64>> = vec![Vec::new(); costs.len()];
    let mut valid = 0usize;
    for p in 0..num_problems {
        let best = costs
            .iter()
            .filter_map(|row| row[p])
            .fold(f64::INFINITY, f64::min);
        if !best.is_finite() {
            log::warn!("performance profile: every solver failed on problem {p}; excluded");
            continue;
        }
        valid += 1;
        for (s, row) in costs.iter().enumerate() {
            ratios[s].push(row[p].map_or(f64::INFINITY, |c| c / best));
        }
    }

    let mut taus: Vec<f64> = ratios
        .iter()
        .flatten()
        .copied()
        .filter(|r| r.is_finite())
        .collect();
    taus.sort_by(f64::total_cmp);
    taus.dedup();

    Ok(solver_ids
        .iter()
        .zip(&ratios)
        .map(|(id, rs)| {
            let rho_values = taus
                .iter()
                .map(|&t| {
                    if valid == 0 {
                        0.0
                    } else {
                        rs.iter().filter(|&&r| r <= t).count() as f64 / valid as f64
                    }
                })
                .collect();
            ProfileCurve {
                solver_id: id.clone(),
                tau_breakpoints: taus.clone(),
                rho_values,
            }
        })
        .collect())
}
