//! Literature test problems with at most four variables.
//!
//! Domains and formulas follow the usual statements in the multiobjective
//! test-suite literature. Where a problem is commonly stated with more
//! variables (the ZDT family) it is instantiated here with `n = 4`.

use std::f64::consts::PI;

use super::{AnalyticFront, BoxDomain, MultiobjectiveProblem};
use crate::error::{Error, Result};

struct Entry {
    id: &'static str,
    aliases: &'static [&'static str],
    build: fn() -> MultiobjectiveProblem,
}

const ENTRIES: &[Entry] = &[
    Entry {
        id: "SCH1",
        aliases: &["MOP13"],
        build: sch1,
    },
    Entry {
        id: "SCH2",
        aliases: &[],
        build: sch2,
    },
    Entry {
        id: "FON",
        aliases: &[],
        build: fon,
    },
    Entry {
        id: "POL",
        aliases: &[],
        build: pol,
    },
    Entry {
        id: "KUR",
        aliases: &[],
        build: kur,
    },
    Entry {
        id: "VNT",
        aliases: &[],
        build: vnt,
    },
    Entry {
        id: "DEB",
        aliases: &[],
        build: deb,
    },
    Entry {
        id: "DTLZ2",
        aliases: &[],
        build: dtlz2,
    },
    Entry {
        id: "ZDT1",
        aliases: &[],
        build: zdt1,
    },
    Entry {
        id: "ZDT2",
        aliases: &[],
        build: zdt2,
    },
    Entry {
        id: "ZDT3",
        aliases: &[],
        build: zdt3,
    },
    Entry {
        id: "ZDT4",
        aliases: &[],
        build: zdt4,
    },
];

/// Canonical identifiers in registry order.
pub fn registry_ids() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.id).collect()
}

/// Every registered problem, in registry order.
pub fn registry_problems() -> Vec<MultiobjectiveProblem> {
    ENTRIES.iter().map(|e| (e.build)()).collect()
}

/// Looks up a problem by identifier or alias, ignoring ASCII case.
pub fn registry_get(name: &str) -> Result<MultiobjectiveProblem> {
    ENTRIES
        .iter()
        .find(|e| {
            e.id.eq_ignore_ascii_case(name)
                || e.aliases.iter().any(|a| a.eq_ignore_ascii_case(name))
        })
        .map(|e| (e.build)())
        .ok_or_else(|| Error::UnknownProblem {
            name: name.to_string(),
            available: registry_ids().into_iter().map(String::from).collect(),
        })
}

fn boxed(lower: &[f64], upper: &[f64]) -> BoxDomain {
    BoxDomain::new(lower.to_vec(), upper.to_vec()).expect("registry domain")
}

fn problem<F>(id: &str, domain: BoxDomain, r: usize, f: F) -> MultiobjectiveProblem
where
    F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
{
    MultiobjectiveProblem::new(id, domain, r, f).expect("registry problem")
}

fn sch1() -> MultiobjectiveProblem {
    problem("SCH1", boxed(&[-5.0], &[10.0]), 2, |x| {
        vec![x[0] * x[0], (x[0] - 2.0).powi(2)]
    })
    .with_analytic_front(AnalyticFront::Curve {
        f1_min: 0.0,
        f1_max: 4.0,
        curve: |f1| (f1.sqrt() - 2.0).powi(2),
    })
}

fn sch2() -> MultiobjectiveProblem {
    problem("SCH2", boxed(&[-5.0], &[10.0]), 2, |x| {
        let x = x[0];
        let f1 = if x <= 1.0 {
            -x
        } else if x <= 3.0 {
            x - 2.0
        } else if x <= 4.0 {
            4.0 - x
        } else {
            x - 4.0
        };
        vec![f1, (x - 5.0).powi(2)]
    })
}

fn fon() -> MultiobjectiveProblem {
    problem("FON", BoxDomain::cube(2, -4.0, 4.0).unwrap(), 2, |x| {
        let s = 1.0 / (x.len() as f64).sqrt();
        let a: f64 = x.iter().map(|v| (v - s).powi(2)).sum();
        let b: f64 = x.iter().map(|v| (v + s).powi(2)).sum();
        vec![1.0 - (-a).exp(), 1.0 - (-b).exp()]
    })
}

fn pol() -> MultiobjectiveProblem {
    let a1 = 0.5 * 1f64.sin() - 2.0 * 1f64.cos() + 2f64.sin() - 1.5 * 2f64.cos();
    let a2 = 1.5 * 1f64.sin() - 1f64.cos() + 2.0 * 2f64.sin() - 0.5 * 2f64.cos();
    problem("POL", BoxDomain::cube(2, -PI, PI).unwrap(), 2, move |x| {
        let (s1, c1, s2, c2) = (x[0].sin(), x[0].cos(), x[1].sin(), x[1].cos());
        let b1 = 0.5 * s1 - 2.0 * c1 + s2 - 1.5 * c2;
        let b2 = 1.5 * s1 - c1 + 2.0 * s2 - 0.5 * c2;
        vec![
            1.0 + (a1 - b1).powi(2) + (a2 - b2).powi(2),
            (x[0] + 3.0).powi(2) + (x[1] + 1.0).powi(2),
        ]
    })
}

fn kur() -> MultiobjectiveProblem {
    problem("KUR", BoxDomain::cube(3, -5.0, 5.0).unwrap(), 2, |x| {
        let f1 = x
            .windows(2)
            .map(|w| -10.0 * (-0.2 * (w[0] * w[0] + w[1] * w[1]).sqrt()).exp())
            .sum();
        let f2 = x
            .iter()
            .map(|v| v.abs().powf(0.8) + 5.0 * (v.powi(3)).sin())
            .sum();
        vec![f1, f2]
    })
}

fn vnt() -> MultiobjectiveProblem {
    problem("VNT", BoxDomain::cube(2, -3.0, 3.0).unwrap(), 3, |x| {
        let (u, v) = (x[0], x[1]);
        let q = u * u + v * v;
        vec![
            0.5 * q + q.sin(),
            (3.0 * u - 2.0 * v + 4.0).powi(2) / 8.0 + (u - v + 1.0).powi(2) / 27.0 + 15.0,
            1.0 / (q + 1.0) - 1.1 * (-q).exp(),
        ]
    })
}

fn deb() -> MultiobjectiveProblem {
    problem("DEB", BoxDomain::cube(2, 0.0, 1.0).unwrap(), 2, |x| {
        let g = 1.0 + 10.0 * x[1];
        let t = x[0] / g;
        vec![x[0], g * (1.0 - t * t - t * (8.0 * PI * x[0]).sin())]
    })
}

fn dtlz2() -> MultiobjectiveProblem {
    problem("DTLZ2", BoxDomain::cube(3, 0.0, 1.0).unwrap(), 3, |x| {
        let g = (x[2] - 0.5).powi(2);
        let (a, b) = (x[0] * PI / 2.0, x[1] * PI / 2.0);
        vec![
            (1.0 + g) * a.cos() * b.cos(),
            (1.0 + g) * a.cos() * b.sin(),
            (1.0 + g) * a.sin(),
        ]
    })
    .with_analytic_front(AnalyticFront::Sphere { radius: 1.0 })
}

const ZDT_N: usize = 4;

fn zdt_g(tail: &[f64]) -> f64 {
    1.0 + 9.0 * tail.iter().sum::<f64>() / tail.len() as f64
}

fn zdt1() -> MultiobjectiveProblem {
    problem("ZDT1", BoxDomain::cube(ZDT_N, 0.0, 1.0).unwrap(), 2, |x| {
        let g = zdt_g(&x[1..]);
        vec![x[0], g * (1.0 - (x[0] / g).sqrt())]
    })
    .with_analytic_front(AnalyticFront::Curve {
        f1_min: 0.0,
        f1_max: 1.0,
        curve: |f1| 1.0 - f1.sqrt(),
    })
}

fn zdt2() -> MultiobjectiveProblem {
    problem("ZDT2", BoxDomain::cube(ZDT_N, 0.0, 1.0).unwrap(), 2, |x| {
        let g = zdt_g(&x[1..]);
        vec![x[0], g * (1.0 - (x[0] / g).powi(2))]
    })
    .with_analytic_front(AnalyticFront::Curve {
        f1_min: 0.0,
        f1_max: 1.0,
        curve: |f1| 1.0 - f1 * f1,
    })
}

fn zdt3() -> MultiobjectiveProblem {
    problem("ZDT3", BoxDomain::cube(ZDT_N, 0.0, 1.0).unwrap(), 2, |x| {
        let g = zdt_g(&x[1..]);
        let t = x[0] / g;
        vec![x[0], g * (1.0 - t.sqrt() - t * (10.0 * PI * x[0]).sin())]
    })
    // Weakly efficient points with g = 1 lie on this curve; the strict front
    // is its nondominated subset.
    .with_analytic_front(AnalyticFront::Curve {
        f1_min: 0.0,
        f1_max: 0.8518,
        curve: |f1| 1.0 - f1.sqrt() - f1 * (10.0 * PI * f1).sin(),
    })
}

fn zdt4() -> MultiobjectiveProblem {
    let mut lower = vec![-5.0; ZDT_N];
    let mut upper = vec![5.0; ZDT_N];
    lower[0] = 0.0;
    upper[0] = 1.0;
    problem("ZDT4", boxed(&lower, &upper), 2, |x| {
        let tail = &x[1..];
        let g = 1.0
            + 10.0 * tail.len() as f64
            + tail
                .iter()
                .map(|v| v * v - 10.0 * (4.0 * PI * v).cos())
                .sum::<f64>();
        vec![x[0], g * (1.0 - (x[0] / g).sqrt())]
    })
    .with_analytic_front(AnalyticFront::Curve {
        f1_min: 0.0,
        f1_max: 1.0,
        curve: |f1| 1.0 - f1.sqrt(),
    })
}
