use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use mvlsm_core::io::{
    read_front_csv, write_file, write_front_csv, write_json, write_points_csv, write_profile_csv,
};
use mvlsm_core::{
    build_front, build_grid_with, default_reference_point, hypervolume, ideal_from_table,
    level_set_stats, normalize_weights, performance_profile, purity, random_weight,
    reference_front, registry_get, registry_problems, solve, FrontApproximation, InitialLevel,
    ObjectiveTable, ProfileCurve, Scalarization, ScalarizationKind, SolveStatus, DEFAULT_BUDGET,
    DEFAULT_C0, DEFAULT_EPSILON, DEFAULT_XI,
};

use crate::config::{parse_weights, OutputFormat, RunConfig, RunFlags, SEED_ENV};
use crate::exit::{self, Failure};

type CmdResult = Result<i32, Failure>;

/// Solver name used for this crate's own fronts in bench reports.
pub const OWN_SOLVER: &str = "mvlsm";

fn env_seed() -> Option<String> {
    std::env::var(SEED_ENV).ok()
}

fn prepare_out_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::cant_create(format!("{}: {e}", dir.display())))
}

fn write_out<F>(path: &Path, f: F) -> Result<(), Failure>
where
    F: FnOnce(&mut std::io::BufWriter<fs::File>) -> mvlsm_core::Result<()>,
{
    write_file(path, f).map_err(|e| Failure::cant_create(e.to_string()))
}

fn write_meta(cfg: &RunConfig) -> Result<(), Failure> {
    write_out(&cfg.out_dir.join("meta.json"), |w| write_json(cfg, w))
}

fn single_problem(cfg: &RunConfig) -> Result<String, Failure> {
    match cfg.problems.as_slice() {
        [one] => Ok(one.clone()),
        [] => Err(Failure::usage("--problem is required")),
        _ => Err(Failure::usage("exactly one --problem is expected")),
    }
}

pub fn cmd_list() -> CmdResult {
    for p in registry_problems() {
        println!(
            "{}, {}, {}, {}",
            p.id(),
            p.dim(),
            p.num_objectives(),
            p.analytic_front().is_some()
        );
    }
    Ok(exit::OK)
}

#[derive(Debug, Clone, Default, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub problem: Option<String>,
    /// Raw weights, normalized to unit L1 norm. Drawn from the seed when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    #[command(flatten)]
    pub run: RunFlags,
}

pub fn cmd_solve(args: &SolveArgs) -> CmdResult {
    let mut cfg = args.run.resolve(env_seed())?;
    if let Some(p) = &args.problem {
        cfg.problems = vec![p.clone()];
    }
    if let Some(w) = &args.weights {
        cfg.weights = Some(parse_weights(w)?);
    }
    let cfg = cfg.resolved();
    let problem = registry_get(&single_problem(&cfg)?)?;
    let solver = cfg.solver();
    solver.validate()?;

    let weights = match &cfg.weights {
        Some(raw) => normalize_weights(raw)?,
        None => random_weight(
            problem.num_objectives(),
            &mut ChaCha8Rng::seed_from_u64(cfg.seed),
        )?,
    };
    if weights.len() != problem.num_objectives() {
        return Err(Failure::config(format!(
            "{} has {} objectives but {} weights were given",
            problem.id(),
            problem.num_objectives(),
            weights.len()
        )));
    }

    let start = Instant::now();
    let grid = build_grid_with(problem.domain(), cfg.grid_budget, cfg.scheme())?;
    let table = ObjectiveTable::evaluate(&problem, &grid)?;
    let ideal = ideal_from_table(&table, &vec![cfg.xi; problem.num_objectives()])?;
    let scal = Scalarization::of_kind(cfg.scalarization, weights.clone(), &ideal.utopian)?;
    let values = scal.apply(&table)?;
    let trace = solve(&values, &grid, &solver)?;
    let elapsed = start.elapsed();

    prepare_out_dir(&cfg.out_dir)?;
    write_out(&cfg.out_dir.join("trace.json"), |w| write_json(&trace, w))?;
    let rows: Vec<Vec<f64>> = trace
        .minimizer_indices
        .iter()
        .map(|&i| {
            let mut row = grid.point(i).to_vec();
            row.extend_from_slice(table.row(i));
            row.push(values[i]);
            row
        })
        .collect();
    write_out(&cfg.out_dir.join("minimizers.csv"), |w| {
        write_minimizers(problem.dim(), problem.num_objectives(), &rows, w)
    })?;
    if trace.is_converged() {
        let stats = level_set_stats(&values, &grid, trace.c_bar)?;
        write_out(&cfg.out_dir.join("stats.json"), |w| write_json(&stats, w))?;
    }
    write_meta(&cfg)?;

    println!(
        "{}: {} after {} iterations, c_bar = {}, {} minimizers, weights {:?}, {:.3} s",
        problem.id(),
        trace.status,
        trace.iterations(),
        trace.c_bar,
        trace.minimizer_indices.len(),
        weights.entries(),
        elapsed.as_secs_f64()
    );
    Ok(match trace.status {
        SolveStatus::Converged => exit::OK,
        _ => exit::NOT_CONVERGED,
    })
}

fn write_minimizers<W: std::io::Write>(
    n: usize,
    r: usize,
    rows: &[Vec<f64>],
    out: W,
) -> mvlsm_core::Result<()> {
    let mut text = String::new();
    let head: Vec<String> = (1..=n)
        .map(|i| format!("x_{i}"))
        .chain((1..=r).map(|i| format!("f_{i}")))
        .chain(std::iter::once("value".to_string()))
        .collect();
    text.push_str(&head.join(","));
    text.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(f64::to_string).collect();
        text.push_str(&cells.join(","));
        text.push('\n');
    }
    let mut out = out;
    out.write_all(text.as_bytes())
        .map_err(|e| mvlsm_core::Error::Io {
            path: "minimizers.csv".into(),
            message: e.to_string(),
        })
}

#[derive(Debug, Clone, Default, Args)]
pub struct FrontArgs {
    #[arg(long)]
    pub problem: Option<String>,
    #[arg(long)]
    pub num_weights: Option<usize>,
    #[command(flatten)]
    pub run: RunFlags,
}

pub fn cmd_front(args: &FrontArgs) -> CmdResult {
    let mut cfg = args.run.resolve(env_seed())?;
    if let Some(p) = &args.problem {
        cfg.problems = vec![p.clone()];
    }
    if let Some(n) = args.num_weights {
        cfg.num_weights = n;
    }
    let cfg = cfg.resolved();
    let problem = registry_get(&single_problem(&cfg)?)?;

    let start = Instant::now();
    let front = build_front(&problem, &cfg.front_config())?;
    let elapsed = start.elapsed();

    prepare_out_dir(&cfg.out_dir)?;
    match cfg.format {
        OutputFormat::Csv => write_out(&cfg.out_dir.join("front.csv"), |w| {
            write_front_csv(&front, w)
        })?,
        OutputFormat::Json => {
            write_out(&cfg.out_dir.join("front.json"), |w| write_json(&front, w))?
        }
    }
    write_meta(&cfg)?;
    print_front_summary(&front, elapsed.as_secs_f64());
    Ok(exit::OK)
}

fn print_front_summary(front: &FrontApproximation, secs: f64) {
    println!(
        "{}: {} points from {} runs ({} converged), {} scalarization, filter {}, mean iterations k = {:.1}, T = {:.4} s per run ({:.3} s total)",
        front.problem_id,
        front.points.len(),
        front.runs.len(),
        front.converged_runs(),
        front.config.scalarization.as_str(),
        if front.filtered { "on" } else { "off" },
        front.mean_iterations(),
        secs / front.runs.len().max(1) as f64,
        secs
    );
}

#[derive(Debug, Clone, Default, Args)]
pub struct BenchArgs {
    /// Problems to benchmark; repeat or separate with commas.
    #[arg(long, value_delimiter = ',')]
    pub problem: Vec<String>,
    #[arg(long)]
    pub num_weights: Option<usize>,
    /// `solver=path` with `f_1..f_r` CSV fronts. `{problem}` in the path is
    /// replaced by the problem id; a directory resolves to `<dir>/<ID>.csv`.
    #[arg(long = "external-front", value_name = "SOLVER=PATH")]
    pub external_fronts: Vec<String>,
    /// Componentwise tolerance for purity matching.
    #[arg(long)]
    pub match_tol: Option<f64>,
    #[command(flatten)]
    pub run: RunFlags,
}

/// One line of the metric report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRecord {
    pub problem: String,
    pub solver: String,
    /// Absent when the solver's front is empty.
    pub purity: Option<f64>,
    pub hypervolume: f64,
    pub ref_point: Vec<f64>,
    pub points: usize,
}

fn parse_external(spec: &str) -> Result<(String, String), Failure> {
    match spec.split_once('=') {
        Some((name, path)) if !name.is_empty() && !path.is_empty() => {
            if name == OWN_SOLVER {
                return Err(Failure::usage(format!(
                    "solver name `{OWN_SOLVER}` is reserved"
                )));
            }
            Ok((name.to_string(), path.to_string()))
        }
        _ => Err(Failure::usage(format!(
            "--external-front expects SOLVER=PATH, got `{spec}`"
        ))),
    }
}

fn resolve_external_path(
    raw: &str,
    problem: &str,
    num_problems: usize,
) -> Result<PathBuf, Failure> {
    if raw.contains("{problem}") {
        return Ok(PathBuf::from(raw.replace("{problem}", problem)));
    }
    let path = PathBuf::from(raw);
    if path.is_dir() {
        return Ok(path.join(format!("{problem}.csv")));
    }
    if num_problems > 1 {
        return Err(Failure::usage(format!(
            "external front `{raw}` is a single file but {num_problems} problems were given; use a directory or {{problem}}"
        )));
    }
    Ok(path)
}

pub fn cmd_bench(args: &BenchArgs) -> CmdResult {
    let mut cfg = args.run.resolve(env_seed())?;
    if !args.problem.is_empty() {
        cfg.problems = args.problem.clone();
    }
    if let Some(n) = args.num_weights {
        cfg.num_weights = n;
    }
    if !args.external_fronts.is_empty() {
        cfg.external_fronts = args.external_fronts.clone();
    }
    if let Some(t) = args.match_tol {
        cfg.match_tol = t;
    }
    let cfg = cfg.resolved();
    if cfg.problems.is_empty() {
        return Err(Failure::usage("bench needs at least one --problem"));
    }
    if cfg.match_tol.is_nan() || cfg.match_tol < 0.0 {
        return Err(Failure::config("match_tol must be >= 0"));
    }
    let externals = cfg
        .external_fronts
        .iter()
        .map(|s| parse_external(s))
        .collect::<Result<Vec<_>, _>>()?;
    let problems = cfg
        .problems
        .iter()
        .map(|id| registry_get(id))
        .collect::<Result<Vec<_>, _>>()?;

    // Fail on unreadable inputs before any solving.
    for problem in &problems {
        for (name, raw) in &externals {
            let path = resolve_external_path(raw, problem.id(), problems.len())?;
            if !path.is_file() {
                return Err(Failure::no_input(format!(
                    "{}: front for solver {name} on {} is not a readable file",
                    path.display(),
                    problem.id()
                )));
            }
        }
    }

    let mut solvers = vec![OWN_SOLVER.to_string()];
    solvers.extend(externals.iter().map(|(name, _)| name.clone()));

    prepare_out_dir(&cfg.out_dir)?;
    let mut records = Vec::new();
    for problem in &problems {
        let start = Instant::now();
        let own = build_front(problem, &cfg.front_config())?;
        print_front_summary(&own, start.elapsed().as_secs_f64());

        let mut fronts = vec![own.objective_vectors()];
        for (name, raw) in &externals {
            let path = resolve_external_path(raw, problem.id(), problems.len())?;
            let pts = read_front_csv(&path).map_err(|e| Failure::no_input(e.to_string()))?;
            if let Some(bad) = pts.iter().find(|p| p.len() != problem.num_objectives()) {
                return Err(Failure::no_input(format!(
                    "{}: solver {name} front has {} objectives, {} expects {}",
                    path.display(),
                    bad.len(),
                    problem.id(),
                    problem.num_objectives()
                )));
            }
            fronts.push(pts);
        }
        // Each solver is scored on its own nondominated subset.
        let fronts: Vec<Vec<Vec<f64>>> = fronts
            .into_iter()
            .map(|f| {
                if f.is_empty() {
                    Ok(f)
                } else {
                    reference_front(&[f]).map(|r| r.points)
                }
            })
            .collect::<Result<_, _>>()?;
        write_out(
            &cfg.out_dir.join(format!("front_{}.csv", problem.id())),
            |w| write_points_csv("f", &fronts[0], w),
        )?;

        if fronts.iter().all(Vec::is_empty) {
            log::warn!("{}: every front is empty", problem.id());
        }
        let reference = if fronts.iter().any(|f| !f.is_empty()) {
            Some(reference_front(&fronts)?)
        } else {
            None
        };
        let ref_point = if reference.is_some() {
            default_reference_point(&fronts)?
        } else {
            vec![0.0; problem.num_objectives()]
        };
        for (solver, front) in solvers.iter().zip(&fronts) {
            let purity = match (&reference, front.is_empty()) {
                (Some(r), false) => Some(purity(front, r, cfg.match_tol)?),
                _ => None,
            };
            let hv = if problem.num_objectives() <= 3 {
                hypervolume(front, &ref_point)?
            } else {
                0.0
            };
            records.push(MetricRecord {
                problem: problem.id().to_string(),
                solver: solver.clone(),
                purity,
                hypervolume: hv,
                ref_point: ref_point.clone(),
                points: front.len(),
            });
        }
    }

    write_out(&cfg.out_dir.join("metrics.json"), |w| {
        write_json(&records, w)
    })?;
    for metric in [Metric::Purity, Metric::Hypervolume] {
        let curves = profile_from_records(&records, metric)?;
        let name = format!("profile_{}.csv", metric.as_str());
        write_out(&cfg.out_dir.join(name), |w| write_profile_csv(&curves, w))?;
    }
    write_meta(&cfg)?;
    for r in &records {
        println!(
            "{} {}: purity {}, hypervolume {}",
            r.problem,
            r.solver,
            r.purity.map_or("n/a".to_string(), |p| p.to_string()),
            r.hypervolume
        );
    }
    Ok(exit::OK)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Purity,
    Hypervolume,
}

impl Metric {
    fn as_str(self) -> &'static str {
        match self {
            Metric::Purity => "purity",
            Metric::Hypervolume => "hypervolume",
        }
    }

    /// Larger metric is better; costs are reciprocals, zero becomes a failure.
    fn cost(self, r: &MetricRecord) -> Option<f64> {
        let value = match self {
            Metric::Purity => r.purity?,
            Metric::Hypervolume => r.hypervolume,
        };
        (value > 0.0).then(|| 1.0 / value)
    }
}

/// Profiles over the solvers and problems of a metric report, in first-seen order.
pub fn profile_from_records(
    records: &[MetricRecord],
    metric: Metric,
) -> Result<Vec<ProfileCurve>, Failure> {
    let mut solvers: Vec<String> = Vec::new();
    let mut problems: Vec<String> = Vec::new();
    for r in records {
        if !solvers.contains(&r.solver) {
            solvers.push(r.solver.clone());
        }
        if !problems.contains(&r.problem) {
            problems.push(r.problem.clone());
        }
    }
    let mut costs = vec![vec![None; problems.len()]; solvers.len()];
    let index: BTreeMap<(&str, &str), &MetricRecord> = records
        .iter()
        .map(|r| ((r.solver.as_str(), r.problem.as_str()), r))
        .collect();
    for (s, solver) in solvers.iter().enumerate() {
        for (p, problem) in problems.iter().enumerate() {
            costs[s][p] = index
                .get(&(solver.as_str(), problem.as_str()))
                .and_then(|r| metric.cost(r));
        }
    }
    Ok(performance_profile(&solvers, &costs)?)
}

/// `costs[solver][problem]`, `None` for a failure.
pub type CostMatrix = Vec<Vec<Option<f64>>>;

/// Cost matrix CSV: header `problem,<solver>...`; blank, `inf`, `nan`, `fail`
/// or `-` mark a failure.
pub fn parse_cost_csv(text: &str) -> Result<(Vec<String>, CostMatrix), Failure> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let head: Vec<&str> = lines
        .next()
        .ok_or_else(|| Failure::no_input("cost matrix is empty"))?
        .split(',')
        .map(str::trim)
        .collect();
    if head.len() < 2 || head[0] != "problem" {
        return Err(Failure::no_input(
            "cost matrix header must be `problem,<solver>,...`",
        ));
    }
    let solvers: Vec<String> = head[1..].iter().map(|s| s.to_string()).collect();
    let mut costs = vec![Vec::new(); solvers.len()];
    for (row, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != head.len() {
            return Err(Failure::no_input(format!(
                "cost matrix row {} has {} cells, expected {}",
                row + 1,
                cells.len(),
                head.len()
            )));
        }
        for (s, cell) in cells[1..].iter().enumerate() {
            let value = match cell.to_ascii_lowercase().as_str() {
                "" | "inf" | "+inf" | "nan" | "fail" | "-" => None,
                other => Some(other.parse::<f64>().map_err(|_| {
                    Failure::no_input(format!(
                        "cost matrix row {}: `{other}` is not a number",
                        row + 1
                    ))
                })?),
            };
            costs[s].push(value);
        }
    }
    Ok((solvers, costs))
}

#[derive(Debug, Clone, Default, Args)]
pub struct ProfileArgs {
    /// Cost matrix CSV (`problem,<solver>...`), smaller is better.
    #[arg(long, conflicts_with = "report")]
    pub costs: Option<PathBuf>,
    /// Metric report written by `bench`.
    #[arg(long, requires = "metric")]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub metric: Option<Metric>,
    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
    /// Profile CSV path; defaults to `<out-dir>/profile.csv`.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct ProfileMeta<'a> {
    costs: Option<&'a Path>,
    report: Option<&'a Path>,
    metric: Option<&'static str>,
    output: &'a Path,
}

pub fn cmd_profile(args: &ProfileArgs) -> CmdResult {
    let read = |p: &Path| {
        fs::read_to_string(p).map_err(|e| Failure::no_input(format!("{}: {e}", p.display())))
    };
    let curves = match (&args.costs, &args.report, args.metric) {
        (Some(path), None, _) => {
            let (solvers, costs) = parse_cost_csv(&read(path)?)
                .map_err(|f| Failure::new(f.code, format!("{}: {}", path.display(), f.message)))?;
            performance_profile(&solvers, &costs)?
        }
        (None, Some(path), Some(metric)) => {
            let records: Vec<MetricRecord> = serde_json::from_str(&read(path)?)
                .map_err(|e| Failure::no_input(format!("{}: {e}", path.display())))?;
            profile_from_records(&records, metric)?
        }
        _ => {
            return Err(Failure::usage(
                "profile needs --costs FILE or --report FILE --metric M",
            ))
        }
    };
    let out_dir = args
        .out_dir
        .clone()
        .unwrap_or_else(|| RunConfig::default().out_dir);
    prepare_out_dir(&out_dir)?;
    let output = args
        .output
        .clone()
        .unwrap_or_else(|| out_dir.join("profile.csv"));
    write_out(&output, |w| write_profile_csv(&curves, w))?;
    let meta = ProfileMeta {
        costs: args.costs.as_deref(),
        report: args.report.as_deref(),
        metric: args.metric.map(Metric::as_str),
        output: &output,
    };
    write_out(&out_dir.join("meta.json"), |w| write_json(&meta, w))?;
    println!("wrote {} curves to {}", curves.len(), output.display());
    Ok(exit::OK)
}

/// Checks that defaults match the experimental protocol and runs two smoke solves.
pub fn cmd_selftest() -> CmdResult {
    let d = RunConfig::default();
    let mut checks: Vec<(&str, bool)> = vec![
        (
            "grid budget = 10000",
            d.grid_budget == 10_000 && DEFAULT_BUDGET == 10_000,
        ),
        (
            "epsilon = 1e-8",
            d.epsilon == 1e-8 && DEFAULT_EPSILON == 1e-8,
        ),
        (
            "c0 = 1e8",
            d.c0 == InitialLevel::Value(1e8) && DEFAULT_C0 == 1e8,
        ),
        ("xi = 1e-4", d.xi == 1e-4 && DEFAULT_XI == 1e-4),
        (
            "scalarization = chebyshev",
            d.scalarization == ScalarizationKind::Chebyshev,
        ),
        (
            "membership_tol = 1e-3",
            (d.solver().membership_tol - 1e-3).abs() < 1e-15,
        ),
    ];

    let sch1 = registry_get("SCH1").map(|p| p.evaluate(&[1.0]).map(|y| y.to_vec()));
    checks.push((
        "SCH1(1) = (1, 1)",
        matches!(sch1, Ok(Ok(ref y)) if y == &[1.0, 1.0]),
    ));

    let grid = mvlsm_core::SampleGrid::from_parts(1, vec![0.0, 1.0, 2.0], vec![1.0; 3]);
    let trace = grid.and_then(|g| {
        let cfg = mvlsm_core::SolverConfig {
            c0: InitialLevel::Value(10.0),
            ..mvlsm_core::SolverConfig::default()
        };
        solve(&[1.0, 2.0, 3.0], &g, &cfg)
    });
    checks.push((
        "solve {1,2,3} from 10 visits 10, 2, 1.5, 1",
        matches!(trace, Ok(ref t) if t.c_seq == [10.0, 2.0, 1.5, 1.0] && t.is_converged()),
    ));

    let mut ok = true;
    for (name, pass) in &checks {
        println!("{} {name}", if *pass { "PASS" } else { "FAIL" });
        ok &= pass;
    }
    Ok(if ok { exit::OK } else { exit::INTERNAL })
}
