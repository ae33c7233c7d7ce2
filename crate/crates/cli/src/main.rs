//! `symkit`: apply symmetrizations to body files, check an operator's
//! properties, iterate a process and evaluate the closed-form cases.

mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use symkit::analytic::{blaschke_cone, blaschke_prism, kappa, schwarz_box, schwarz_box_radius};
use symkit::convergence::{iterate, make_sequence, measure, IterateConfig, Matching};
use symkit::harness::{table_report, table_spec, HarnessConfig};
use symkit::io;
use symkit::symmetrize::{apply_with, OpKind, SymSpec};
use symkit::{ConvexBody, Error, ToleranceConfig};

#[derive(Parser)]
#[command(name = "symkit", version, about = "Symmetrizations of convex bodies in dimensions 2 and 3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Symmetrize a body file.
    Apply(ApplyArgs),
    /// Check an operator's properties on seeded random bodies.
    Props(PropsArgs),
    /// Iterate a symmetrization along a subspace sequence.
    Converge(ConvergeArgs),
    /// Evaluate a closed-form case.
    Analytic(AnalyticArgs),
}

#[derive(Args)]
struct TolArgs {
    #[arg(long, default_value_t = 1e-9)]
    hull_eps: f64,
    /// Inclusion tolerance as a multiple of the circumradius.
    #[arg(long, default_value_t = 1e-7)]
    inclusion_eps: f64,
    #[arg(long, default_value_t = 4096)]
    grid_2d: usize,
    #[arg(long, default_value_t = 8192)]
    grid_3d: usize,
    #[arg(long, default_value_t = 256)]
    slice_count: usize,
}

impl TolArgs {
    fn config(&self) -> Result<ToleranceConfig, Error> {
        let tol = ToleranceConfig {
            hull_eps: self.hull_eps,
            inclusion_eps: self.inclusion_eps,
            hausdorff_grid_2d: self.grid_2d,
            hausdorff_grid_3d: self.grid_3d,
            slice_count: self.slice_count,
        };
        if tol.is_valid() {
            Ok(tol)
        } else {
            Err(Error::InvalidInput("tolerances and counts must be positive".into()))
        }
    }
}

#[derive(Args)]
struct ApplyArgs {
    #[arg(long)]
    op: String,
    /// `basis=x,y[,z];...`; an empty basis is the origin.
    #[arg(long)]
    subspace: String,
    /// Operator parameter `key=value` (p, c, slice_count, m, g).
    #[arg(long = "param")]
    params: Vec<String>,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Args)]
struct PropsArgs {
    #[arg(long)]
    op: String,
    /// Ambient dimension; defaults to the lowest one the operator supports.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, env = "SYMKIT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatchBy {
    Vn,
    V1,
}

#[derive(Args)]
struct ConvergeArgs {
    #[arg(long)]
    process: String,
    /// `dense`, `rotation[:θ]`, `random[:seed]` or `fixed:<basis>|<basis>|...`.
    #[arg(long)]
    sequence: String,
    #[arg(long)]
    steps: usize,
    /// Index of the first sequence element used.
    #[arg(long, default_value_t = 1)]
    start: usize,
    /// Subspace dimension; defaults to the operator's usual one.
    #[arg(long)]
    i: Option<usize>,
    #[arg(long = "param")]
    params: Vec<String>,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    csv: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Snapshot interval for the SVG overlay.
    #[arg(long)]
    snapshot_every: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    vertex_cap: usize,
    /// Drop planar vertices within this multiple of the circumradius of a
    /// chord; 0 keeps every vertex.
    #[arg(long, default_value_t = 1e-6)]
    coarsen: f64,
    #[arg(long, value_enum, default_value_t = MatchBy::Vn)]
    matching: MatchBy,
    #[arg(long, env = "SYMKIT_SEED", default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    BlaschkeCone,
    BlaschkePrism,
    SchwarzBox,
}

#[derive(Args)]
struct AnalyticArgs {
    #[arg(value_enum)]
    case: Case,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
}

/// A failed run: exit status and a one-line diagnostic.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unsupported(_) => 2,
            Error::CapExceeded { .. } => 4,
            _ => 1,
        };
        Failure(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match cli.command {
        Command::Apply(a) => apply(a),
        Command::Props(a) => props(a),
        Command::Converge(a) => converge(a),
        Command::Analytic(a) => analytic(a),
    };
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("symkit: {msg}");
            ExitCode::from(code)
        }
    }
}

fn apply(a: ApplyArgs) -> Result<(), Failure> {
    let tol = a.tol.config()?;
    let op: OpKind = a.op.parse()?;
    let k = io::read_body(&a.input)?;
    let n = k.dim();
    let h = parse::subspace(&a.subspace, n)?;
    let spec = SymSpec::new(op, h).with_params(parse::params(&a.params, n)?);
    spec.validate()?;
    let out = apply_with(&k, &spec, &tol)?;
    io::write_body(&a.out, &out)?;
    Ok(())
}

fn props(a: PropsArgs) -> Result<(), Failure> {
    let tol = a.tol.config()?;
    if a.trials == 0 {
        return Err(Error::InvalidInput("--trials must be positive".into()).into());
    }
    let op: OpKind = a.op.parse()?;
    let spec = match a.n {
        Some(n) => table_spec(op, n)?,
        None => table_spec(op, 2).or_else(|_| table_spec(op, 3))?,
    };
    let cfg = HarnessConfig { trials: a.trials, seed: a.seed, tol, ..HarnessConfig::default() };
    let report = table_report(&spec, &cfg)?;
    println!("{} n={} i={}: {}", op, spec.n(), spec.i(), report.row());
    for r in &report.results {
        if let Some(w) = &r.witness {
            println!("  {} ({:?}): {}", r.property.number(), r.property, w.description);
        }
    }
    if let Some(path) = &a.report {
        io::write_atomic(path, io::to_pretty(&io::report_value(&report, a.seed, a.trials)?).as_bytes())?;
    }
    let bad = report.mismatches();
    if bad.is_empty() && report.matches {
        Ok(())
    } else {
        let names: Vec<String> = bad.iter().map(|p| format!("{} ({:?})", p.number(), p)).collect();
        Err(Failure(3, format!("row does not match the expected row at {}", names.join(", "))))
    }
}

fn converge(a: ConvergeArgs) -> Result<(), Failure> {
    let tol = a.tol.config()?;
    let op: OpKind = a.process.parse()?;
    let k = io::read_body(&a.input)?;
    let n = k.dim();
    let i = match a.i {
        Some(i) => i,
        None => table_spec(op, n)?.i(),
    };
    if a.start == 0 {
        return Err(Error::InvalidInput("--start counts from 1".into()).into());
    }
    if !(a.coarsen >= 0.0) {
        return Err(Error::InvalidInput("--coarsen must be non-negative".into()).into());
    }
    if a.vertex_cap == 0 || a.snapshot_every == Some(0) {
        return Err(Error::InvalidInput("counts must be positive".into()).into());
    }
    let params = parse::params(&a.params, n)?;
    let matching = match a.matching {
        MatchBy::Vn => Matching::ByVn,
        MatchBy::V1 => Matching::ByV1,
    };
    let every = a.snapshot_every.unwrap_or((a.steps / 10).max(1));
    let cfg = IterateConfig { vertex_cap: a.vertex_cap, coarsen: (a.coarsen > 0.0).then_some(a.coarsen), snapshot_every: Some(every), matching, tol };
    let kind = parse::sequence(&a.sequence, n, a.seed)?;
    let seq = make_sequence(kind, n, i, a.start + a.steps.max(1) - 1)?;
    SymSpec::new(op, seq.elements()[0].clone()).with_params(params.clone()).validate()?;

    let mut rows = vec![measure(&k, 0, matching, &tol)?];
    let mut snapshots: Vec<(usize, ConvexBody)> = vec![(0, k.clone())];
    let mut halted = None;
    if a.steps > 0 {
        let t = iterate(op, &params, &k, &seq, a.start, a.start + a.steps - 1, &cfg)?;
        let shift = a.start - 1;
        rows.extend(t.rows.iter().map(|r| symkit::convergence::TrajectoryRow { step: r.step - shift, ..*r }));
        snapshots.extend(t.snapshots.into_iter().map(|(s, b)| (s - shift, b)));
        halted = t.halted;
    }
    io::write_atomic(&a.csv, io::trajectory_csv(&rows).as_bytes())?;
    if let Some(path) = &a.svg {
        io::write_atomic(path, io::snapshots_svg(&snapshots)?.as_bytes())?;
    }
    let last = rows.last().expect("initial row");
    println!("step {}: V_n = {}, V_1 = {}, ball_distance = {}", last.step, last.v_n, last.v_1, last.ball_distance);
    match halted {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

const RESIDUAL_TOL: f64 = 1e-12;

fn analytic(a: AnalyticArgs) -> Result<(), Failure> {
    let (residual, holds) = match a.case {
        Case::BlaschkeCone => {
            let r = blaschke_cone(a.n).map_err(invalid_n)?;
            println!("n = {}", r.n);
            println!("a = {}", r.radius_a);
            println!("h = {}", r.top_radius_h);
            println!("height = {}", r.height);
            println!("residual = {:e}", r.residual);
            println!("height < 1: {}", r.height < 1.0);
            (r.residual, r.height < 1.0)
        }
        Case::BlaschkePrism => {
            let r = blaschke_prism(a.n).map_err(invalid_n)?;
            println!("n = {}", r.n);
            println!("b = {}", r.width_b);
            println!("a = {}", r.radius_a);
            println!("h = {}", r.top_radius_h);
            println!("residual = {:e}", r.residual);
            println!("b > 1: {}", r.width_b > 1.0);
            (r.residual, r.width_b > 1.0)
        }
        Case::SchwarzBox => {
            if a.n < 3 {
                return Err(Failure(1, format!("the box case needs n ≥ 3, got {}", a.n)));
            }
            if !(a.a > 0.0 && a.a.is_finite()) {
                return Err(Failure(1, format!("--a must be positive, got {}", a.a)));
            }
            let r = schwarz_box_radius(a.n, 1, a.a);
            let k = a.n - 1;
            let mut residual = (kappa(k) * r.powi(k as i32) / (2f64.powi(k as i32) * a.a) - 1.0).abs();
            println!("n = {}", a.n);
            println!("a = {}", a.a);
            println!("r = {r}");
            if a.n == 3 {
                let s = schwarz_box(a.a, &ToleranceConfig::default())?;
                residual = residual.max((s.computed_radius - r).abs() / r);
                println!("computed r = {}", s.computed_radius);
                println!("Minkowski symmetral contains Schwarz symmetral: {}", s.minkowski_contains_schwarz);
            }
            println!("residual = {residual:e}");
            println!("r > a: {}", r > a.a);
            (residual, r > a.a)
        }
    };
    if residual <= RESIDUAL_TOL && holds {
        Ok(())
    } else {
        Err(Failure(3, format!("residual {residual:e} or the expected inequality fails")))
    }
}

fn invalid_n(e: Error) -> Failure {
    Failure(1, e.to_string())
}
