//! Command-line front end: polytope queries, model construction, experiments
//! and contour rendering.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use isolab::experiments::{
    run_convergence, run_deterministic_check, run_quermass_experiment, run_shadow_convexity,
    run_zhang_experiment, ExperimentConfig, ExperimentReport, Functional,
};
use isolab::functionals::quermass_fn;
use isolab::geometry::{
    convex_hull, format_polytope, projection_volume, quermassintegrals, read_polytope, volume,
    Vector,
};
use isolab::model::{build_model, sample_hypograph, Role, RngStream, StochasticModel};
use isolab::pconcave::{truncate, FunctionSpec, PConcaveFunction};
use isolab::render::{parse_levels, render_svg_contours};
use isolab::Error;

#[derive(Parser)]
#[command(name = "isolab", version, about = "Stochastic models of p-concave functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quermassintegrals, volume and projections of a polytope file.
    Geom(GeomArgs),
    /// Sample a function, build its stochastic model and print a summary.
    Model(ModelArgs),
    /// Run a seeded experiment from a JSON config.
    Experiment {
        #[command(subcommand)]
        kind: ExperimentKind,
    },
    /// Draw superlevel contours of a planar model as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct GeomArgs {
    #[arg(long)]
    polytope: PathBuf,
    /// Print W0,...,W_{n-1}.
    #[arg(long)]
    quermass: bool,
    #[arg(long)]
    volume: bool,
    /// Print |P_{u⊥} K| for a comma-separated direction.
    #[arg(long, value_name = "U")]
    projection: Option<String>,
    /// Print the hull in polytope text format.
    #[arg(long)]
    hull: bool,
}

#[derive(Args)]
struct Sampling {
    /// Function description (JSON).
    #[arg(long)]
    function: PathBuf,
    /// Model exponent; a number or `inf`.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long = "N", value_name = "N")]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample f·χ_{f ≥ ε} instead of f.
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Args)]
struct ModelArgs {
    #[command(flatten)]
    sampling: Sampling,
    /// Report superlevel volumes at `lo:hi:count`.
    #[arg(long)]
    levels: Option<String>,
    /// Write the hypograph sample as CSV.
    #[arg(long)]
    samples_out: Option<PathBuf>,
    /// Write the lifted hull in polytope text format.
    #[arg(long)]
    hull_out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    sampling: Sampling,
    #[arg(long, default_value = "0.1:0.9:9")]
    levels: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    /// Directory for trials.csv and summary.json; the summary goes to
    /// standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ExperimentKind {
    /// Expected W_i of models of f against models of f*.
    Quermass(ExperimentArgs),
    /// Expected perimeter of models of f against models of f*.
    Perimeter(ExperimentArgs),
    /// Expected ν(Π°Φ) of models of f against models of f*.
    Zhang(ExperimentArgs),
    /// Quadrature comparison of f and f*.
    Deterministic(ExperimentArgs),
    /// Errors of nested-prefix models against f_ε.
    Convergence(ExperimentArgs),
    /// Midpoint convexity along shadow systems of random polygons.
    Shadow(ExperimentArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 1 } else { 2 })
        }
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Geom(args) => geom(args),
        Command::Model(args) => model(args),
        Command::Experiment { kind } => experiment(kind),
        Command::Render(args) => render(args),
    }
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn geom(args: GeomArgs) -> Result<(), Error> {
    let k = read_polytope(&args.polytope)?;
    let any = args.volume || args.projection.is_some() || args.hull;
    if args.quermass || !any {
        println!("{}", join(&quermassintegrals(&k)?));
    }
    if args.volume {
        println!("{}", volume(&k));
    }
    if let Some(u) = &args.projection {
        let coords = u
            .split(',')
            .map(|c| c.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidParameter(format!("direction {u:?}")))?;
        if coords.len() != k.dim() {
            return Err(Error::DimensionMismatch { expected: k.dim(), found: coords.len() });
        }
        let u = Vector::new(&coords)
            .normalized()
            .ok_or_else(|| Error::InvalidParameter("direction must be nonzero".into()))?;
        println!("{}", projection_volume(&k, &u)?);
    }
    if args.hull {
        print!("{}", format_polytope(&convex_hull(k.vertices(), k.dim())?));
    }
    Ok(())
}

fn load_function(path: &Path) -> Result<(serde_json::Value, PConcaveFunction), Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let base = path.parent().unwrap_or(Path::new(""));
    let f = FunctionSpec::from_value(&value)?.build(base)?;
    Ok((value, f))
}

fn parse_exponent(s: &str) -> Result<f64, Error> {
    match s.trim() {
        "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
        t => t
            .parse::<f64>()
            .ok()
            .filter(|p| p.is_finite())
            .ok_or_else(|| Error::InvalidParameter(format!("p = {s:?}"))),
    }
}

struct Built {
    echo: serde_json::Value,
    model: StochasticModel,
    csv: String,
    acceptance: f64,
}

fn build(s: &Sampling, default_p: Option<f64>) -> Result<Built, Error> {
    let (spec, f) = load_function(&s.function)?;
    let p = match (&s.p, default_p) {
        (Some(p), _) => parse_exponent(p)?,
        (None, Some(p)) => p,
        (None, None) => return Err(Error::InvalidParameter("missing --p".into())),
    };
    let f = match s.epsilon {
        Some(eps) => truncate(&f, eps)?,
        None => f,
    };
    let mut rng = RngStream::for_trial(s.seed, 0, Role::Original);
    let sample = sample_hypograph(&f, s.samples, &mut rng)?;
    let model = build_model(&sample, p, None)?;
    let echo = json!({
        "function": spec,
        "p": if p.is_infinite() { json!("inf") } else { json!(p) },
        "N": s.samples,
        "seed": s.seed,
        "epsilon": s.epsilon,
    });
    Ok(Built { echo, model, csv: sample.to_csv(), acceptance: sample.acceptance_rate() })
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn model(args: ModelArgs) -> Result<(), Error> {
    let built = build(&args.sampling, None)?;
    eprintln!("config: {}", built.echo);
    let m = &built.model;
    let phi = PConcaveFunction::from_model(m.clone());
    let w = (0..m.dim()).map(|i| quermass_fn(&phi, i)).collect::<Result<Vec<_>, _>>()?;
    let mut levels = Vec::new();
    if let Some(spec) = &args.levels {
        for t in parse_levels(spec)? {
            let vol = if t > m.max() { 0.0 } else { volume(&m.superlevel(t)?) };
            levels.push(json!({"t": t, "volume": vol}));
        }
    }
    if let Some(path) = &args.samples_out {
        write_file(path, &built.csv)?;
    }
    if let Some(path) = &args.hull_out {
        write_file(path, &format_polytope(m.lifted_hull()))?;
    }
    let summary = json!({
        "config": built.echo,
        "max": m.max(),
        "acceptance_rate": built.acceptance,
        "lifted_vertices": m.lifted_hull().vertices().len(),
        "breakpoints": m.breakpoints().len(),
        "quermassintegrals": w,
        "levels": levels,
    });
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(())
}

fn render(args: RenderArgs) -> Result<(), Error> {
    let levels = parse_levels(&args.levels)?;
    let built = build(&args.sampling, Some(0.0))?;
    eprintln!("config: {}", built.echo);
    if built.model.dim() != 2 {
        return Err(Error::RenderDimension(built.model.dim()));
    }
    render_svg_contours(&built.model, &levels, &args.out)
}

fn experiment(kind: ExperimentKind) -> Result<(), Error> {
    type Runner = fn(&ExperimentConfig) -> isolab::Result<ExperimentReport>;
    let (args, runner, functional): (ExperimentArgs, Runner, Option<Functional>) = match kind {
        ExperimentKind::Quermass(a) => (a, run_quermass_experiment, None),
        ExperimentKind::Perimeter(a) => (a, run_quermass_experiment, Some(Functional::Perimeter)),
        ExperimentKind::Zhang(a) => (a, run_zhang_experiment, None),
        ExperimentKind::Deterministic(a) => (a, run_deterministic_check, None),
        ExperimentKind::Convergence(a) => (a, run_convergence, None),
        ExperimentKind::Shadow(a) => (a, run_shadow_convexity, None),
    };
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if let Some(f) = functional {
        cfg.functional = f;
    }
    let report = runner(&cfg)?;
    eprintln!("config: {}", serde_json::to_string(&report.config)?);
    eprintln!(
        "{} {}: {:?} in {:.2} s",
        report.experiment, report.functional, report.verdict, report.runtime_s
    );
    match &args.out {
        Some(dir) => report.write(dir)?,
        None => println!("{}", report.to_json()),
    }
    Ok(())
}
