//! `okamoto`: evaluate, plot and probe Okamoto's functions from the shell.
//!
//! Exit status: 0 on success, 2 on a usage error, 3 when an argument is
//! outside the domain of the operation, 4 when a size cap is hit and 1 when
//! output cannot be written.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use okamoto_core::fractal::okamoto_iterative_capped;
use okamoto_core::fractal::DEFAULT_MAX_POINTS;
use okamoto_core::{
    box_dimension_formula, hata_yamaguti_check, k_partial_sum, k_series_phi, lebesgue_l,
    okamoto_series, sigma_decompose, sigma_fuzz, takagi, walk_monte_carlo, ClassificationReport,
    ExactRational, OkamotoParams, SeriesTruncation,
};
use serde_json::{json, Value};

use render::{num, SCHEMA_VERSION};

#[derive(Parser)]
#[command(
    name = "okamoto",
    version,
    about = "Okamoto's functions, K(x) and friends"
)]
struct Cli {
    /// Directory that relative `--output` paths are resolved against.
    #[arg(long, global = true, env = "OKAMOTO_OUTPUT_DIR")]
    output_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a function on a uniform grid of [0, 1].
    Eval(EvalArgs),
    /// Exact breakpoints and ordinates of the level-n approximation f_n.
    Construct(ConstructArgs),
    /// Infinite-derivative verdict for K at a rational point.
    Classify(ClassifyArgs),
    /// Split (K(x+h) − K(x))/h into its four partial sums.
    Sigma(SigmaArgs),
    /// Run one of the numerical experiments.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Function {
    Takagi,
    Lebesgue,
    Okamoto,
    #[value(name = "K")]
    K,
    #[value(name = "Kn")]
    Kn,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Args)]
struct Output {
    /// Write here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    function: Function,
    /// Parameter of `lebesgue` and `okamoto`.
    #[arg(long, default_value_t = 1.0 / 3.0)]
    a: f64,
    /// Series terms (recursion depth for `lebesgue`, n for `Kn`).
    #[arg(long)]
    terms: Option<usize>,
    #[arg(long, default_value_t = 101)]
    samples: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ConstructArgs {
    /// Parameter as `p/q`.
    #[arg(long)]
    a: String,
    #[arg(long)]
    level: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Point as `p/q` in [0, 1].
    x: String,
    /// Number of walk values to print.
    #[arg(long, default_value_t = 20)]
    prefix: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct SigmaArgs {
    /// Ternary rational `p/3^m`.
    x: String,
    /// Ternary rational step `h > 0`.
    h: String,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Experiment {
    BoxDim,
    WalkMc,
    SigmaFuzz,
    HataYamaguti,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(value_enum)]
    name: Experiment,
    /// box-dim: parameter as `p/q`.
    #[arg(long, default_value = "2/3")]
    a: String,
    /// box-dim: finest level.
    #[arg(long, default_value_t = 8)]
    levels: u32,
    /// box-dim: first level in the fit.
    #[arg(long, default_value_t = okamoto_core::dimension::BOX_FIT_FROM)]
    fit_from: u32,
    /// walk-mc: number of paths.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// walk-mc: steps per path.
    #[arg(long, default_value_t = 10_000)]
    horizon: u64,
    /// sigma-fuzz: number of random pairs.
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// hata-yamaguti: step in a.
    #[arg(long, default_value_t = 1e-6)]
    h: f64,
    /// hata-yamaguti: grid size.
    #[arg(long, default_value_t = 100)]
    points: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// walk-mc: worker threads; results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    out: Output,
}

enum Failure {
    Usage(String),
    Core(okamoto_core::Error),
    Io(String),
}

impl From<okamoto_core::Error> for Failure {
    fn from(e: okamoto_core::Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Core(okamoto_core::Error::Resource { .. }) => 4,
            Failure::Core(_) => 3,
            Failure::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Io(m) => f.write_str(m),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

type Run = Result<String, Failure>;

fn parse_rational(s: &str) -> Result<ExactRational, Failure> {
    Ok(s.parse::<ExactRational>()?)
}

fn grid(samples: usize) -> Result<Vec<f64>, Failure> {
    if samples < 2 {
        return Err(Failure::Usage("--samples must be at least 2".into()));
    }
    Ok((0..samples)
        .map(|i| i as f64 / (samples - 1) as f64)
        .collect())
}

fn eval(args: &EvalArgs) -> Run {
    let xs = grid(args.samples)?;
    let ternary = SeriesTruncation::TERNARY_TERMS;
    let (name, terms, y_range) = match args.function {
        Function::Takagi => (
            "takagi",
            args.terms.unwrap_or(SeriesTruncation::BINARY_TERMS),
            (0.0, 1.0),
        ),
        Function::Lebesgue => (
            "lebesgue",
            args.terms.unwrap_or(SeriesTruncation::BINARY_TERMS),
            (0.0, 1.0),
        ),
        Function::Okamoto => ("okamoto", args.terms.unwrap_or(ternary), (0.0, 1.0)),
        Function::K => ("K", args.terms.unwrap_or(ternary), (-1.5, 1.5)),
        Function::Kn => ("Kn", args.terms.unwrap_or(3), (-1.5, 1.5)),
    };
    let values: Vec<f64> = match args.function {
        Function::Takagi => {
            let trunc = SeriesTruncation::takagi(terms);
            xs.iter().map(|&x| takagi(x, &trunc)).collect()
        }
        Function::Lebesgue => xs
            .iter()
            .map(|&x| lebesgue_l(args.a, x, terms))
            .collect::<Result<_, _>>()?,
        Function::Okamoto => {
            let params = OkamotoParams::new(args.a)?;
            let trunc = SeriesTruncation::okamoto(args.a, terms);
            xs.iter()
                .map(|x| okamoto_series(&params, x, &trunc))
                .collect()
        }
        Function::K => {
            let trunc = SeriesTruncation::k_phi(terms);
            xs.iter().map(|&x| k_series_phi(x, &trunc)).collect()
        }
        Function::Kn => xs.iter().map(|&x| k_partial_sum(x, terms)).collect(),
    };
    let uses_a = matches!(args.function, Function::Lebesgue | Function::Okamoto);
    Ok(match args.format {
        Format::Csv => render::csv(
            "x,value",
            xs.iter().zip(&values).map(|(&x, &v)| (num(x), num(v))),
        ),
        Format::Json => render::json(&json!({
            "schema_version": SCHEMA_VERSION,
            "function": name,
            "a": if uses_a { Value::from(args.a) } else { Value::Null },
            "terms": terms,
            "points": xs.iter().zip(&values).map(|(&x, &v)| json!({"x": clean(x), "value": clean(v)})).collect::<Vec<_>>(),
        })),
        Format::Svg => {
            let title = if uses_a {
                format!("{name}, a = {}", args.a)
            } else {
                name.to_string()
            };
            let pts: Vec<(f64, f64)> = xs.iter().copied().zip(values).collect();
            render::svg(&title, &pts, y_range)
        }
    })
}

/// Drops the sign of zero.
fn clean(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

fn construct(args: &ConstructArgs) -> Run {
    let a = parse_rational(&args.a)?;
    let f = okamoto_iterative_capped(&a, args.level, DEFAULT_MAX_POINTS)?;
    let xs: Vec<ExactRational> = (0..f.ordinates().len()).map(|k| f.breakpoint(k)).collect();
    Ok(match args.format {
        Format::Csv => render::csv(
            "x,value",
            xs.iter()
                .zip(f.ordinates())
                .map(|(x, y)| (x.to_string(), y.to_string())),
        ),
        Format::Json => render::json(&json!({
            "schema_version": SCHEMA_VERSION,
            "a": a.to_string(),
            "level": args.level,
            "breakpoints": xs.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "ordinates": f.ordinates().iter().map(ToString::to_string).collect::<Vec<_>>(),
        })),
        Format::Svg => {
            let pts: Vec<(f64, f64)> = xs
                .iter()
                .zip(f.ordinates())
                .map(|(x, y)| (x.to_f64(), y.to_f64()))
                .collect();
            render::svg(&format!("f_{} for a = {a}", args.level), &pts, (0.0, 1.0))
        }
    })
}

fn with_schema(value: Value) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("schema_version".into(), SCHEMA_VERSION.into());
    if let Value::Object(m) = value {
        obj.extend(m);
    }
    Value::Object(obj)
}

fn to_value(v: impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn classify(args: &ClassifyArgs) -> Run {
    let x = parse_rational(&args.x)?;
    let report = ClassificationReport::new(&x, args.prefix)?;
    Ok(render::json(&with_schema(to_value(&report))))
}

fn sigma(args: &SigmaArgs) -> Run {
    let x = parse_rational(&args.x)?;
    let h = parse_rational(&args.h)?;
    let dec = sigma_decompose(&x, &h)?;
    let mut value = with_schema(to_value(&dec));
    value["sandwich"] = json!(dec.sandwich());
    value["violations"] = to_value(dec.violations());
    Ok(render::json(&value))
}

fn experiment(args: &ExperimentArgs) -> Run {
    let csv_ok = matches!(args.name, Experiment::BoxDim);
    if args.format == Format::Svg || (args.format == Format::Csv && !csv_ok) {
        return Err(Failure::Usage(
            "this experiment does not support that --format".into(),
        ));
    }
    match args.name {
        Experiment::BoxDim => {
            let a = parse_rational(&args.a)?;
            let res = okamoto_core::dimension::box_dimension_estimate_from(
                &a,
                args.levels,
                args.fit_from,
            )?;
            if args.format == Format::Csv {
                return Ok(render::csv(
                    "scale,count",
                    res.scales
                        .iter()
                        .zip(&res.counts)
                        .map(|(s, c)| (num(*s), c.to_string())),
                ));
            }
            let mut value = with_schema(to_value(&res));
            value["a"] = json!(a.to_string());
            value["formula_dimension"] = json!(box_dimension_formula(a.to_f64())?);
            Ok(render::json(&value))
        }
        Experiment::WalkMc => {
            let run = || walk_monte_carlo(args.samples, args.horizon, args.seed);
            let res = match args.workers {
                Some(0) => return Err(Failure::Usage("--workers must be positive".into())),
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Failure::Io(e.to_string()))?
                    .install(run)?,
                None => run()?,
            };
            Ok(render::json(&with_schema(to_value(&res))))
        }
        Experiment::SigmaFuzz => Ok(render::json(&with_schema(to_value(sigma_fuzz(
            args.trials,
            args.seed,
        )?)))),
        Experiment::HataYamaguti => Ok(render::json(&with_schema(to_value(hata_yamaguti_check(
            args.h,
            args.points,
        )?)))),
    }
}

fn emit(text: &str, out: &Output, dir: Option<&PathBuf>) -> Result<(), Failure> {
    match &out.output {
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Io(format!("stdout: {e}")))
        }
        Some(path) => {
            let path = match dir {
                Some(d) if path.is_relative() => d.join(path),
                _ => path.clone(),
            };
            std::fs::write(&path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let dir = cli.output_dir.as_ref();
    let result = match &cli.command {
        Command::Eval(a) => eval(a).and_then(|t| emit(&t, &a.out, dir)),
        Command::Construct(a) => construct(a).and_then(|t| emit(&t, &a.out, dir)),
        Command::Classify(a) => classify(a).and_then(|t| emit(&t, &a.out, dir)),
        Command::Sigma(a) => sigma(a).and_then(|t| emit(&t, &a.out, dir)),
        Command::Experiment(a) => experiment(a).and_then(|t| emit(&t, &a.out, dir)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("okamoto: {e}");
            ExitCode::from(e.code())
        }
    }
}
