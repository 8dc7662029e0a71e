//! Command-line front-end: evaluate transforms, sample laws, simulate the
//! max-AR(1) schemes and the gamma-compounded extremal process, and run the
//! statistical checks. All output is CSV with a header row; floats carry 17
//! significant digits so files round-trip bit-exactly. Identical flags and
//! seed produce byte-identical output regardless of thread count.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain error, 4 check failed.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use harris_mo::statcheck::{ks_one_sample, ks_two_sample, KsReport};
use harris_mo::{
    make_semistable_psi, simulate_ar1, simulate_ar1_scaled, simulate_gamma_ep, ArConfig,
    BaseDistribution, EpConfig, HarrisMax, HarrisMin, HarrisParams, Law, MarshallOlkin,
    PsiFunction, PsiLaw,
};

#[derive(Parser)]
#[command(
    name = "harris-mo",
    version,
    about = "Marshall-Olkin / Harris transforms, samplers and process simulators"
)]
struct Cli {
    /// Write CSV here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Echo the invoking command line to the diagnostic stream.
    #[arg(long, global = true)]
    emit_cmdline: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a scheme at one or more points (CSV: x,value).
    Eval(EvalArgs),
    /// Draw seeded samples from a scheme (CSV: index,value).
    Sample(SampleArgs),
    /// Simulate a max-AR(1) scheme (CSV: path,step,value).
    Ar(ArArgs),
    /// Simulate the gamma-compounded extremal process (CSV: path,t,T,value).
    Ep(EpArgs),
    /// Kolmogorov-Smirnov checks on sample CSVs (CSV: statistic,critical,pass).
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Exp,
    Weibull,
    Pareto,
    Frechet,
    Uniform,
}

#[derive(Args, Clone)]
struct BaseArgs {
    /// Base family the scheme transforms.
    #[arg(long, value_enum, default_value = "exp")]
    base: Family,

    /// Rate of the exponential family.
    #[arg(long, allow_negative_numbers = true)]
    rate: Option<f64>,

    /// Shape of the Weibull, Pareto or Frechet family.
    #[arg(long, allow_negative_numbers = true)]
    shape: Option<f64>,

    /// Scale of the Weibull or Frechet family.
    #[arg(long, allow_negative_numbers = true)]
    scale: Option<f64>,

    /// Support minimum of the Pareto family.
    #[arg(long, allow_negative_numbers = true)]
    minimum: Option<f64>,

    /// Lower endpoint of the uniform family.
    #[arg(long, allow_negative_numbers = true)]
    lower: Option<f64>,

    /// Upper endpoint of the uniform family.
    #[arg(long, allow_negative_numbers = true)]
    upper: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheme {
    /// The untransformed base family.
    Base,
    /// Marshall-Olkin survival scheme (needs --alpha).
    Mo,
    /// Harris-minimum survival scheme (needs --a, --k).
    HarrisMin,
    /// Harris-maximum distribution scheme (needs --a, --k).
    HarrisMax,
    /// psi-construction distribution (needs --psi ... and --a, --k).
    Psi,
    /// The Harris(a, k) counting distribution (sample only).
    Harris,
}

#[derive(Clone, Copy, ValueEnum)]
enum PsiKind {
    /// psi(x) = x^-theta.
    Power,
    /// Log-periodic solution of psi(x) = a psi(c x); needs --psi-a, --psi-c.
    Semistable,
    /// psi(x) = -ln F(x) of the base family.
    NegLog,
    /// psi(x) = (1 - F(x))/F(x) of the base family.
    Odds,
}

#[derive(Args, Clone)]
struct SchemeArgs {
    #[arg(long, value_enum, default_value = "base")]
    scheme: Scheme,

    /// Marshall-Olkin parameter.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,

    /// Harris transform parameter a.
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,

    /// Harris transform parameter k.
    #[arg(long, default_value_t = 1)]
    k: u32,

    #[arg(long, value_enum)]
    psi: Option<PsiKind>,

    /// Power exponent of --psi power.
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,

    /// Invariance factor a of --psi semistable.
    #[arg(long, allow_negative_numbers = true)]
    psi_a: Option<f64>,

    /// Scale change c of --psi semistable.
    #[arg(long, allow_negative_numbers = true)]
    psi_c: Option<f64>,

    /// Log-periodic amplitude of --psi semistable.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    psi_epsilon: f64,

    #[command(flatten)]
    base: BaseArgs,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    scheme: SchemeArgs,

    /// Evaluation point; repeat for several rows.
    #[arg(long, required = true, allow_negative_numbers = true)]
    x: Vec<f64>,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    scheme: SchemeArgs,

    /// Number of draws.
    #[arg(long)]
    n: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Innovations {
    /// Innovations share the component law.
    Tied,
    /// Innovations follow the wrapped base family (stationary wiring for
    /// Harris-maximum components).
    Base,
}

#[derive(Args)]
struct ArArgs {
    /// Restart (or decay) probability p.
    #[arg(long, allow_negative_numbers = true)]
    p: f64,

    /// Scale constant; presence selects the scaled scheme.
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,

    #[arg(long)]
    paths: usize,

    /// Recursion steps; each path emits steps+1 rows.
    #[arg(long)]
    steps: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, value_enum, default_value = "tied")]
    innovations: Innovations,

    #[command(flatten)]
    component: SchemeArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum XiKind {
    /// xi(x) = x^-theta.
    Power,
    /// xi(x) = -ln F(x) of the base family.
    NegLog,
}

#[derive(Args)]
struct EpArgs {
    #[arg(long, value_enum, default_value = "power")]
    xi: XiKind,

    /// Power exponent of --xi power.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    theta: f64,

    /// Gamma scale of the random time change.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    alpha: f64,

    /// Gamma shape rate of the random time change.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    beta: f64,

    /// Observation times, comma separated, strictly increasing.
    #[arg(long = "t-grid", value_delimiter = ',', required = true, allow_negative_numbers = true)]
    t_grid: Vec<f64>,

    #[arg(long)]
    paths: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[command(flatten)]
    base: BaseArgs,
}

#[derive(Args)]
struct CheckArgs {
    /// Run a Kolmogorov-Smirnov check (the only mode).
    #[arg(long)]
    ks: bool,

    /// Sample CSV with a `value` column.
    #[arg(long)]
    input: PathBuf,

    /// Second sample CSV; switches to the two-sample statistic.
    #[arg(long)]
    input2: Option<PathBuf>,

    #[command(flatten)]
    scheme: SchemeArgs,
}

enum Failure {
    Usage(String),
    Domain(String),
    CheckFailed,
    Io(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 3,
            Failure::CheckFailed => 4,
            Failure::Io(_) => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn domain(flag: &str, err: harris_mo::Error) -> Failure {
    Failure::Domain(format!("{flag}: {err}"))
}

/// 17 significant digits: round-trip exact for f64.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn require(flag: &'static str, v: Option<f64>) -> Result<f64, Failure> {
    v.ok_or_else(|| usage(format!("{flag} is required by the selected family or scheme")))
}

fn build_base(args: &BaseArgs) -> Result<BaseDistribution, Failure> {
    match args.base {
        Family::Exp => {
            let rate = args.rate.unwrap_or(1.0);
            BaseDistribution::exponential(rate).map_err(|e| domain("--rate", e))
        }
        Family::Weibull => {
            let shape = require("--shape", args.shape)?;
            let scale = require("--scale", args.scale)?;
            BaseDistribution::weibull(shape, scale).map_err(|e| domain("--shape/--scale", e))
        }
        Family::Pareto => {
            let shape = require("--shape", args.shape)?;
            let minimum = require("--minimum", args.minimum)?;
            BaseDistribution::pareto(shape, minimum).map_err(|e| domain("--shape/--minimum", e))
        }
        Family::Frechet => {
            let shape = require("--shape", args.shape)?;
            let scale = require("--scale", args.scale)?;
            BaseDistribution::frechet(shape, scale).map_err(|e| domain("--shape/--scale", e))
        }
        Family::Uniform => {
            let lower = require("--lower", args.lower)?;
            let upper = require("--upper", args.upper)?;
            BaseDistribution::uniform(lower, upper).map_err(|e| domain("--lower/--upper", e))
        }
    }
}

fn build_hp(args: &SchemeArgs) -> Result<HarrisParams, Failure> {
    let a = require("--a", args.a)?;
    HarrisParams::new(a, args.k).map_err(|e| domain("--a/--k", e))
}

fn build_psi(args: &SchemeArgs) -> Result<PsiFunction, Failure> {
    let kind = args
        .psi
        .ok_or_else(|| usage("--psi is required when --scheme psi is selected"))?;
    match kind {
        PsiKind::Power => {
            let theta = require("--theta", args.theta)?;
            PsiFunction::power(theta).map_err(|e| domain("--theta", e))
        }
        PsiKind::Semistable => {
            let a = require("--psi-a", args.psi_a)?;
            let c = require("--psi-c", args.psi_c)?;
            make_semistable_psi(a, c, args.psi_epsilon)
                .map_err(|e| domain("--psi-a/--psi-c/--psi-epsilon", e))
        }
        PsiKind::NegLog => Ok(PsiFunction::neg_log_cdf(build_base(&args.base)?)),
        PsiKind::Odds => Ok(PsiFunction::survival_odds(build_base(&args.base)?)),
    }
}

/// Continuous law for the selected scheme; `harris` is rejected here because
/// the counting distribution has no continuous cdf.
fn build_law(args: &SchemeArgs) -> Result<Law, Failure> {
    match args.scheme {
        Scheme::Base => Ok(Arc::new(build_base(&args.base)?)),
        Scheme::Mo => {
            let alpha = require("--alpha", args.alpha)?;
            let law = MarshallOlkin::new(build_base(&args.base)?, alpha)
                .map_err(|e| domain("--alpha", e))?;
            Ok(Arc::new(law))
        }
        Scheme::HarrisMin => Ok(Arc::new(HarrisMin::new(
            build_base(&args.base)?,
            build_hp(args)?,
        ))),
        Scheme::HarrisMax => Ok(Arc::new(HarrisMax::new(
            build_base(&args.base)?,
            build_hp(args)?,
        ))),
        Scheme::Psi => {
            let hp = HarrisParams::new(args.a.unwrap_or(1.0), args.k)
                .map_err(|e| domain("--a/--k", e))?;
            Ok(Arc::new(PsiLaw::new(build_psi(args)?, hp)))
        }
        Scheme::Harris => Err(usage(
            "--scheme harris draws a counting distribution; it is available under `sample` only",
        )),
    }
}

fn open_sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout()))),
    }
}

fn emit<W: Write + ?Sized>(w: &mut W, line: &str) -> Result<(), Failure> {
    writeln!(w, "{line}").map_err(|e| Failure::Io(e.to_string()))
}

fn run_eval(args: &EvalArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if matches!(args.scheme.scheme, Scheme::Harris) {
        return Err(usage(
            "--scheme harris has no pointwise cdf to evaluate; use `sample`",
        ));
    }
    let law = build_law(&args.scheme)?;
    // survival schemes report their natural survival value
    let survival = matches!(args.scheme.scheme, Scheme::Mo | Scheme::HarrisMin);
    emit(out, "x,value")?;
    for &x in &args.x {
        let v = if survival { law.sf(x) } else { law.cdf(x) };
        emit(out, &format!("{},{}", fmt(x), fmt(v)))?;
    }
    Ok(())
}

fn run_sample(args: &SampleArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    match args.scheme.scheme {
        Scheme::Harris => {
            let hp = build_hp(&args.scheme)?;
            if hp.a() <= 1.0 {
                return Err(domain(
                    "--a",
                    harris_mo::Error::NotACountingLaw { a: hp.a() },
                ));
            }
            emit(out, "index,value")?;
            for i in 0..args.n {
                let v = hp.draw(&mut rng).map_err(|e| domain("--a", e))?;
                emit(out, &format!("{i},{v}"))?;
            }
        }
        _ => {
            let law = build_law(&args.scheme)?;
            emit(out, "index,value")?;
            for i in 0..args.n {
                emit(out, &format!("{i},{}", fmt(law.draw(&mut rng))))?;
            }
        }
    }
    Ok(())
}

fn run_ar(args: &ArArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let component = build_law(&args.component)?;
    // the vector length k of the recursion is the flattened --k flag: the
    // stationarity theorems tie it to the transform parameter of the same name
    let mut cfg = ArConfig::new(args.p, args.component.k, args.steps, args.paths, component)
        .map_err(|e| domain("--p/--k/--steps/--paths", e))?;
    if let Some(c) = args.c {
        cfg = cfg.with_scale(c).map_err(|e| domain("--c", e))?;
    }
    if matches!(args.innovations, Innovations::Base) {
        if !matches!(
            args.component.scheme,
            Scheme::Mo | Scheme::HarrisMin | Scheme::HarrisMax
        ) {
            return Err(usage(
                "--innovations base needs a component scheme that wraps a base family",
            ));
        }
        cfg = cfg.with_innovations(Arc::new(build_base(&args.component.base)?));
    }
    let paths = if args.c.is_some() {
        simulate_ar1_scaled(&cfg, args.seed)
    } else {
        simulate_ar1(&cfg, args.seed)
    }
    .map_err(|e| domain("--p", e))?;
    emit(out, "path,step,value")?;
    for path in &paths {
        for (step, v) in path.values.iter().enumerate() {
            emit(out, &format!("{},{step},{}", path.path_id, fmt(*v)))?;
        }
    }
    Ok(())
}

fn run_ep(args: &EpArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let xi = match args.xi {
        XiKind::Power => PsiFunction::power(args.theta).map_err(|e| domain("--theta", e))?,
        XiKind::NegLog => PsiFunction::neg_log_cdf(build_base(&args.base)?),
    };
    let cfg = EpConfig::new(xi, args.alpha, args.beta, args.t_grid.clone(), args.paths)
        .map_err(|e| domain("--alpha/--beta/--t-grid/--paths", e))?;
    let paths = simulate_gamma_ep(&cfg, args.seed).map_err(|e| domain("--paths", e))?;
    emit(out, "path,t,T,value")?;
    for path in &paths {
        let time_change = path
            .time_change
            .as_ref()
            .expect("extremal-process paths carry the time change");
        for ((t, big_t), v) in path.ticks.iter().zip(time_change).zip(&path.values) {
            emit(
                out,
                &format!("{},{},{},{}", path.path_id, fmt(*t), fmt(*big_t), fmt(*v)),
            )?;
        }
    }
    Ok(())
}

/// Reads the `value` column of a sample CSV.
fn read_values(path: &PathBuf) -> Result<Vec<f64>, Failure> {
    let file = File::open(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let mut lines = BufReader::new(file).lines();
    let header = lines
        .next()
        .ok_or_else(|| usage(format!("{}: empty file", path.display())))?
        .map_err(|e| Failure::Io(e.to_string()))?;
    let col = header
        .split(',')
        .position(|name| name.trim() == "value")
        .ok_or_else(|| usage(format!("{}: no `value` column", path.display())))?;
    let mut values = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.map_err(|e| Failure::Io(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let field = line.split(',').nth(col).ok_or_else(|| {
            usage(format!("{}: row {} lacks column {col}", path.display(), i + 2))
        })?;
        let v: f64 = field.trim().parse().map_err(|_| {
            usage(format!(
                "{}: row {} has non-numeric value {field:?}",
                path.display(),
                i + 2
            ))
        })?;
        values.push(v);
    }
    Ok(values)
}

fn run_check(args: &CheckArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if !args.ks {
        return Err(usage("check currently supports --ks only"));
    }
    let samples = read_values(&args.input)?;
    let report: KsReport = match &args.input2 {
        Some(second) => {
            let other = read_values(second)?;
            ks_two_sample(&samples, &other).map_err(|e| domain("--input/--input2", e))?
        }
        None => {
            let law = build_law(&args.scheme)?;
            ks_one_sample(&samples, |x| law.cdf(x)).map_err(|e| domain("--input", e))?
        }
    };
    emit(out, "statistic,critical,pass")?;
    emit(
        out,
        &format!(
            "{},{},{}",
            fmt(report.statistic),
            fmt(report.critical_value_1pct),
            report.pass
        ),
    )?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::CheckFailed)
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if cli.emit_cmdline {
        let argv: Vec<String> = std::env::args().collect();
        eprintln!("# {}", argv.join(" "));
    }
    let mut out = open_sink(&cli.output)?;
    match &cli.cmd {
        Cmd::Eval(a) => run_eval(a, out.as_mut())?,
        Cmd::Sample(a) => run_sample(a, out.as_mut())?,
        Cmd::Ar(a) => run_ar(a, out.as_mut())?,
        Cmd::Ep(a) => run_ep(a, out.as_mut())?,
        Cmd::Check(a) => run_check(a, out.as_mut())?,
    }
    out.flush().map_err(|e| Failure::Io(e.to_string()))?;
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => {}
        Err(failure) => {
            match &failure {
                Failure::Usage(m) => eprintln!("usage error: {m}"),
                Failure::Domain(m) => eprintln!("domain error: {m}"),
                Failure::CheckFailed => eprintln!("check failed"),
                Failure::Io(m) => eprintln!("io error: {m}"),
            }
            std::process::exit(failure.exit_code());
        }
    }
}
