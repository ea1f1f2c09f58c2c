//! `git-stab`: command-line front end.
//!
//! Exit codes: 0 for a determinate answer, 2 when the answer is only
//! presumed (no destabilizer found, or an undetermined classification),
//! 1 for input errors, failed certificate checks and failed self-tests.

mod render;

use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gitstab::applications::{analyze_cubic_pencil, analyze_halphen, analyze_sum, certificate_bridges, FiberType};
use gitstab::geometry::search_with_flags;
use gitstab::input::{parse_order, parse_weights, InputFile};
use gitstab::json::SCHEMA;
use gitstab::nets::{wall_cross_check, NetOfConics};
use gitstab::polyhedra::{search_destabilizer, toric_lct_bound, CertificateFrame};
use gitstab::weights::{omega_system_greedy, omega_system_oracle, verdict_at_lambda};
use gitstab::{LinearSystem, OneParamSubgroup, Poly, ProjChange};

#[derive(Parser, Debug)]
#[command(name = "git-stab", version, about = "Exact torus-level GIT stability of linear systems of hypersurfaces")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the randomized parts of `selftest`; echoed in JSON output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of variables (n+1) used to read polynomials.
    #[arg(long, global = true, default_value_t = 3)]
    vars: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Subgroup {
    /// Weights a_0, …, a_n summing to zero, e.g. `1,0,-1`.
    #[arg(long, allow_hyphen_values = true, requires = "order")]
    lambda: Option<String>,
    /// Variables the weights attach to, in order, e.g. `y,x,z`.
    #[arg(long)]
    order: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert–Mumford weight ω(𝓛, λ) of a system at a subgroup.
    Omega {
        /// Generators: input files or inline polynomials.
        #[arg(long, num_args = 1.., required = true)]
        system: Vec<String>,
        #[command(flatten)]
        subgroup: Subgroup,
    },
    /// Status at a subgroup, or re-verification of a JSON certificate.
    Verdict {
        #[arg(long, num_args = 1.., required = true)]
        system: Vec<String>,
        #[command(flatten)]
        subgroup: Subgroup,
        /// JSON file holding a certificate (`lambda` and `coordinates`).
        #[arg(long, conflicts_with = "lambda")]
        certificate: Option<String>,
    },
    /// Search for a destabilizing subgroup.
    Destabilize {
        #[arg(long, num_args = 1.., required = true)]
        system: Vec<String>,
        /// Only search the diagonal torus of the given coordinates.
        #[arg(long)]
        given_frame_only: bool,
    },
    /// Toric upper bound for the log canonical threshold of a hypersurface.
    LctBound {
        #[arg(required = true)]
        poly: Vec<String>,
    },
    /// Net of conics: discriminant, Wall's criterion, direct criterion.
    Net {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Pencil of plane cubics.
    Pencil {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Halphen pencil of index m (degree 3m).
    Halphen {
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Index m; defaults to the degree divided by 3.
        #[arg(long)]
        index: Option<u32>,
        /// Kodaira types of the fibers, e.g. `II*,In*`.
        #[arg(long, value_delimiter = ',')]
        fibers: Vec<String>,
    },
    /// Product of hypersurfaces of a common degree.
    Sum {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Runs the shipped examples and seeded random cross-checks.
    Selftest,
}

/// Whether the answer is backed by a proof or only presumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Determinate,
    Presumed,
    Failed,
}

impl Outcome {
    fn code(self) -> u8 {
        match self {
            Outcome::Determinate => 0,
            Outcome::Presumed => 2,
            Outcome::Failed => 1,
        }
    }

    fn from_presumed(presumed: bool) -> Outcome {
        if presumed {
            Outcome::Presumed
        } else {
            Outcome::Determinate
        }
    }
}

struct Output {
    result: Value,
    text: String,
    outcome: Outcome,
}

fn read_forms(args: &[String], vars: usize) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for a in args {
        let path = Path::new(a);
        if path.is_file() {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {a}"))?;
            let input = InputFile::parse(&text);
            if input.polys.is_empty() {
                bail!("{a}: no polynomial found");
            }
            out.extend(input.forms(vars).with_context(|| format!("parsing {a}"))?);
        } else {
            out.push(Poly::parse(a, vars).with_context(|| format!("parsing `{a}`"))?);
        }
    }
    Ok(out)
}

fn read_system(args: &[String], vars: usize) -> Result<LinearSystem> {
    Ok(LinearSystem::new(read_forms(args, vars)?)?)
}

const NAMES: [&str; 4] = ["x", "y", "z", "w"];

fn var_name(i: usize, n: usize) -> String {
    if n <= NAMES.len() {
        NAMES[i].to_string()
    } else {
        format!("x{i}")
    }
}

/// The frame renaming variables so that weight `a_j` attaches to the
/// `j`-th listed variable, with the weights sorted descending.
fn bind(sub: &Subgroup, n: usize) -> Result<Option<(OneParamSubgroup, ProjChange, Vec<String>)>> {
    let Some(lambda) = &sub.lambda else { return Ok(None) };
    let order_text = sub.order.as_ref().ok_or_else(|| anyhow!("--order is required with --lambda"))?;
    let raw = parse_weights(lambda)?;
    let order = parse_order(order_text, n)?;
    if raw.len() != n {
        bail!("--lambda has {} weights for {n} variables", raw.len());
    }
    let mut pairs: Vec<(i64, usize)> = raw.into_iter().zip(order).collect();
    pairs.sort_by_key(|p| std::cmp::Reverse(p.0));
    let weights: Vec<i64> = pairs.iter().map(|p| p.0).collect();
    let order: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    let lambda = OneParamSubgroup::normalize(&weights)?;
    let frame = ProjChange::permutation(&order)?;
    Ok(Some((lambda, frame, order.iter().map(|&i| var_name(i, n)).collect())))
}

fn omega(system: &[String], sub: &Subgroup, vars: usize) -> Result<Output> {
    let sys = read_system(system, vars)?;
    let (lambda, frame, binding) = bind(sub, sys.num_vars())?.ok_or_else(|| anyhow!("--lambda is required"))?;
    let moved = sys.apply_change(&frame)?;
    let (report, witnesses) = omega_system_greedy(&moved, &lambda, None)?;
    let oracle = omega_system_oracle(&moved, &lambda).ok().map(|r| r.omega);
    if oracle.is_some_and(|o| o != report.omega) {
        bail!("internal error: greedy and minor computations of omega disagree");
    }
    let text = render::omega(&lambda, &binding, &report, oracle, &witnesses);
    let result = json!({
        "lambda": lambda, "binding": binding, "report": report, "oracle_omega": oracle, "witnesses": witnesses,
    });
    Ok(Output { result, text, outcome: Outcome::Determinate })
}

fn verdict(system: &[String], sub: &Subgroup, certificate: Option<&str>, vars: usize) -> Result<Output> {
    let sys = read_system(system, vars)?;
    if let Some(path) = certificate {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let value: Value = serde_json::from_str(&text).with_context(|| format!("{path}: not JSON"))?;
        let frame_value = find_certificate(&value).ok_or_else(|| anyhow!("{path}: no certificate found"))?;
        let frame: CertificateFrame = serde_json::from_value(frame_value.clone())?;
        let moved = sys.apply_change(&frame.coordinates)?;
        let report = verdict_at_lambda(&moved, &frame.lambda)?;
        let valid = report.status_at_lambda.destabilizes();
        let text = render::certificate_check(&frame, &report, valid);
        let result = json!({ "certificate_valid": valid, "lambda": frame.lambda, "report": report });
        return Ok(Output { result, text, outcome: if valid { Outcome::Determinate } else { Outcome::Failed } });
    }
    let (lambda, frame, binding) =
        bind(sub, sys.num_vars())?.ok_or_else(|| anyhow!("give --lambda with --order, or --certificate"))?;
    let report = verdict_at_lambda(&sys.apply_change(&frame)?, &lambda)?;
    let text = render::status(&lambda, &binding, &report);
    let result = json!({ "lambda": lambda, "binding": binding, "report": report });
    Ok(Output { result, text, outcome: Outcome::Determinate })
}

/// First object (depth-first) carrying both `lambda` and `coordinates`.
fn find_certificate(v: &Value) -> Option<&Value> {
    match v {
        Value::Object(m) if m.contains_key("lambda") && m.contains_key("coordinates") => Some(v),
        Value::Object(m) => m.values().find_map(find_certificate),
        Value::Array(a) => a.iter().find_map(find_certificate),
        _ => None,
    }
}

fn destabilize(system: &[String], given_only: bool, vars: usize) -> Result<Output> {
    let sys = read_system(system, vars)?;
    let search = if given_only || sys.num_vars() != 3 {
        search_destabilizer(&sys, &[])?
    } else {
        search_with_flags(&sys)?
    };
    let bridges = search.certificate().map(|c| certificate_bridges(&sys, c)).transpose()?;
    let text = render::search(&sys, &search, bridges.as_ref());
    let result = json!({ "threshold": gitstab::algebra::field::rat_string(&sys.threshold()), "search": search, "bridges": bridges });
    Ok(Output { result, text, outcome: Outcome::from_presumed(!search.is_destabilized()) })
}

fn lct_bound(poly: &[String], vars: usize) -> Result<Output> {
    let forms = read_forms(poly, vars)?;
    let [f]: [Poly; 1] = forms.try_into().map_err(|_| anyhow!("lct-bound takes a single polynomial"))?;
    let bound = toric_lct_bound(&f)?;
    let shown = bound.as_ref().map(gitstab::algebra::field::rat_string);
    let text = match &shown {
        Some(b) => format!("toric lct bound: {b}\n"),
        None => "toric lct bound: none (every diagonal subgroup has weight 0)\n".to_string(),
    };
    Ok(Output { result: json!({ "poly": f, "bound": shown }), text, outcome: Outcome::Determinate })
}

fn net(inputs: &[String], vars: usize) -> Result<Output> {
    if vars != 3 {
        bail!("nets of conics live in the plane (--vars 3)");
    }
    let forms = read_forms(inputs, 3)?;
    let [a, b, c]: [Poly; 3] = forms.try_into().map_err(|_| anyhow!("a net needs exactly three conics"))?;
    let report = wall_cross_check(&NetOfConics::new(a, b, c)?)?;
    let text = render::net(&report);
    let outcome = if !report.consistent() {
        Outcome::Failed
    } else {
        Outcome::from_presumed(!report.determinate())
    };
    Ok(Output { result: serde_json::to_value(&report)?, text, outcome })
}

fn pencil_outcome(r: &gitstab::applications::PencilReport) -> Outcome {
    Outcome::from_presumed(!r.verdict.is_determinate())
}

fn pencil(inputs: &[String], vars: usize) -> Result<Output> {
    let report = analyze_cubic_pencil(&read_system(inputs, vars)?)?;
    let text = render::pencil(&report);
    Ok(Output { result: serde_json::to_value(&report)?, text, outcome: pencil_outcome(&report) })
}

fn halphen(inputs: &[String], index: Option<u32>, fibers: &[String], vars: usize) -> Result<Output> {
    let sys = read_system(inputs, vars)?;
    let m = match index {
        Some(m) => m,
        None if sys.degree() % 3 == 0 => sys.degree() / 3,
        None => bail!("degree {} is not a multiple of 3; give --index", sys.degree()),
    };
    let fibers: Vec<FiberType> = fibers.iter().map(|f| f.parse()).collect::<gitstab::Result<_>>()?;
    let report = analyze_halphen(&sys, m, &fibers)?;
    let text = render::pencil(&report);
    Ok(Output { result: serde_json::to_value(&report)?, text, outcome: pencil_outcome(&report) })
}

fn sum(inputs: &[String], vars: usize) -> Result<Output> {
    let report = analyze_sum(&read_forms(inputs, vars)?)?;
    let text = render::sum(&report);
    let outcome = if report.consistent() { Outcome::Determinate } else { Outcome::Failed };
    Ok(Output { result: serde_json::to_value(&report)?, text, outcome })
}

fn selftest(seed: u64) -> Result<Output> {
    let report = gitstab::selftest::run(seed)?;
    let text = render::selftest(&report);
    let outcome = if report.passed { Outcome::Determinate } else { Outcome::Failed };
    Ok(Output { result: serde_json::to_value(&report)?, text, outcome })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Omega { .. } => "omega",
        Command::Verdict { .. } => "verdict",
        Command::Destabilize { .. } => "destabilize",
        Command::LctBound { .. } => "lct-bound",
        Command::Net { .. } => "net",
        Command::Pencil { .. } => "pencil",
        Command::Halphen { .. } => "halphen",
        Command::Sum { .. } => "sum",
        Command::Selftest => "selftest",
    }
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let v = cli.vars;
    if !(2..=16).contains(&v) {
        bail!("--vars must be between 2 and 16");
    }
    match &cli.command {
        Command::Omega { system, subgroup } => omega(system, subgroup, v),
        Command::Verdict { system, subgroup, certificate } => verdict(system, subgroup, certificate.as_deref(), v),
        Command::Destabilize { system, given_frame_only } => destabilize(system, *given_frame_only, v),
        Command::LctBound { poly } => lct_bound(poly, v),
        Command::Net { inputs } => net(inputs, v),
        Command::Pencil { inputs } => pencil(inputs, v),
        Command::Halphen { inputs, index, fibers } => halphen(inputs, *index, fibers, v),
        Command::Sum { inputs } => sum(inputs, v),
        Command::Selftest => selftest(cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => {
                    let doc = json!({
                        "schema": SCHEMA,
                        "command": command_name(&cli.command),
                        "seed": cli.seed,
                        "result": out.result,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
                }
                Format::Text => print!("{}", out.text),
            }
            ExitCode::from(out.outcome.code())
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
