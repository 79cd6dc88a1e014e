use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyharm::classify::{classify_bk, BkCase};
use polyharm::numcheck::{run_suite, EvalConfig, Report, Suite};
use polyharm::quiverrep::{
    build_cyclic_module, classify_cyclic, endomorphism_top_dimension, hc_to_quiver, invariants_of,
    iso_two_descriptions, random_consistent_fragment, second_description, CyclicCase, HCFragment, NodeType,
    Quiver, QuiverRep,
};
use polyharm::specsolve::{construct_case, solve_wd, CaseParams, GradedVector};
use polyharm::symcalc::table::{install, CoincidenceTable};
use polyharm::symcalc::{expand, flip, laplace_pow, lower_pow, mirror, pretty, raise_pow, Dir, Form};
use polyharm::Error;

#[derive(Parser)]
#[command(name = "polyharm", version, about = "Exact calculus for polyharmonic weak Maass forms")]
struct Cli {
    /// Print JSON instead of the text display.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a form realizing a case label.
    Construct(ConstructArgs),
    /// Raw output of the graded solver.
    Solve(SolveArgs),
    /// Apply an operator to a form read from JSON.
    Apply(ApplyArgs),
    /// Rewrite pending operators as spectral-point atoms.
    Expand(InputArg),
    /// Exact depth and case label of a form.
    Classify(InputArg),
    /// Cyclic quiver modules and Harish-Chandra fragments.
    #[command(subcommand)]
    Quiver(QuiverCommand),
    /// Numerical checks of the operator identities.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Eisenstein,
    Poincare,
    Incoherent,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long = "case")]
    label: String,
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    #[arg(long)]
    d: u32,
    /// Checked against the family the case is built from.
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Poincaré exponent index, negative.
    #[arg(long, allow_hyphen_values = true)]
    index: Option<i64>,
    /// Discriminant parameter for the incoherent family.
    #[arg(long)]
    disc: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    L,
    R,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    #[arg(long)]
    m: u32,
    #[arg(long, value_enum, ignore_case = true)]
    branch: BranchArg,
    #[arg(long)]
    d: u32,
    /// Rescale so that the top layer is hit exactly by the iterated Laplacian.
    #[arg(long)]
    normalized: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    Raising,
    Lowering,
    Laplace,
    Flip,
    Mirror,
}

#[derive(Args)]
struct ApplyArgs {
    #[arg(long, value_enum)]
    op: OpArg,
    #[arg(long, default_value_t = 1)]
    power: u32,
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args)]
struct InputArg {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum QuiverCommand {
    /// The cyclic module of a given type, case and depth.
    Build {
        /// gelfand or cyclic
        #[arg(long)]
        quiver: Quiver,
        /// star, plus or minus; the symbols *, + and - also work
        #[arg(long = "type", allow_hyphen_values = true)]
        node: NodeType,
        /// a, b, c or d
        #[arg(long = "case")]
        case: CyclicCase,
        #[arg(long)]
        depth: u32,
    },
    /// Invariants and cyclic classification of a representation.
    Classify(InputArg),
    /// Quiver representation attached to a Harish-Chandra fragment.
    FromHc {
        #[arg(long = "in")]
        input: PathBuf,
        /// Use the description on the weight spaces −l−1, l−1, l+1.
        #[arg(long)]
        second: bool,
        /// Build and check the isomorphism between the two descriptions.
        #[arg(long)]
        iso: bool,
    },
    /// A random Casimir-consistent fragment.
    RandomHc {
        #[arg(long)]
        level: u32,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "eisenstein")]
    suite: String,
    #[arg(long, default_value_t = 400)]
    n: u32,
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
    #[arg(long, default_value_t = 1e-2)]
    h: f64,
    #[arg(long)]
    no_richardson: bool,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(String, bool), Failure>;

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}

fn emit_form(f: &Form, json: bool) -> Outcome {
    Ok((if json { f.to_json() } else { pretty(f) }, true))
}

fn family_of(label: BkCase) -> FamilyArg {
    match label {
        BkCase::Ia | BkCase::Id | BkCase::IIIa | BkCase::IIIb => FamilyArg::Eisenstein,
        BkCase::IIb => FamilyArg::Incoherent,
        _ => FamilyArg::Poincare,
    }
}

fn construct(args: &ConstructArgs, json: bool) -> Outcome {
    let label: BkCase = args.label.parse()?;
    if let Some(requested) = args.family {
        let actual = family_of(label);
        if requested as u8 != actual as u8 {
            let name = |f: FamilyArg| f.to_possible_value().expect("named").get_name().to_string();
            return Err(Error::Domain(format!("case {label} is built from the {} family", name(actual))).into());
        }
    }
    let defaults = CaseParams::default();
    let params = CaseParams {
        poincare_index: args.index.unwrap_or(defaults.poincare_index),
        disc: args.disc.unwrap_or(defaults.disc),
    };
    emit_form(&construct_case(label, args.k, args.d, &params)?, json)
}

fn show_vector(w: &GradedVector) -> String {
    let row = |v: &[polyharm::scalar::Q]| v.iter().map(polyharm::scalar::fmt_q).collect::<Vec<_>>().join(", ");
    let mut out = format!("k = {}, m = {}, branch {:?}, d = {}\n", w.k, w.m, w.branch, w.d);
    for (t, layer) in w.layers.iter().enumerate() {
        out.push_str(&format!("T^{t}: [{}]\n", row(layer)));
    }
    out.push_str(&format!("multipliers: [{}]", row(&w.multipliers)));
    out
}

fn solve(args: &SolveArgs, json: bool) -> Outcome {
    let branch = match args.branch {
        BranchArg::L => Dir::L,
        BranchArg::R => Dir::R,
    };
    let mut w = solve_wd(args.k, args.m, branch, args.d)?;
    if args.normalized {
        w = w.normalized();
    }
    Ok((if json { to_json(&w) } else { show_vector(&w) }, true))
}

fn apply(args: &ApplyArgs, json: bool) -> Outcome {
    let f = Form::from_json(&read(&args.input)?)?;
    let out = match args.op {
        OpArg::Raising => raise_pow(&f, args.power),
        OpArg::Lowering => lower_pow(&f, args.power),
        OpArg::Laplace => laplace_pow(&f, args.power),
        OpArg::Flip => (0..args.power).try_fold(f, |g, _| flip(&g))?,
        OpArg::Mirror => (0..args.power).try_fold(f, |g, _| mirror(&g))?,
    };
    emit_form(&out, json)
}

fn show_rep(rep: &QuiverRep) -> String {
    let mut out = format!("{:?} quiver, dimension vector {:?}", rep.quiver(), rep.dims());
    let names: &[&str] = match rep.quiver() {
        Quiver::Gelfand => &["A-", "B-", "A+", "B+"],
        Quiver::Cyclic => &["A+", "A-"],
    };
    for (name, (_, _, m)) in names.iter().zip(rep.arrows()) {
        out.push_str(&format!("\n{name} =\n{m}"));
    }
    out
}

fn quiver(cmd: &QuiverCommand, json: bool, seed: u64) -> Outcome {
    match cmd {
        QuiverCommand::Build { quiver, node, case, depth } => {
            let rep = build_cyclic_module(*quiver, *node, *case, *depth)?;
            Ok((if json { to_json(&rep) } else { show_rep(&rep) }, true))
        }
        QuiverCommand::Classify(input) => {
            let rep: QuiverRep =
                serde_json::from_str(&read(&input.input)?).map_err(|e| Error::Parse(e.to_string()))?;
            let invariants = invariants_of(&rep)?;
            let class = classify_cyclic(&rep)?;
            let indecomposable = endomorphism_top_dimension(&rep) == 1;
            let text = if json {
                to_json(&serde_json::json!({
                    "invariants": invariants,
                    "class": class,
                    "indecomposable": indecomposable,
                }))
            } else {
                format!(
                    "type {} case {:?} depth {}\ndimensions {:?}\nnilpotency degrees {:?}\nindecomposable {}",
                    class.node, class.case, class.d, invariants.dims, invariants.degrees, indecomposable
                )
            };
            Ok((text, true))
        }
        QuiverCommand::FromHc { input, second, iso } => {
            let frag: HCFragment =
                serde_json::from_str(&read(input)?).map_err(|e| Error::Parse(e.to_string()))?;
            if *iso {
                let w = iso_two_descriptions(&frag)?;
                let text = if json {
                    to_json(&w)
                } else {
                    format!("T =\n{}\nX* =\n{}\np coefficients: [{}]", w.t, w.x_star, w.poly.join(", "))
                };
                return Ok((text, true));
            }
            let rep = if *second { second_description(&frag)? } else { hc_to_quiver(&frag)? };
            Ok((if json { to_json(&rep) } else { show_rep(&rep) }, true))
        }
        QuiverCommand::RandomHc { level, dim } => {
            let frag = random_consistent_fragment(*level, *dim, seed);
            // The fragment itself is data; always emitted as JSON.
            Ok((to_json(&frag), true))
        }
    }
}

fn show_report(r: &Report) -> String {
    let mut out = String::new();
    for e in &r.entries {
        let p = &e.point.point;
        out.push_str(&format!(
            "{:<5} {:<40} k={:<3} tau={:+.3}{:+.3}i s={:.3}{:+.3}i residual={:.2e}\n",
            if e.pass { "ok" } else { "FAIL" },
            serde_json::to_string(&e.identity).expect("serializes"),
            e.point.k,
            p.x,
            p.y,
            p.s_re,
            p.s_im,
            e.residual
        ));
    }
    out.push_str(&format!("{} checks, worst residual {:.2e}, {}", r.entries.len(), r.worst(), if r.passed { "passed" } else { "FAILED" }));
    out
}

fn verify(args: &VerifyArgs, json: bool) -> Outcome {
    let suite: Suite = args.suite.parse()?;
    let cfg = EvalConfig { truncation: args.n, fd_step: args.h, richardson: !args.no_richardson, tolerance: args.tol };
    let report = run_suite(suite, &cfg)?;
    Ok((if json { to_json(&report) } else { show_report(&report) }, report.passed))
}

fn run(cli: &Cli) -> Outcome {
    let table = CoincidenceTable::from_env()?;
    install(table)?;
    let json = cli.json;
    match &cli.command {
        Command::Construct(a) => construct(a, json),
        Command::Solve(a) => solve(a, json),
        Command::Apply(a) => apply(a, json),
        Command::Expand(a) => emit_form(&expand(&Form::from_json(&read(&a.input)?)?), json),
        Command::Classify(a) => {
            let label = classify_bk(&Form::from_json(&read(&a.input)?)?)?;
            Ok((if json { to_json(&label) } else { label.to_string() }, true))
        }
        Command::Quiver(q) => quiver(q, json, cli.seed),
        Command::Verify(a) => verify(a, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok((text, passed)) => {
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Verification(_) => 3,
                _ => 2,
            })
        }
    }
}
