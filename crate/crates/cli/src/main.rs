//   Copyright 2026 The dca Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.

//! `dca`: check class membership, apply transforms, and reproduce the
//! example corpus from the command line.
//!
//! Exit status: 0 when every verdict is true or the transform succeeded,
//! 1 when some verdict is false, 2 on input or usage errors.

mod corpus;
mod instance;
mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use dca_core::classify::{
    check_argmin_characterization, check_fn_integrally_convex, check_fn_lnat, check_fn_midpoint, check_fn_separable,
    check_fn_submodular, check_parallelogram, check_set_integrally_convex, check_set_midpoint, classify_chain,
    classify_quadratic, CheckReport, MidpointMode, SetMidpointMode,
};
use dca_core::generators;
use dca_core::transforms::{
    add_functions, conjugate, convolve, extend_with_penalty, minimize_via_projection, minkowski_sum, penalty_distance,
    project_fn, project_set, segment_sum_certificate, PenaltyKind, SegmentBox,
};
use dca_core::value::parse_rational;
use dca_core::{DiscreteFunction, IntegerBox, LatticePoint, LatticeSet, Rational, RationalPoint};

use instance::{parse_instance, Instance};

const DEFAULT_MAX_DIM: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "dca", version, about = "Exact discrete convex analysis on the integer lattice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide membership in a convexity class.
    Check(CheckArgs),
    /// Apply an operation and write the resulting instance.
    Transform(TransformArgs),
    /// Work with the embedded example corpus.
    Examples(ExamplesArgs),
}

#[derive(Args, Debug)]
struct Output {
    /// Write the JSON result to this path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckName {
    IntegrallyConvexSet,
    IntegrallyConvexFn,
    DmcSet,
    LnatSet,
    MidpointFn,
    SubmodularFn,
    LnatFn,
    SeparableFn,
    Parallelogram,
    ArgminIc,
    Quadratic,
    Chain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    All,
    Global,
    Local,
}

impl From<ModeArg> for MidpointMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::All => MidpointMode::All,
            ModeArg::Global => MidpointMode::Global,
            ModeArg::Local => MidpointMode::Local,
        }
    }
}

#[derive(Args, Debug)]
struct CheckArgs {
    name: CheckName,
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Pair range for midpoint-fn and parallelogram.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Number of random probes for argmin-ic.
    #[arg(long, default_value_t = 32)]
    probes: usize,
    /// Seed for random probes.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Explicit probe for argmin-ic, e.g. `0,0,1/2`; repeatable.
    #[arg(long = "probe", allow_hyphen_values = true)]
    probe: Vec<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TransformName {
    ProjectSet,
    ProjectFn,
    Minkowski,
    Convolve,
    Conjugate,
    Penalty,
    Extend,
    Add,
    Minimize,
    SegmentCertificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    L1,
    L2sq,
}

#[derive(Args, Debug)]
struct TransformArgs {
    name: TransformName,
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Coordinates kept by a projection (0-based), e.g. `0,2`.
    #[arg(long, value_delimiter = ',')]
    keep: Vec<usize>,
    /// Distance for penalty and extend.
    #[arg(long, value_enum, default_value = "l1")]
    kind: KindArg,
    /// Penalty weight, a positive rational.
    #[arg(long, default_value = "1")]
    scale: String,
    /// Lower corner of the output box (conjugate, penalty, extend).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lo: Vec<i64>,
    /// Upper corner of the output box.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    hi: Vec<i64>,
    /// Segment axis for segment-certificate (0-based).
    #[arg(long)]
    axis: Option<usize>,
    /// Segment range for segment-certificate, e.g. `0,2`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    segment: Vec<i64>,
    /// Target point for segment-certificate, e.g. `1,1/2,1/2`.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExamplesName {
    /// Run every example pipeline against its stated outcome.
    Reproduce,
    /// List the embedded instance files.
    List,
    /// Write the embedded instance files into a directory.
    Export,
}

#[derive(Args, Debug)]
struct ExamplesArgs {
    name: ExamplesName,
    /// Target directory for export.
    dir: Option<PathBuf>,
    /// Run a single example, e.g. `ex43`.
    #[arg(long)]
    only: Option<String>,
    /// Alter the first stated fact of an example; the run must flag it.
    #[arg(long)]
    perturb: Option<String>,
    #[command(flatten)]
    output: Output,
}

/// Input or usage failure; always exit status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = Result<T, InputError>;

fn max_dim() -> CliResult<usize> {
    match std::env::var("DCA_MAX_DIM") {
        Err(_) => Ok(DEFAULT_MAX_DIM),
        Ok(v) => v.trim().parse().map_err(|_| InputError(format!("DCA_MAX_DIM: not a number: {v:?}"))),
    }
}

fn read_instance(path: &Path, max_dim: usize) -> CliResult<Instance> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    parse_instance(&text, max_dim).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_all(files: &[PathBuf]) -> CliResult<Vec<Instance>> {
    let max = max_dim()?;
    files.iter().map(|p| read_instance(p, max)).collect()
}

fn arity(files: &[PathBuf], n: usize, what: &str) -> CliResult<()> {
    if files.len() == n {
        Ok(())
    } else {
        Err(InputError(format!("{what} takes {n} file(s), got {}", files.len())))
    }
}

fn as_set(i: &Instance, path: &Path) -> CliResult<LatticeSet> {
    match i {
        Instance::Set(s) => Ok(s.clone()),
        other => Err(InputError(format!("{}: expected a set, found a {}", path.display(), other.kind()))),
    }
}

fn as_fn(i: &Instance, path: &Path) -> CliResult<DiscreteFunction> {
    match i {
        Instance::Function(f) => Ok(f.clone()),
        other => Err(InputError(format!("{}: expected a function, found a {}", path.display(), other.kind()))),
    }
}

fn parse_point(s: &str) -> CliResult<Vec<Rational>> {
    s.split(',').map(|c| parse_rational(c).map_err(InputError::from)).collect()
}

fn command_echo() -> Vec<String> {
    std::env::args().skip(1).collect()
}

/// Prints text or JSON, and writes JSON to `--out` when given.
fn emit(output: &Output, value: &Value, text: &str) -> CliResult<()> {
    let json = report::to_pretty(value);
    if let Some(path) = &output.out {
        fs::write(path, &json).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    }
    if output.json {
        print!("{json}");
    } else {
        println!("{text}");
    }
    Ok(())
}

fn run_check(args: &CheckArgs) -> CliResult<ExitCode> {
    arity(&args.files, 1, "check")?;
    let path = &args.files[0];
    let inst = read_all(&args.files)?.remove(0);
    let reports: Vec<CheckReport> = match args.name {
        CheckName::IntegrallyConvexSet => vec![check_set_integrally_convex(&as_set(&inst, path)?)?],
        CheckName::DmcSet => vec![check_set_midpoint(&as_set(&inst, path)?, SetMidpointMode::Dmc)?],
        CheckName::LnatSet => vec![check_set_midpoint(&as_set(&inst, path)?, SetMidpointMode::Lnat)?],
        CheckName::IntegrallyConvexFn => vec![check_fn_integrally_convex(&as_fn(&inst, path)?)?],
        CheckName::MidpointFn => {
            let mode = args.mode.ok_or_else(|| InputError("midpoint-fn needs --mode all|global|local".into()))?;
            vec![check_fn_midpoint(&as_fn(&inst, path)?, mode.into())?]
        }
        CheckName::SubmodularFn => vec![check_fn_submodular(&as_fn(&inst, path)?)?],
        CheckName::LnatFn => vec![check_fn_lnat(&as_fn(&inst, path)?)?],
        CheckName::SeparableFn => vec![check_fn_separable(&as_fn(&inst, path)?)?],
        CheckName::Parallelogram => {
            let mode = args.mode.unwrap_or(ModeArg::Global);
            vec![check_parallelogram(&as_fn(&inst, path)?, mode.into())?]
        }
        CheckName::ArgminIc => {
            let f = as_fn(&inst, path)?;
            let mut probes = args.probe.iter().map(|p| parse_point(p)).collect::<CliResult<Vec<_>>>()?;
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            probes.extend((0..args.probes).map(|_| generators::probe(&mut rng, f.dim())));
            vec![check_argmin_characterization(&f, &probes)?]
        }
        CheckName::Chain => classify_chain(&as_fn(&inst, path)?)?.reports,
        CheckName::Quadratic => {
            let Instance::Quadratic { matrix, y_block } = &inst else {
                return Err(InputError(format!("{}: expected a quadratic, found a {}", path.display(), inst.kind())));
            };
            let v = classify_quadratic(matrix, y_block)?;
            let value = report::report_file(
                &command_echo(),
                Map::from_iter([(
                    "quadratic".to_string(),
                    json!({
                        "integrally_convex_sufficient_condition": v.ic_sufficient,
                        "lnat_in_y": v.lnat_in_y,
                        "mnat_in_y": v.mnat_in_y,
                    }),
                )]),
            );
            emit(&args.output, &value, &v.to_string())?;
            // the sufficient condition alone is not a verdict
            return Ok(exit_for(v.lnat_in_y && v.mnat_in_y || v.ic_sufficient));
        }
    };
    let all = reports.iter().all(|r| r.verdict);
    let value = report::report_file(
        &command_echo(),
        Map::from_iter([("reports".to_string(), Value::Array(reports.iter().map(report::check_report).collect()))]),
    );
    let text = reports.iter().map(report::check_text).collect::<Vec<_>>().join("\n");
    emit(&args.output, &value, &text)?;
    Ok(exit_for(all))
}

fn exit_for(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn output_box(args: &TransformArgs, dim: usize) -> CliResult<IntegerBox> {
    if args.lo.len() != dim || args.hi.len() != dim {
        return Err(InputError(format!("--lo and --hi need {dim} coordinates each")));
    }
    Ok(IntegerBox::new(LatticePoint(args.lo.clone()), LatticePoint(args.hi.clone()))?)
}

fn penalty_kind(k: KindArg) -> PenaltyKind {
    match k {
        KindArg::L1 => PenaltyKind::L1,
        KindArg::L2sq => PenaltyKind::L2Squared,
    }
}

/// Writes an instance: canonical JSON to `--out` or stdout.
fn emit_instance(output: &Output, inst: &Instance) -> CliResult<()> {
    let json = inst.to_json();
    match &output.out {
        Some(path) => fs::write(path, json).map_err(|e| InputError(format!("{}: {e}", path.display())))?,
        None => print!("{json}"),
    }
    Ok(())
}

fn run_transform(args: &TransformArgs) -> CliResult<ExitCode> {
    let inputs = read_all(&args.files)?;
    let files = &args.files;
    let result = match args.name {
        TransformName::ProjectSet => {
            arity(files, 1, "project-set")?;
            Instance::Set(project_set(&as_set(&inputs[0], &files[0])?, &args.keep)?)
        }
        TransformName::ProjectFn => {
            arity(files, 1, "project-fn")?;
            Instance::Function(project_fn(&as_fn(&inputs[0], &files[0])?, &args.keep)?)
        }
        TransformName::Minkowski => {
            arity(files, 2, "minkowski")?;
            Instance::Set(minkowski_sum(&as_set(&inputs[0], &files[0])?, &as_set(&inputs[1], &files[1])?)?)
        }
        TransformName::Convolve => {
            arity(files, 2, "convolve")?;
            Instance::Function(convolve(&as_fn(&inputs[0], &files[0])?, &as_fn(&inputs[1], &files[1])?)?)
        }
        TransformName::Add => {
            arity(files, 2, "add")?;
            Instance::Function(add_functions(&as_fn(&inputs[0], &files[0])?, &as_fn(&inputs[1], &files[1])?)?)
        }
        TransformName::Conjugate => {
            arity(files, 1, "conjugate")?;
            let f = as_fn(&inputs[0], &files[0])?;
            Instance::Function(conjugate(&f, &output_box(args, f.dim())?)?)
        }
        TransformName::Penalty => {
            arity(files, 1, "penalty")?;
            let s = as_set(&inputs[0], &files[0])?;
            let bx = output_box(args, s.dim())?;
            Instance::Function(penalty_distance(&s, penalty_kind(args.kind), &parse_rational(&args.scale)?, &bx)?)
        }
        TransformName::Extend => {
            arity(files, 1, "extend")?;
            let f = as_fn(&inputs[0], &files[0])?;
            let bx = output_box(args, f.dim())?;
            let e = extend_with_penalty(&f, penalty_kind(args.kind), &parse_rational(&args.scale)?, &bx)?;
            eprintln!("threshold: {}", dca_core::value::format_rational(&e.threshold));
            Instance::Function(e.function)
        }
        TransformName::Minimize => {
            arity(files, 1, "minimize")?;
            let (x, v) = minimize_via_projection(&as_fn(&inputs[0], &files[0])?, &args.keep)?;
            let value = report::report_file(
                &command_echo(),
                Map::from_iter([("minimizer".to_string(), report::point(&x)), ("value".to_string(), report::extended(&v))]),
            );
            emit(&args.output, &value, &format!("minimum {v} at {x}"))?;
            return Ok(ExitCode::SUCCESS);
        }
        TransformName::SegmentCertificate => {
            arity(files, 1, "segment-certificate")?;
            let s = as_set(&inputs[0], &files[0])?;
            let axis = args.axis.ok_or_else(|| InputError("segment-certificate needs --axis".into()))?;
            let [lo, hi] = args.segment[..] else {
                return Err(InputError("segment-certificate needs --segment lo,hi".into()));
            };
            let point = args.point.as_deref().ok_or_else(|| InputError("segment-certificate needs --point".into()))?;
            let x = RationalPoint(parse_point(point)?);
            let c = segment_sum_certificate(&s, &SegmentBox::new(axis, lo, hi)?, &x)?;
            let value = report::report_file(
                &command_echo(),
                Map::from_iter([("certificate".to_string(), report::combination(&c))]),
            );
            let terms: Vec<String> = c.support.iter().map(|(p, w)| format!("{w}·{p}")).collect();
            emit(&args.output, &value, &format!("{x} = {}", terms.join(" + ")))?;
            return Ok(ExitCode::SUCCESS);
        }
    };
    emit_instance(&args.output, &result)?;
    Ok(ExitCode::SUCCESS)
}

fn run_examples(args: &ExamplesArgs) -> CliResult<ExitCode> {
    match args.name {
        ExamplesName::List => {
            let mut out = std::io::stdout().lock();
            for f in corpus::FILES {
                // a closed pipe (`| head`) is not an error
                if writeln!(out, "{}.json", f.name).is_err() {
                    break;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        ExamplesName::Export => {
            let dir = args.dir.as_ref().ok_or_else(|| InputError("export needs a target directory".into()))?;
            fs::create_dir_all(dir).map_err(|e| InputError(format!("{}: {e}", dir.display())))?;
            for f in corpus::FILES {
                let path = dir.join(format!("{}.json", f.name));
                fs::write(&path, f.text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        ExamplesName::Reproduce => {
            let sections = corpus::reproduce(args.only.as_deref(), args.perturb.as_deref()).map_err(InputError)?;
            let mut text = Vec::new();
            let mut json_sections = Vec::new();
            for s in &sections {
                text.push(format!("== {}: {} ==", s.id, s.title));
                for f in &s.facts {
                    if f.matches() {
                        text.push(format!("  [ok]   {}: {}", f.name, f.computed));
                    } else {
                        text.push(format!("  [DIFF] {}: expected {}, computed {}", f.name, f.expected, f.computed));
                    }
                }
                text.push(format!("  matches stated: {}", if s.matches() { "yes" } else { "no" }));
                json_sections.push(json!({
                    "id": s.id,
                    "title": s.title,
                    "matches": s.matches(),
                    "facts": s.facts.iter().map(|f| json!({
                        "name": f.name, "expected": f.expected, "computed": f.computed, "matches": f.matches(),
                    })).collect::<Vec<_>>(),
                    "reports": s.reports.iter().map(report::check_report).collect::<Vec<_>>(),
                }));
            }
            let divergent: Vec<&str> = sections.iter().filter(|s| !s.matches()).map(|s| s.id).collect();
            if !divergent.is_empty() {
                text.push(format!("divergent: {}", divergent.join(", ")));
            }
            let value = report::report_file(&command_echo(), Map::from_iter([("examples".to_string(), Value::Array(json_sections))]));
            emit(&args.output, &value, &text.join("\n"))?;
            Ok(exit_for(divergent.is_empty()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(a) => run_check(a),
        Command::Transform(a) => run_transform(a),
        Command::Examples(a) => run_examples(a),
    };
    match result {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("dca: error: {msg}");
            ExitCode::from(2)
        }
    }
}
