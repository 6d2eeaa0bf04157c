//! Command dispatch for the `rinehart` binary.
//!
//! Every command produces a [`VerdictReport`]. Exit code 0 means the run
//! completed, whatever the verdicts; 2 is an input error and 3 an internal
//! one.

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::enveloping::{EnvelopingError, NCElement, RewriteSystem, TruncatedEnvelope, DEFAULT_DEGREE};
use crate::expr::ExprError;
use crate::finalg::{check_algebra_axioms, check_character, check_derivation};
use crate::lierinehart::{character_criterion, check_lie_algebra, check_lie_rinehart, LieError, LieRinehartData};
use crate::obstruction::{
    build_and_verify_right_action, control_pipeline, solve_partial, theorem1_pipeline, verify_partial,
    ObstructionError, PipelineError,
};
use crate::presets;
use crate::problem::{self, Problem, ProblemError};
use crate::report::{Verdict, VerdictReport};
use crate::scalars::FieldSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<ProblemError> for CliError {
    fn from(e: ProblemError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<EnvelopingError> for CliError {
    fn from(e: EnvelopingError) -> Self {
        match e {
            EnvelopingError::DegreeOverflow { .. } | EnvelopingError::Unvalidated => CliError::Input(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<ObstructionError> for CliError {
    fn from(e: ObstructionError) -> Self {
        match e {
            ObstructionError::Enveloping(inner) => inner.into(),
            ObstructionError::Lie(LieError::Refused { .. }) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "rinehart", version, about = "Exact checks for Lie-Rinehart algebras and their enveloping algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every axiom check on a problem file.
    Check {
        /// Problem file, or a preset name.
        problem: String,
    },
    /// Truncated basis, dimensions by degree and confluence.
    Envelope {
        problem: String,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: usize,
        /// List the basis words.
        #[arg(long)]
        basis: bool,
    },
    /// Solve for a right-module extension of multiplication on R.
    Partial {
        problem: String,
        /// Degree up to which a found extension is checked against the relations.
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: usize,
    },
    /// Decide whether TARGET = LEFT * z for z of degree at most DEGREE.
    Divide {
        problem: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: usize,
    },
    /// End-to-end obstruction run on the built-in example.
    Theorem1 {
        #[arg(long, default_value = "Q")]
        field: FieldSpec,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: usize,
        /// Run the R = K control instead, where every step should succeed.
        #[arg(long)]
        control: bool,
    },
    /// Print a built-in problem file.
    Preset {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(presets::NAMES))]
        name: String,
    },
}

/// What a command printed and the exit code it ended with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn render(report: &VerdictReport, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Structured => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
    }
}

pub fn run(cli: &Cli) -> RunOutput {
    let result = match &cli.command {
        Command::Preset { name } => {
            return RunOutput {
                code: EXIT_OK,
                stdout: presets::named(name).unwrap_or_default().to_string(),
                stderr: String::new(),
            }
        }
        Command::Check { problem } => problem::load(problem).map_err(CliError::from).map(|p| check_report(&p)),
        Command::Envelope { problem, degree, basis } => {
            problem::load(problem).map_err(CliError::from).and_then(|p| envelope_report(&p, *degree, *basis))
        }
        Command::Partial { problem, degree } => {
            problem::load(problem).map_err(CliError::from).and_then(|p| partial_report(&p, *degree))
        }
        Command::Divide {
            problem,
            left,
            target,
            degree,
        } => problem::load(problem)
            .map_err(CliError::from)
            .and_then(|p| divide_report(&p, left, target, *degree)),
        Command::Theorem1 { field, degree, control } => theorem1_report(*field, *degree, *control),
    };
    match result {
        Ok(report) => RunOutput {
            code: EXIT_OK,
            stdout: render(&report, cli.format),
            stderr: String::new(),
        },
        Err(e) => RunOutput {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                RunOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                RunOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

/// Every component check, then the Lie-Rinehart conjunction and, for a
/// character action, the character criterion.
pub fn check_report(p: &Problem) -> VerdictReport {
    let data = &p.data;
    let mut sections = vec![check_algebra_axioms(data.r()), check_lie_algebra(data.l())];
    let anchors: Vec<VerdictReport> = (0..data.l().dim())
        .map(|a| {
            let mut rep = check_derivation(data.r(), data.anchor().get(a).matrix());
            rep.check = format!("anchor of {} is a derivation", data.l().label(a));
            rep
        })
        .collect();
    sections.push(VerdictReport::all_of("anchor derivations", anchors));
    if let Some(chi) = p.character() {
        sections.push(check_character(data.r(), chi.values()));
        sections.push(character_criterion(data.r(), data.l(), data.anchor(), chi));
    }
    sections.push(check_lie_rinehart(data));
    VerdictReport::all_of("problem checks", sections)
}

/// The failing Lie-Rinehart report when the data does not validate.
fn validated(p: &Problem) -> Result<LieRinehartData, VerdictReport> {
    p.data.clone().validate().map_err(|_| {
        let mut rep = check_lie_rinehart(&p.data);
        rep.check = format!("{} (required before building the envelope)", rep.check);
        rep
    })
}

pub fn envelope_report(p: &Problem, degree: usize, list_basis: bool) -> Result<VerdictReport, CliError> {
    let data = match validated(p) {
        Ok(d) => d,
        Err(rep) => return Ok(rep),
    };
    let system = RewriteSystem::new(&data)?;
    let env = TruncatedEnvelope::new(system, degree);
    let mut rep = VerdictReport::all_of(
        "truncated enveloping algebra",
        vec![env.confluence().clone(), env.left_action_report().clone()],
    )
    .with_degree(degree);
    let sys = env.system();
    let rules: Vec<String> = sys
        .rules()
        .map(|r| format!("{} -> {}", sys.format_word(&[r.lhs.0, r.lhs.1]), sys.format(&r.rhs)))
        .collect();
    rep.push_step("rewrite rules", Verdict::Pass, rules.join("; "));
    let dims: Vec<String> = env.dims_by_degree().iter().map(usize::to_string).collect();
    rep.push_step("dimension by L-degree", Verdict::Pass, dims.join(", "));
    rep.push_step("total dimension", Verdict::Pass, env.dim().to_string());
    if list_basis {
        for w in env.basis() {
            rep.push_step("basis element", Verdict::Pass, sys.format_word(w));
        }
    }
    Ok(rep)
}

pub fn partial_report(p: &Problem, degree: usize) -> Result<VerdictReport, CliError> {
    let data = match validated(p) {
        Ok(d) => d,
        Err(rep) => return Ok(rep),
    };
    let solved = solve_partial(&data)?;
    let mut rep = solved.report(&data);
    if let Some(map) = solved.partial_map(&data) {
        rep.sections.push(verify_partial(&data, &map)?);
        let env = TruncatedEnvelope::new(RewriteSystem::new(&data)?, degree);
        rep.sections.push(build_and_verify_right_action(&data, &map, &env)?);
    }
    Ok(rep)
}

pub fn divide_report(p: &Problem, left: &str, target: &str, degree: usize) -> Result<VerdictReport, CliError> {
    let data = match validated(p) {
        Ok(d) => d,
        Err(rep) => return Ok(rep),
    };
    let system = RewriteSystem::new(&data)?;
    let parse = |what: &str, text: &str| -> Result<NCElement, CliError> {
        system
            .parse_element(text)
            .map_err(|e| CliError::Input(format!("--{what}: {e}")))
    };
    let g = parse("left", left)?;
    let t = parse("target", target)?;
    let env = TruncatedEnvelope::new(system.clone(), degree);
    if !env.confluence().passed() {
        return Ok(env.confluence().clone());
    }
    let div = env.left_divide(&g, &t)?;
    Ok(div.report(&env, &g, &t))
}

pub fn theorem1_report(field: FieldSpec, degree: usize, control: bool) -> Result<VerdictReport, CliError> {
    let run = if control {
        control_pipeline(field, degree)
    } else {
        theorem1_pipeline(field, degree)
    };
    match run {
        Ok(r) => Ok(r.report),
        Err(PipelineError::UnexpectedVerdict {
            step,
            expected,
            found,
            report,
        }) => {
            let mut rep = VerdictReport::new(format!("obstruction run over {field}"), Verdict::Fail).with_degree(degree);
            rep.push_step(step, found, format!("expected {expected}"));
            rep.sections.push(*report);
            Ok(rep)
        }
        Err(PipelineError::Obstruction(e)) => Err(e.into()),
    }
}
