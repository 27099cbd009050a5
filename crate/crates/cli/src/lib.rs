//! Command line front end: reads germ files, runs the analyses of
//! `slcgerm-core` and prints deterministic JSON.
//!
//! Exit codes: 0 on success, 1 when the input is well formed but fails a
//! mathematical check, 2 when it cannot be read or parsed.

pub mod germfile;
pub mod report;

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use slcgerm_core::stdcoeff::coeff_check;
use slcgerm_core::{
    find_failure_m, multibranch_deficit, residue::failure_search_bound, Error, NonNormalGerm, Rat,
};

use crate::germfile::{parse_germ_file, Germ, GermFile, ParseError};
use crate::report::{
    analyse_graph, build_report, component_report, glue_report, graph_residue, graph_summary,
    trichotomy_label, Classification, GraphSummary, Report, ResidueTable, RestrictionRow,
};

pub const DEFAULT_M_MAX: u64 = 24;

#[derive(Debug, Parser)]
#[command(name = "slcgerm", version, about = "Exact invariants of lc and slc surface germs")]
pub struct Cli {
    /// Print a one-line summary to stderr.
    #[arg(long, short, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Match a germ against the taxonomy of lc germs.
    Classify { file: PathBuf },
    /// Solve for the boundary coefficients and discrepancies.
    Discrepancy { file: PathBuf },
    /// Tabulate the residue maps for m = 1..m-max.
    Residue {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_M_MAX)]
        m_max: u64,
    },
    /// Check the gluing conditions of a glued germ file.
    Glue {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_M_MAX)]
        m_max: u64,
    },
    /// Smallest m where the residue onto a transversal line fails.
    FailureM {
        /// Comma-separated coefficients, e.g. 1/2,1/3.
        #[arg(long, value_delimiter = ',', required = true)]
        coeffs: Vec<String>,
    },
    /// Standard-coefficient checks for one coefficient.
    Stdcoeff {
        #[arg(long)]
        c: String,
        #[arg(long)]
        m: u64,
    },
    /// Every applicable analysis for a file, or for each *.json in a directory.
    Report {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_M_MAX)]
        m_max: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Io(String),
    Parse(ParseError),
    /// Malformed command line value.
    Syntax(String),
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) | CliError::Parse(_) | CliError::Syntax(_) => 2,
        }
    }

    pub fn body(&self) -> ErrorBody {
        match self {
            CliError::Io(msg) => ErrorBody::plain("io", msg),
            CliError::Validation(msg) => ErrorBody::plain("validation", msg),
            CliError::Syntax(msg) => ErrorBody::plain("parse", msg),
            CliError::Parse(e) => ErrorBody {
                kind: "parse",
                message: e.message.clone(),
                line: Some(e.line),
                column: Some(e.column),
            },
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ParseRat { .. } => CliError::Syntax(e.to_string()),
            e => CliError::Validation(e.to_string()),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl ErrorBody {
    fn plain(kind: &'static str, message: &str) -> Self {
        ErrorBody {
            kind,
            message: message.to_string(),
            line: None,
            column: None,
        }
    }
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    error: &'a ErrorBody,
}

/// What a command produced: the JSON document for stdout, the exit code and
/// a short human-readable summary.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: String,
    pub exit_code: i32,
    pub summary: String,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

impl Outcome {
    fn ok<T: Serialize>(value: &T, summary: String) -> Self {
        Outcome {
            json: to_json(value),
            exit_code: 0,
            summary,
        }
    }

    fn err(e: &CliError) -> Self {
        let body = e.body();
        Outcome {
            json: to_json(&ErrorDoc { error: &body }),
            exit_code: e.exit_code(),
            summary: format!("error ({}): {}", body.kind, body.message),
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn load(path: &Path) -> Result<GermFile, CliError> {
    Ok(parse_germ_file(&read_input(path)?)?)
}

fn load_germ(path: &Path) -> Result<(GermFile, Germ), CliError> {
    let file = load(path)?;
    let germ = file.validate()?;
    Ok((file, germ))
}

fn require_m_max(m_max: u64) -> Result<(), CliError> {
    if m_max == 0 {
        return Err(CliError::Validation("--m-max must be at least 1".into()));
    }
    Ok(())
}

fn parse_rat(text: &str) -> Result<Rat, CliError> {
    text.trim().parse::<Rat>().map_err(CliError::from)
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Classify { file } => classify(file),
        Command::Discrepancy { file } => discrepancy(file),
        Command::Residue { file, m_max } => residue(file, *m_max),
        Command::Glue { file, m_max } => glue(file, *m_max),
        Command::FailureM { coeffs } => failure_m(coeffs),
        Command::Stdcoeff { c, m } => stdcoeff(c, *m),
        Command::Report { path, m_max } => return report(path, *m_max),
    };
    result.unwrap_or_else(|e| Outcome::err(&e))
}

#[derive(Serialize)]
struct ClassifyOutput {
    #[serde(flatten)]
    class: Classification,
    case: &'static str,
}

fn classify(path: &Path) -> Result<Outcome, CliError> {
    let (_, germ) = load_germ(path)?;
    let out = match germ {
        Germ::Cyclic(g) => classify_graph(&g.resolution_graph()?)?,
        Germ::Graph(g) => classify_graph(&g)?,
        Germ::Glued { components, glue_ok } => {
            let nn = slcgerm_core::classify_nonnormal(&components, glue_ok)?;
            ClassifyOutput {
                case: trichotomy_label(nn.trichotomy),
                class: Classification::NonNormal(nn),
            }
        }
    };
    let summary = match &out.class {
        Classification::Germ(c) => format!("classify: {:?}, Cartier index {}", c.tag, c.cartier_index),
        Classification::NonNormal(nn) => format!("classify: {:?}", nn.trichotomy),
    };
    Ok(Outcome::ok(&out, summary))
}

fn classify_graph(g: &slcgerm_core::ResolutionGraph) -> Result<ClassifyOutput, CliError> {
    let class = slcgerm_core::classify_lc_germ(g)?;
    Ok(ClassifyOutput {
        case: class.tag.case_label(),
        class: Classification::Germ(class),
    })
}

#[derive(Serialize)]
struct ComponentsOutput<T> {
    components: Vec<T>,
}

fn discrepancy(path: &Path) -> Result<Outcome, CliError> {
    let (file, germ) = load_germ(path)?;
    let glued = matches!(file, GermFile::Glued(_));
    let graphs = match germ {
        Germ::Cyclic(g) => vec![g.resolution_graph()?],
        Germ::Graph(g) => vec![g],
        Germ::Glued { components, .. } => {
            components.iter().map(|g| g.resolution_graph()).collect::<Result<_, _>>()?
        }
    };
    let summaries: Vec<GraphSummary> = graphs.iter().map(graph_summary).collect::<Result<_, _>>()?;
    let summary = format!(
        "discrepancy: {}",
        summaries.iter().map(|s| format!("{:?}", s.log_canonical_class)).collect::<Vec<_>>().join(", ")
    );
    if let (false, [single]) = (glued, summaries.as_slice()) {
        return Ok(Outcome::ok(single, summary));
    }
    Ok(Outcome::ok(&ComponentsOutput { components: summaries }, summary))
}

#[derive(Serialize)]
struct ResidueOutput {
    gamma: Option<Rat>,
    different: Option<Rat>,
    rows: ResidueTable,
}

fn residue_of_graph(g: &slcgerm_core::ResolutionGraph, m_max: u64) -> Result<ResidueOutput, CliError> {
    let a = analyse_graph(g)?;
    let rows = graph_residue(&a, m_max)?.ok_or_else(|| {
        CliError::Validation(match (&a.class, &a.not_classified) {
            (_, Some(why)) => format!("no residue table: {why}"),
            (Some(c), None) => format!("no residue table for shape {:?}", c.tag),
            (None, None) => "no residue table".into(),
        })
    })?;
    Ok(match &a.plt_germ {
        Some(germ) => ResidueOutput {
            gamma: Some(germ.gamma()),
            different: Some(germ.different_coeff()?),
            rows,
        },
        None => ResidueOutput {
            gamma: None,
            different: Some(Rat::one()),
            rows,
        },
    })
}

fn residue(path: &Path, m_max: u64) -> Result<Outcome, CliError> {
    require_m_max(m_max)?;
    let (_, germ) = load_germ(path)?;
    let summary = format!("residue: m = 1..{m_max}");
    match germ {
        Germ::Cyclic(g) => Ok(Outcome::ok(&residue_of_graph(&g.resolution_graph()?, m_max)?, summary)),
        Germ::Graph(g) => Ok(Outcome::ok(&residue_of_graph(&g, m_max)?, summary)),
        Germ::Glued { components, .. } => {
            let outs = components
                .iter()
                .map(|g| residue_of_graph(&g.resolution_graph()?, m_max))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Outcome::ok(&ComponentsOutput { components: outs }, summary))
        }
    }
}

#[derive(Serialize)]
struct GlueOutput {
    slc: bool,
    differents: Vec<Rat>,
    classification: Option<NonNormalGerm>,
    restriction_table: Vec<RestrictionRow>,
    flags: Vec<String>,
}

fn glue(path: &Path, m_max: u64) -> Result<Outcome, CliError> {
    require_m_max(m_max)?;
    let (_, germ) = load_germ(path)?;
    let Germ::Glued { components, glue_ok } = germ else {
        return Err(CliError::Validation("glue needs a file of kind \"glued\"".into()));
    };
    let report = glue_report(&components, m_max)?;
    for g in &components {
        // validates the conductor of every component
        component_report(g, 1)?;
    }
    let mut flags = Vec::new();
    let classification = if report.slc {
        let nn = slcgerm_core::classify_nonnormal(&components, glue_ok)?;
        flags.extend(nn.flags.iter().cloned());
        Some(nn)
    } else {
        flags.push("glue-mismatch".to_string());
        None
    };
    if report.restriction_table.iter().any(|r| !r.classical) {
        flags.push("extrapolated".to_string());
    }
    let summary = format!("glue: slc = {}", report.slc);
    let out = GlueOutput {
        slc: report.slc,
        differents: report.differents,
        classification,
        restriction_table: report.restriction_table,
        flags,
    };
    Ok(Outcome::ok(&out, summary))
}

#[derive(Serialize)]
struct FailureOutput {
    coeffs: Vec<Rat>,
    m: Option<u64>,
    bound: u64,
    deficit: Option<u64>,
}

fn failure_m(coeffs: &[String]) -> Result<Outcome, CliError> {
    let coeffs = coeffs.iter().map(|c| parse_rat(c)).collect::<Result<Vec<_>, _>>()?;
    let m = find_failure_m(&coeffs)?;
    let total: Rat = coeffs.iter().sum();
    let bound = failure_search_bound(&total)?;
    let deficit = m.map(|m| multibranch_deficit(m, &coeffs)).transpose()?;
    let summary = match m {
        Some(m) => format!("failure-m: first failure at m = {m}"),
        None => format!("failure-m: no failure up to m = {bound}"),
    };
    Ok(Outcome::ok(&FailureOutput { coeffs, m, bound, deficit }, summary))
}

fn stdcoeff(c: &str, m: u64) -> Result<Outcome, CliError> {
    let check = coeff_check(&parse_rat(c)?, m)?;
    let summary = format!(
        "stdcoeff: standard = {}, hypothesis = {}, bracket = {}",
        check.standard, check.hypothesis_ok, check.bracket_ok
    );
    Ok(Outcome::ok(&check, summary))
}

fn report_file(path: &Path, m_max: u64) -> Result<Report, CliError> {
    let file = load(path)?;
    Ok(build_report(&file, m_max)?)
}

#[derive(Serialize)]
struct BatchEntry {
    file: String,
    exit_code: i32,
    report: Option<Report>,
    error: Option<ErrorBody>,
}

/// `*.json` files of a directory in name order.
pub fn germ_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| CliError::Io(e.to_string()))?.path();
        if path.is_file() && path.extension().is_some_and(|x| x == "json") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn report(path: &Path, m_max: u64) -> Outcome {
    if let Err(e) = require_m_max(m_max) {
        return Outcome::err(&e);
    }
    if !path.is_dir() {
        return match report_file(path, m_max) {
            Ok(r) => {
                let summary = format!("report: {} ({} flags)", r.case, r.flags.len());
                Outcome::ok(&r, summary)
            }
            Err(e) => Outcome::err(&e),
        };
    }
    let files = match germ_files(path) {
        Ok(f) => f,
        Err(e) => return Outcome::err(&e),
    };
    let entries: Vec<BatchEntry> = files
        .par_iter()
        .map(|f| {
            let file = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            match report_file(f, m_max) {
                Ok(r) => BatchEntry {
                    file,
                    exit_code: 0,
                    report: Some(r),
                    error: None,
                },
                Err(e) => BatchEntry {
                    file,
                    exit_code: e.exit_code(),
                    report: None,
                    error: Some(e.body()),
                },
            }
        })
        .collect();
    let exit_code = entries.iter().map(|e| e.exit_code).max().unwrap_or(0);
    let failed = entries.iter().filter(|e| e.exit_code != 0).count();
    let summary = format!("report: {} files, {} failed", entries.len(), failed);
    Outcome {
        json: to_json(&entries),
        exit_code,
        summary,
    }
}
