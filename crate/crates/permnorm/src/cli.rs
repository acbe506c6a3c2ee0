//! Command-line front end: classification and normaliser commands over
//! group files, plus the fixture generator and the brute-force oracle.
//!
//! Reports are JSON with a fixed key order; group orders are decimal
//! strings so no value is ever truncated to 64 bits. Exit codes: 0 on
//! success, 1 on parse or validation errors, 2 on resource limits.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fixtures;
use crate::group::Group;
use crate::groupfile;
use crate::oracle;
use crate::pipeline::{self, ClassifyResult, PipelineConfig};
use crate::structure;
use crate::{ample, DEFAULT_COSET_LIMIT, DEFAULT_ENUM_LIMIT, DEFAULT_NODE_LIMIT};

#[derive(Parser)]
#[command(name = "permnorm", version, about = "Permutation group normalisers and primitivity")]
pub struct Cli {
    /// Cap on explicit element enumerations.
    #[arg(long, global = true, env = "PERMNORM_ENUM_LIMIT", default_value_t = DEFAULT_ENUM_LIMIT)]
    pub enum_limit: usize,
    /// Cap on coset sweeps.
    #[arg(long, global = true, env = "PERMNORM_COSET_LIMIT", default_value_t = DEFAULT_COSET_LIMIT)]
    pub coset_limit: usize,
    /// Cap on backtrack search nodes.
    #[arg(long, global = true, env = "PERMNORM_BACKTRACK_LIMIT", default_value_t = DEFAULT_NODE_LIMIT)]
    pub backtrack_limit: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Decide whether the normaliser in Sym(n) is primitive.
    Classify { group: PathBuf },
    /// Compute the normaliser in Sym(n), or in the group given by --in.
    Normalizer {
        group: PathBuf,
        #[arg(long = "in", value_name = "K.grp")]
        ambient: Option<PathBuf>,
    },
    /// Compute the socle.
    Socle { group: PathBuf },
    /// Detect the alternating-on-subsets product structure.
    Ample { group: PathBuf },
    /// Brute-force reference computations.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Emit a fixture group file.
    Gen { name: String },
}

#[derive(Subcommand)]
pub enum OracleCommand {
    /// Normaliser by exhaustive enumeration of the ambient group.
    Normalizer {
        group: PathBuf,
        #[arg(long = "in", value_name = "K.grp")]
        ambient: PathBuf,
    },
}

impl Cli {
    fn config(&self) -> PipelineConfig {
        PipelineConfig {
            enum_limit: self.enum_limit,
            coset_limit: self.coset_limit,
            node_limit: self.backtrack_limit,
        }
    }
}

fn load(path: &Path) -> Result<Group> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    groupfile::parse(&text)
}

fn generator_strings(g: &Group) -> Vec<Value> {
    g.generators().iter().map(|p| Value::String(p.to_string())).collect()
}

fn partition_json(partition: &[Vec<usize>]) -> Value {
    // 1-based, matching cycle notation.
    Value::Array(
        partition
            .iter()
            .map(|cell| Value::Array(cell.iter().map(|&x| Value::from(x + 1)).collect()))
            .collect(),
    )
}

/// Classification report as ordered JSON; shared by the CLI and the C API.
pub fn classify_report(h: &Group, config: &PipelineConfig) -> Result<Value> {
    let result = pipeline::classify_and_normalise(h, config)?;
    Ok(match result {
        ClassifyResult::Primitive { class, normaliser } => json!({
            "degree": h.degree(),
            "order": h.order().to_string(),
            "verdict": "primitive",
            "class": class.as_str(),
            "normaliser_order": normaliser.order().to_string(),
            "normaliser_generators": generator_strings(&normaliser),
            "witness": Value::Null,
        }),
        ClassifyResult::NotPrimitive { reason, witness } => json!({
            "degree": h.degree(),
            "order": h.order().to_string(),
            "verdict": "not-primitive",
            "class": reason.as_str(),
            "normaliser_order": Value::Null,
            "normaliser_generators": Value::Null,
            "witness": witness.map_or(Value::Null, |w| partition_json(&w)),
        }),
    })
}

/// Normaliser report as ordered JSON; `None` ambient means Sym(degree).
pub fn normalizer_report(h: &Group, ambient: Option<&Group>, config: &PipelineConfig) -> Result<Value> {
    let sym;
    let k = match ambient {
        Some(k) => k,
        None => {
            sym = Group::symmetric(h.degree());
            &sym
        }
    };
    let (norm, path) = pipeline::normaliser_in(h, k, config)?;
    Ok(json!({
        "degree": h.degree(),
        "order": h.order().to_string(),
        "ambient_order": k.order().to_string(),
        "path": path.as_str(),
        "normaliser_order": norm.order().to_string(),
        "normaliser_generators": generator_strings(&norm),
    }))
}

fn socle_report(h: &Group, config: &PipelineConfig) -> Result<Value> {
    let socle = structure::socle(h, config.enum_limit)?;
    Ok(json!({
        "degree": h.degree(),
        "order": h.order().to_string(),
        "socle_order": socle.order().to_string(),
        "socle_generators": generator_strings(&socle),
    }))
}

fn ample_report(h: &Group, config: &PipelineConfig) -> Result<Value> {
    let cert = ample::detect_ample(h, config.enum_limit, config.node_limit)?;
    Ok(match cert {
        Some(cert) => json!({
            "degree": h.degree(),
            "order": h.order().to_string(),
            "ample": true,
            "m": cert.m,
            "k": cert.k,
            "l": cert.l,
        }),
        None => json!({
            "degree": h.degree(),
            "order": h.order().to_string(),
            "ample": false,
            "m": Value::Null,
            "k": Value::Null,
            "l": Value::Null,
        }),
    })
}

fn oracle_normalizer_report(h: &Group, k: &Group, config: &PipelineConfig) -> Result<Value> {
    let norm = oracle::brute_normaliser(h, k, config.enum_limit)?;
    Ok(json!({
        "degree": h.degree(),
        "order": h.order().to_string(),
        "ambient_order": k.order().to_string(),
        "normaliser_order": norm.order().to_string(),
        "normaliser_generators": generator_strings(&norm),
    }))
}

/// Run one parsed invocation, writing the report to `out`.
pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<()> {
    let config = cli.config();
    let emit = |out: &mut W, value: Value| -> Result<()> {
        let text = serde_json::to_string_pretty(&value)
            .map_err(|e| Error::Invalid(format!("report serialization failed: {e}")))?;
        writeln!(out, "{text}").map_err(|e| Error::Invalid(format!("write failed: {e}")))
    };
    match &cli.command {
        Command::Classify { group } => emit(out, classify_report(&load(group)?, &config)?),
        Command::Normalizer { group, ambient } => {
            let h = load(group)?;
            let k = ambient.as_deref().map(load).transpose()?;
            emit(out, normalizer_report(&h, k.as_ref(), &config)?)
        }
        Command::Socle { group } => emit(out, socle_report(&load(group)?, &config)?),
        Command::Ample { group } => emit(out, ample_report(&load(group)?, &config)?),
        Command::Oracle { command } => match command {
            OracleCommand::Normalizer { group, ambient } => {
                let report = oracle_normalizer_report(&load(group)?, &load(ambient)?, &config)?;
                emit(out, report)
            }
        },
        Command::Gen { name } => {
            let g = fixtures::fixture(name)?;
            write!(out, "{}", groupfile::format(&g))
                .map_err(|e| Error::Invalid(format!("write failed: {e}")))
        }
    }
}

/// Full entry point: parse argv, run, map errors to exit codes.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes, not usage errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut stdout = std::io::stdout();
    match run(&cli, &mut stdout) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
