//! Command-line front end: build, analyze, check-equiv and export.
//!
//! Exit statuses: 0 success, 1 negative verdict, 2 parse or I/O failure,
//! 3 invalid group description, 4 invalid sequence, 5 expectation
//! mismatch.

use std::fs;
use std::io::Write;
use std::path::Path;

use necklace::autgroup::canonical_invariants;
use necklace::constructions::{build_group, parse_group_text, GroupSpec, RigidAllocator};
use necklace::equivalence::{sher_equivalent, Equivalence};
use necklace::model::{canonical_serialize, deserialize, validate, DefiningSequence};
use serde_json::json;
use thiserror::Error;

pub mod args;
pub mod dot;
pub mod report;

pub use args::{Cli, Command, ExportFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID_SPEC: i32 = 3;
pub const EXIT_INVALID_SEQUENCE: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid group description: {0}")]
    InvalidSpec(String),
    #[error("invalid sequence {path}:\n{report}")]
    InvalidSequence { path: String, report: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io { .. } => EXIT_PARSE,
            CliError::InvalidSpec(_) => EXIT_INVALID_SPEC,
            CliError::InvalidSequence { .. } => EXIT_INVALID_SEQUENCE,
        }
    }
}

fn parse_spec_text(text: &str) -> Result<(u32, Vec<u64>), CliError> {
    parse_group_text(text).map_err(|e| {
        CliError::Parse(format!(
            "cannot parse group `{text}`: {e}\n  {text}\n  {}^",
            " ".repeat(text[..e.position.min(text.len())].chars().count())
        ))
    })
}

fn load(path: &Path) -> Result<DefiningSequence, CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let seq =
        deserialize(&bytes).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let report = validate(&seq);
    if !report.is_ok() {
        return Err(CliError::InvalidSequence {
            path: path.display().to_string(),
            report: report.to_string(),
        });
    }
    Ok(seq)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Runs one command, writing results to `out` and diagnostics to `err`,
/// and returns the exit status.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Build { spec, output } => {
            let (rank, torsion) = parse_spec_text(&spec)?;
            let spec =
                GroupSpec::new(rank, torsion).map_err(|e| CliError::InvalidSpec(e.to_string()))?;
            let mut alloc = match cli.seed {
                Some(seed) => RigidAllocator::seeded(seed),
                None => RigidAllocator::fresh(),
            };
            let seq = build_group(&spec, &mut alloc);
            let bytes = canonical_serialize(&seq);
            let log: &mut dyn Write = match &output {
                Some(path) => {
                    write_file(path, &bytes)?;
                    &mut *out
                }
                None => {
                    let _ = out.write_all(&bytes);
                    &mut *err
                }
            };
            let _ = writeln!(log, "built {spec} with allocator seed {}", alloc.seed());
            for c in alloc.log() {
                let _ = writeln!(log, "  {} = {}", c.display_name(), c.id());
            }
            Ok(EXIT_OK)
        }
        Command::Analyze { path, expect, json } => {
            let seq = load(&path)?;
            let mut report = report::analyze(&seq);
            let mut code = EXIT_OK;
            if let Some(text) = expect {
                let (rank, torsion) = parse_spec_text(&text)?;
                let want = canonical_invariants(rank, &torsion)
                    .map_err(|e| CliError::InvalidSpec(e.to_string()))?;
                let matches = report
                    .homogeneity
                    .value()
                    .and_then(|h| h.group.as_abelian())
                    .is_some_and(|g| *g == want);
                if !matches {
                    code = EXIT_MISMATCH;
                }
                report.expectation = Some(report::Expectation {
                    expected: want.to_string(),
                    matches,
                });
            }
            if json {
                let text = serde_json::to_string_pretty(&report).expect("reports always encode");
                let _ = writeln!(out, "{text}");
            } else {
                let _ = write!(out, "{}", report::render_text(&report));
            }
            Ok(code)
        }
        Command::CheckEquiv { a, b } => {
            let (sa, sb) = (load(&a)?, load(&b)?);
            let verdict = sher_equivalent(&sa, &sb).map_err(|e| CliError::InvalidSequence {
                path: format!("{} / {}", a.display(), b.display()),
                report: e.to_string(),
            })?;
            let (doc, code) = match verdict {
                Equivalence::Equivalent(cert) => {
                    (json!({ "equivalent": true, "certificate": cert }), EXIT_OK)
                }
                Equivalence::Inequivalent(reason) => (
                    json!({ "equivalent": false, "reason": reason }),
                    EXIT_NEGATIVE,
                ),
            };
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("json encodes")
            );
            Ok(code)
        }
        Command::Export {
            path,
            format,
            depth,
        } => {
            let seq = load(&path)?;
            match format {
                ExportFormat::Json => {
                    let _ = out.write_all(&canonical_serialize(&seq));
                }
                ExportFormat::Dot => {
                    let _ = out.write_all(dot::render_dot(&seq, depth).as_bytes());
                }
            }
            Ok(EXIT_OK)
        }
    }
}
