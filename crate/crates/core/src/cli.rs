//! Command-line front end.
//!
//! Exit codes: `0` success, `2` a principled negative answer (no path can
//! exist, or a word failed verification), `1` any error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::oracle::{self, EndpointOptions, OracleConfig};
use crate::paths::{hamiltonian_path, PathOutcome};
use crate::record::PathRecord;
use crate::torus::{TorusSpec, Vertex};
use crate::walk::{verify_ham_path, PathCertificate};
use crate::word::Word;

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_REFUSED: u8 = 2;

/// Largest torus rendered as DOT.
pub const DOT_CAP: usize = 512;

#[derive(Debug, Parser)]
#[command(
    name = "torus-ham",
    version,
    about = "Hamiltonian paths in cartesian powers of directed cycles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Word,
    Vertices,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a certified hamiltonian path in (Z_m)^k.
    Construct {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: usize,
        /// Start vertex, e.g. "0,1,2". Defaults to 0.
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Emit the JSON word as flat generator indices.
        #[arg(long)]
        flat: bool,
    },
    /// Verify a word (stdin or --file) as a hamiltonian path.
    ///
    /// Accepts a JSON record from `construct`, a JSON array of generator
    /// indices, or the nested text form. Flags override record fields.
    Verify {
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        #[arg(long)]
        file: Option<std::path::PathBuf>,
    },
    /// Exhaustively find every end of a hamiltonian path from 0.
    Endpoints {
        /// Cycle lengths, e.g. "2,3,4".
        #[arg(long)]
        moduli: String,
        #[arg(long)]
        cap: Option<usize>,
        /// Accept a cap above 32 vertices (up to 64).
        #[arg(long)]
        allow_large: bool,
        /// Also search targets that fail the congruence.
        #[arg(long)]
        search_negatives: bool,
    },
    /// Endpoint reports for every torus with k coordinates and at most N vertices.
    Scan {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        allow_large: bool,
    },
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match run(cli.command, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("i/o: {e}"))
}

pub fn run(
    command: Command,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<u8> {
    match command {
        Command::Construct {
            m,
            k,
            from,
            to,
            format,
            flat,
        } => {
            let spec = TorusSpec::power(m, k)?;
            let u = match &from {
                Some(s) => parse_vertex(&spec, s)?,
                None => spec.zero(),
            };
            let v = parse_vertex(&spec, &to)?;
            match hamiltonian_path(m, k, &u, &v)? {
                PathOutcome::Refused(r) => {
                    writeln!(stderr, "{r}").map_err(io_err)?;
                    Ok(EXIT_REFUSED)
                }
                PathOutcome::Certified(cert) => {
                    let text = render(&cert, format, flat)?;
                    stdout.write_all(text.as_bytes()).map_err(io_err)?;
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Verify {
            m,
            k,
            from,
            to,
            file,
        } => {
            let mut input = String::new();
            match file {
                Some(path) => {
                    input = std::fs::read_to_string(&path)
                        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?
                }
                None => {
                    stdin.read_to_string(&mut input).map_err(io_err)?;
                }
            }
            let (record, word) = parse_word_input(&input)?;
            let moduli = match (m, k) {
                (Some(m), Some(k)) => vec![m; k],
                (None, None) => record.as_ref().map(|r| r.moduli.clone()).ok_or_else(|| {
                    Error::InvalidArgument("--m and --k are required without a JSON record".into())
                })?,
                _ => return Err(Error::InvalidArgument("--m and --k go together".into())),
            };
            let spec = TorusSpec::new(moduli)?;
            let u = match (&from, &record) {
                (Some(s), _) => parse_vertex(&spec, s)?,
                (None, Some(r)) => spec.vertex(r.from.clone())?,
                (None, None) => spec.zero(),
            };
            let v = match (&to, &record) {
                (Some(s), _) => parse_vertex(&spec, s)?,
                (None, Some(r)) => spec.vertex(r.to.clone())?,
                (None, None) => {
                    return Err(Error::InvalidArgument(
                        "--to is required without a JSON record".into(),
                    ))
                }
            };
            let cert = verify_ham_path(&spec, &u, &v, word);
            match cert.defect() {
                None => {
                    writeln!(
                        stdout,
                        "verified: hamiltonian path of {} steps from ({u}) to ({v})",
                        cert.length()
                    )
                    .map_err(io_err)?;
                    Ok(EXIT_OK)
                }
                Some(d) => {
                    writeln!(stdout, "not verified: {d}").map_err(io_err)?;
                    Ok(EXIT_REFUSED)
                }
            }
        }
        Command::Endpoints {
            moduli,
            cap,
            allow_large,
            search_negatives,
        } => {
            let spec = TorusSpec::new(parse_list(&moduli)?)?;
            let cfg = oracle_config(cap, allow_large)?;
            let report = oracle::endpoint_set(
                &spec,
                &spec.zero(),
                &cfg,
                EndpointOptions { search_negatives },
            )?;
            serde_json::to_writer_pretty(&mut *stdout, &report)
                .map_err(|e| Error::Internal(e.to_string()))?;
            writeln!(stdout).map_err(io_err)?;
            report_counterexamples(&report, stderr)?;
            Ok(EXIT_OK)
        }
        Command::Scan {
            max_vertices,
            k,
            cap,
            allow_large,
        } => {
            let cfg = oracle_config(cap, allow_large)?;
            if max_vertices > cfg.cap() {
                return Err(Error::SizeCapExceeded {
                    count: max_vertices,
                    cap: cfg.cap(),
                });
            }
            let specs = oracle::mixed_specs(k, max_vertices);
            let reports = if k >= 3 {
                oracle::conjecture_scan(&specs, &cfg)?
            } else {
                oracle::scan_specs(&specs, &cfg)?
            };
            for report in &reports {
                let line =
                    serde_json::to_string(report).map_err(|e| Error::Internal(e.to_string()))?;
                writeln!(stdout, "{line}").map_err(io_err)?;
                report_counterexamples(report, stderr)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn oracle_config(cap: Option<usize>, allow_large: bool) -> Result<OracleConfig> {
    match cap {
        Some(c) => OracleConfig::with_cap(c, allow_large),
        None => OracleConfig::from_env(),
    }
}

fn report_counterexamples(report: &oracle::EndpointReport, stderr: &mut dyn Write) -> Result<()> {
    for c in &report.counterexamples {
        writeln!(
            stderr,
            "COUNTEREXAMPLE on {}: ({}) {:?}",
            report.spec, c.vertex, c.kind
        )
        .map_err(io_err)?;
    }
    if report.hamiltonian_cycle == Some(false) {
        writeln!(stderr, "note: {} has no hamiltonian cycle", report.spec).map_err(io_err)?;
    }
    Ok(())
}

fn parse_list(s: &str) -> Result<Vec<u64>> {
    Ok(s.parse::<Vertex>()?.into_coords())
}

fn parse_vertex(spec: &TorusSpec, s: &str) -> Result<Vertex> {
    let v: Vertex = s.parse()?;
    spec.check(&v)?;
    Ok(v)
}

fn parse_word_input(input: &str) -> Result<(Option<PathRecord>, Word<crate::torus::Generator>)> {
    let trimmed = input.trim();
    if trimmed.starts_with('{') {
        let record = PathRecord::parse(trimmed)?;
        let word = record.word.to_word()?;
        Ok((Some(record), word))
    } else if trimmed.starts_with('[') {
        let flat: Vec<usize> = serde_json::from_str(trimmed).map_err(|e| Error::Parse {
            position: e.column().saturating_sub(1),
            message: e.to_string(),
        })?;
        Ok((None, Word::from_flat(&flat)))
    } else {
        Ok((None, trimmed.parse()?))
    }
}

/// Renders a certificate in the requested output format.
pub fn render(cert: &PathCertificate, format: Format, flat: bool) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string(&PathRecord::from_certificate(cert, flat))
                .map_err(|e| Error::Internal(e.to_string()))?;
            out.push('\n');
        }
        Format::Word => {
            writeln!(out, "{}", cert.word()).unwrap();
        }
        Format::Vertices => {
            for v in cert.vertices()?.vertices() {
                writeln!(out, "{v}").unwrap();
            }
        }
        Format::Dot => out = to_dot(cert)?,
    }
    Ok(out)
}

/// The whole digraph with the path arcs coloured red.
pub fn to_dot(cert: &PathCertificate) -> Result<String> {
    let spec = cert.spec();
    if spec.vertex_count() > DOT_CAP {
        return Err(Error::SizeCapExceeded {
            count: spec.vertex_count(),
            cap: DOT_CAP,
        });
    }
    let n = spec.vertex_count();
    let mut on_path = vec![usize::MAX; n];
    let verts = cert.vertices()?;
    for pair in verts.vertices().windows(2) {
        on_path[spec.index_of(&pair[0])] = spec.index_of(&pair[1]);
    }
    let mut out = String::from("digraph torus {\n");
    for v in spec.vertices() {
        writeln!(out, "  \"{v}\";").unwrap();
    }
    for v in spec.vertices() {
        let from = spec.index_of(&v);
        for g in spec.generators() {
            let w = spec.add_step(&v, g);
            let attr = if on_path[from] == spec.index_of(&w) {
                format!("label=\"{g}\", color=red")
            } else {
                format!("label=\"{g}\"")
            };
            writeln!(out, "  \"{v}\" -> \"{w}\" [{attr}];").unwrap();
        }
    }
    out.push_str("}\n");
    Ok(out)
}
