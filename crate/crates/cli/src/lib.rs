//! `binedge`: command-line front end for the binedge-core cohomology engine.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 bad input, 3 internal
//! inconsistency, 4 corrupt census cache.

pub mod census;
pub mod error;
pub mod report;

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::PathBuf;

use binedge_core::gin::{gin_path_generators, Monomial};
use binedge_core::{build_q, compare, gin_ideal, parse_graph, FieldSpec, Graph, QPoset, VerificationReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

pub use census::{cmd_census, CensusOutcome, CensusRecord};
pub use error::CliError;
pub use report::{cmd_analyze, AnalysisReport, AnalyzeOptions};

#[derive(Parser, Debug)]
#[command(name = "binedge", version, about = "Local cohomology modules H^r(A/J_G) for graphs G")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Edge-list or graph6 file; stdin when absent or `-`.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// `q` for the rationals or `fp:<p>` for a prime field.
    #[arg(long, default_value = "q")]
    pub field: FieldSpec,
    /// Multigraded truncation: degrees with `−N ≤ a_i ≤ 0`.
    #[arg(long = "truncate", value_name = "N", default_value_t = 12, value_parser = clap::value_parser!(u16).range(1..))]
    pub truncate: u16,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multiplicities, depth, dimension, CM/Buchsbaum, regularity, Hilbert series.
    Analyze {
        #[command(flatten)]
        common: CommonArgs,
        /// Include the Z^n-graded Hilbert series.
        #[arg(long)]
        zn: bool,
        /// Also run the gin/Hochster comparison.
        #[arg(long)]
        verify: bool,
    },
    /// Compare Z^n-graded dimensions with the Hochster formula on gin(J_G).
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Hasse diagram of Q as DOT (table format) or JSON.
    Poset {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Minimal generators of gin(J_G).
    Gin {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Summaries for a stream of graph6 lines, cached in JSON lines.
    Census {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_name = "PATH")]
        cache: Option<PathBuf>,
    },
}

pub fn cmd_verify(g: &Graph, field: FieldSpec, truncation: usize) -> Result<VerificationReport, CliError> {
    Ok(compare(g, field, truncation)?)
}

pub fn cmd_poset(g: &Graph) -> Result<QPoset, CliError> {
    Ok(build_q(g)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GinListing {
    pub generators: Vec<String>,
    pub facets: Vec<String>,
    pub path_generators_agree: bool,
    pub only_paths: Vec<String>,
    pub only_intersection: Vec<String>,
}

pub fn cmd_gin(g: &Graph) -> Result<GinListing, CliError> {
    let gin = gin_ideal(g)?;
    let paths = gin_path_generators(g)?;
    let strings = |ms: &[Monomial]| ms.iter().map(ToString::to_string).collect();
    Ok(GinListing {
        generators: gin.ideal.generator_strings(),
        facets: gin.complex.facets().iter().map(|&f| Monomial::new(g.n(), f).to_string()).collect(),
        path_generators_agree: paths.agrees(),
        only_paths: strings(&paths.only_paths),
        only_intersection: strings(&paths.only_intersection),
    })
}

fn open_input<'a>(path: &Option<PathBuf>, stdin: &'a mut dyn Read) -> Result<Box<dyn BufRead + 'a>, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            let file = fs::File::open(p).map_err(|source| CliError::Read { path: p.display().to_string(), source })?;
            Ok(Box::new(BufReader::new(file)))
        }
        _ => Ok(Box::new(BufReader::new(stdin))),
    }
}

fn read_graph(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<Graph, CliError> {
    let mut text = String::new();
    open_input(path, stdin)?.read_to_string(&mut text).map_err(|source| CliError::Read {
        path: path.as_ref().map_or("<stdin>".into(), |p| p.display().to_string()),
        source,
    })?;
    Ok(parse_graph(&text)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

/// Runs one command; returns the exit code for a completed run.
pub fn run(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    let mut text = String::new();
    let mut code = 0;
    match &cli.command {
        Command::Analyze { common, zn, verify } => {
            let g = read_graph(&common.input, stdin)?;
            let opts =
                AnalyzeOptions { field: common.field, truncation: common.truncate as usize, zn: *zn, verify: *verify };
            let report = cmd_analyze(&g, &opts)?;
            if report.verification.as_ref().is_some_and(|v| !v.passed()) {
                code = 1;
            }
            text = match common.format {
                Format::Json => to_json(&report),
                Format::Table => report.render_table(),
            };
        }
        Command::Verify { common } => {
            let g = read_graph(&common.input, stdin)?;
            let report = cmd_verify(&g, common.field, common.truncate as usize)?;
            if !report.passed() {
                code = 1;
            }
            text = match common.format {
                Format::Json => to_json(&report),
                Format::Table => {
                    let mut t = format!(
                        "{} {} over {}, N={}, {} degrees\n",
                        report.graph,
                        if report.passed() { "PASS" } else { "FAIL" },
                        report.field,
                        report.truncation,
                        report.checked_degrees
                    );
                    if let Some(m) = &report.first_mismatch {
                        t.push_str(&format!(
                            "first mismatch: r={} degree={:?} decomposition={} oracle={}\n",
                            m.r, m.degree, m.decomposition, m.oracle
                        ));
                    }
                    t
                }
            };
        }
        Command::Poset { common } => {
            let g = read_graph(&common.input, stdin)?;
            let q = cmd_poset(&g)?;
            text = match common.format {
                Format::Json => to_json(&q.to_json()),
                Format::Table => q.hasse_dot(),
            };
        }
        Command::Gin { common } => {
            let g = read_graph(&common.input, stdin)?;
            let listing = cmd_gin(&g)?;
            text = match common.format {
                Format::Json => to_json(&listing),
                Format::Table => {
                    let mut t = listing.generators.join("\n");
                    t.push('\n');
                    if !listing.path_generators_agree {
                        t.push_str(&format!(
                            "# path formula differs: only paths {:?}, only intersection {:?}\n",
                            listing.only_paths, listing.only_intersection
                        ));
                    }
                    t
                }
            };
        }
        Command::Census { common, cache } => {
            let input = open_input(&common.input, stdin)?;
            let outcome = cmd_census(input, cache.as_deref(), common.field, common.truncate as usize)?;
            for r in &outcome.records {
                text.push_str(&serde_json::to_string(r).expect("census records serialize"));
                text.push('\n');
            }
            let _ = writeln!(
                err,
                "census: {} graphs, {} computed, {} cached",
                outcome.records.len(),
                outcome.computed,
                outcome.cached
            );
            if !outcome.all_pass() {
                code = 1;
            }
        }
    }
    out.write_all(text.as_bytes()).map_err(|source| CliError::Write { path: PathBuf::from("<stdout>"), source })?;
    Ok(code)
}
