//! Command-line front end for `topodyn`: system documents, profile output,
//! atlas files and the reference verification run.

pub mod document;
pub mod fixtures;
pub mod render;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;
use topodyn::zoo::{atlas, enumerate_topologies, map_count, search, Filter, SearchQuery, ZooError};
use topodyn::{classify, Analysis, DecideError, Property};

use document::{parse_system, DocumentError, Loaded, SystemDocument};
use fixtures::{reference_fixtures, verify_paper, VerifyConfig, VerifyError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "topodyn",
    version,
    about = "Decide transitivity and mixing of self-maps on finite topological spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProfileFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AtlasFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a system document and print its canonical form.
    Validate { path: PathBuf },
    /// Print every property verdict with its witness.
    Classify {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: ProfileFormat,
    },
    /// Print the J^mix limit set of a point, or of every point.
    Jmix {
        path: PathBuf,
        #[arg(long, conflicts_with = "all")]
        point: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Write the profile of every system on n points.
    Enumerate {
        #[arg(long)]
        points: usize,
        /// One row per homeomorphism class.
        #[arg(long)]
        dedup: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: AtlasFormat,
    },
    /// Find systems with and without given properties.
    Search {
        #[arg(long)]
        points: usize,
        #[arg(long, value_delimiter = ',')]
        require: Vec<Property>,
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<Property>,
        #[arg(long, value_delimiter = ',')]
        filter: Vec<Filter>,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        dedup: bool,
    },
    /// Check the reference systems, the hypermixing sweep and the invariant suite.
    VerifyPaper {
        #[arg(long, default_value_t = 3)]
        max_points: usize,
        /// Sampled systems per size at 4 and 5 points.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = topodyn::zoo::verify::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Document {
        path: PathBuf,
        source: DocumentError,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Zoo(#[from] ZooError),
    #[error(transparent)]
    Decide(#[from] DecideError),
    #[error(transparent)]
    Output(#[from] io::Error),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::Document { .. } | CliError::Usage(_) => {
                EXIT_MALFORMED
            }
            CliError::Zoo(ZooError::CapExceeded { .. })
            | CliError::Zoo(ZooError::ZeroPoints)
            | CliError::Zoo(ZooError::UnsatisfiableQuery(_)) => EXIT_MALFORMED,
            _ => EXIT_FAILED,
        }
    }
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_system(&text).map_err(|source| CliError::Document {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs one command. Diagnostics go to `err`; the return value is the exit
/// status.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Validate { path } => cmd_validate(&path, out, err),
        Command::Classify { path, format } => cmd_classify(&path, format, out),
        Command::Jmix { path, point, all } => cmd_jmix(&path, point.as_deref(), all, out, err),
        Command::Enumerate {
            points,
            dedup,
            out: path,
            format,
        } => match path {
            Some(p) => {
                let file = File::create(&p)?;
                let mut w = BufWriter::new(file);
                let code = cmd_enumerate(points, dedup, format, &mut w, err)?;
                w.flush()?;
                Ok(code)
            }
            None => cmd_enumerate(points, dedup, format, out, err),
        },
        Command::Search {
            points,
            require,
            forbid,
            filter,
            limit,
            dedup,
        } => {
            let q = SearchQuery {
                n: points,
                required: require,
                forbidden: forbid,
                filters: filter,
                limit,
                dedup,
            };
            cmd_search(&q, out, err)
        }
        Command::VerifyPaper {
            max_points,
            samples,
            seed,
        } => {
            let cfg = VerifyConfig {
                max_points,
                samples,
                seed,
            };
            let summary = verify_paper(out, &reference_fixtures(), &cfg)?;
            Ok(if summary.all_passed() {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
    }
}

pub fn cmd_validate(
    path: &Path,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let loaded = load(path)?;
    if loaded.inserted_empty {
        writeln!(err, "notice: the empty set was added to the open sets")?;
    }
    if loaded.inserted_full {
        writeln!(err, "notice: the whole space was added to the open sets")?;
    }
    let doc = SystemDocument::from_system(&loaded.system);
    writeln!(out, "{}", doc.to_json_pretty())?;
    Ok(EXIT_OK)
}

pub fn cmd_classify(
    path: &Path,
    format: ProfileFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let sys = load(path)?.system;
    let profile = classify(&sys)?;
    match format {
        ProfileFormat::Json => {
            let v = render::profile_json(&sys, &profile);
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&v).expect("plain json")
            )?;
        }
        ProfileFormat::Csv => render::write_profile_csv(out, &sys, &profile)?,
        ProfileFormat::Text => render::write_profile_text(out, &sys, &profile)?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_jmix(
    path: &Path,
    point: Option<&str>,
    all: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let sys = load(path)?.system;
    let t = sys.topology();
    if !sys.is_continuous() {
        writeln!(
            err,
            "notice: the map is not continuous; J^mix is computed from minimal neighborhoods regardless"
        )?;
    }
    let analysis = Analysis::new(&sys);
    match (point, all) {
        (Some(name), _) => {
            let x = t
                .names()
                .iter()
                .position(|p| p == name)
                .ok_or_else(|| CliError::Usage(format!("no point named `{name}`")))?;
            writeln!(out, "{}", t.format_set(analysis.jmix(x)))?;
        }
        (None, true) => {
            for x in 0..t.n() {
                writeln!(
                    out,
                    "J^mix({}) = {}",
                    t.name(x),
                    t.format_set(analysis.jmix(x))
                )?;
            }
            writeln!(
                out,
                "J^mix(whole space) = {}",
                t.format_set(analysis.jmix_of_set(t.full()))
            )?;
        }
        (None, false) => return Err(CliError::Usage("pass --point NAME or --all".into())),
    }
    Ok(EXIT_OK)
}

pub fn cmd_enumerate(
    n: usize,
    dedup: bool,
    format: AtlasFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let records = atlas(n, dedup)?;
    match format {
        AtlasFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(render::atlas_header())?;
            for rec in &records {
                w.write_record(render::atlas_csv_row(rec))?;
            }
            w.flush()?;
        }
        AtlasFormat::Jsonl => {
            for rec in &records {
                writeln!(out, "{}", render::atlas_json_row(rec))?;
            }
        }
    }
    let labeled = enumerate_topologies(n)?.count() * map_count(n);
    if dedup {
        writeln!(
            err,
            "{} classes up to relabeling among {labeled} labeled systems on {n} points",
            records.len()
        )?;
    } else {
        writeln!(err, "{labeled} labeled systems on {n} points")?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_search(
    q: &SearchQuery,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let found = search(q)?;
    for rec in &found {
        writeln!(
            out,
            "{}",
            SystemDocument::from_system(&rec.system).to_json()
        )?;
    }
    writeln!(err, "{} systems found", found.len())?;
    Ok(if found.is_empty() {
        EXIT_FAILED
    } else {
        EXIT_OK
    })
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.into())
    }
}
