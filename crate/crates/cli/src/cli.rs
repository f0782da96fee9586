//! Command-line interface.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ghocolim_core::homology::Coefficients;
use ghocolim_core::par::Exec;

use crate::build::{build, BuildOptions};
use crate::document::{parse, serialize, Document};
use crate::error::InputError;
use crate::generate::{generate, Caps, SChoice, SKind};
use crate::report::Report;
use crate::verify::{block_checks, load, verify, Options};

#[derive(Parser, Debug)]
#[command(name = "ghocolim", version, about = "Equivariant homotopy colimits of finite diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a document and check the axioms of every block.
    Check {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run one named check on a document.
    Verify {
        /// axioms, iso:eq1, iso:eq2, iso:eq7, iso:eq11, iso:eq12, iso:eq22,
        /// contractible:eq28, witness:thm1, witness:thm2, witness:thm4,
        /// witness:thm5, equivariance:eq9 or equivariance:eq10
        check: String,
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Coefficients for homology: q, z or a prime, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "q,2,3,5")]
        coeffs: Vec<String>,
        #[arg(long)]
        functor: Option<String>,
        /// Contravariant functor for the coend checks.
        #[arg(long)]
        contra: Option<String>,
        /// Map of categories S: D → C.
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        category: Option<String>,
        /// Simplicial map for witness:thm1.
        #[arg(long)]
        map: Option<String>,
        /// Largest group whose subgroups are enumerated.
        #[arg(long, default_value_t = 64)]
        max_group_order: usize,
    },
    /// Append the output of a construction to a document.
    Build {
        /// nerve, bar, hocolim, colim, grothendieck or pushdown
        construction: String,
        file: PathBuf,
        #[arg(long)]
        truncate: Option<usize>,
        #[arg(long)]
        functor: Option<String>,
        #[arg(long)]
        category: Option<String>,
        /// Map of categories for pushdown.
        #[arg(long)]
        map: Option<String>,
        /// Constant fiber category for grothendieck.
        #[arg(long, conflicts_with = "under")]
        fiber: Option<String>,
        /// Use the under categories as fibers for grothendieck.
        #[arg(long)]
        under: bool,
        /// Name of the output block.
        #[arg(long)]
        name: Option<String>,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random valid instance.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_group: usize,
        #[arg(long, default_value_t = 5)]
        max_objects: usize,
        #[arg(long, default_value_t = 20)]
        max_morphisms: usize,
        #[arg(long, default_value_t = 4)]
        truncate: usize,
        /// Kind of map S to include.
        #[arg(long, value_enum, default_value_t = SArg::Random)]
        s: SArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct Common {
    /// Work at this truncation degree.
    #[arg(long)]
    pub truncate: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Use the sequential code path.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SArg {
    Random,
    None,
    Any,
    Identity,
    Inclusion,
    Projection,
}

impl From<SArg> for SChoice {
    fn from(s: SArg) -> Self {
        match s {
            SArg::Random => SChoice::Random,
            SArg::None => SChoice::None,
            SArg::Any => SChoice::Any,
            SArg::Identity => SChoice::Kind(SKind::Identity),
            SArg::Inclusion => SChoice::Kind(SKind::Inclusion),
            SArg::Projection => SChoice::Kind(SKind::Projection),
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, InputError> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| InputError::new(format!("reading standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| InputError::new(format!("reading {}: {e}", path.display())))?;
    }
    Ok(text)
}

fn load_document(path: &PathBuf) -> Result<Document, InputError> {
    parse(&read_input(path)?)
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), InputError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| InputError::new(format!("writing {}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| InputError::new(format!("writing output: {e}"))),
    }
}

fn emit(report: &Report, format: Format) -> Result<i32, InputError> {
    let text = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    write_output(&None, &text)?;
    Ok(report.exit_code())
}

/// Runs a parsed command line; the value is the process exit code for
/// everything but input errors.
pub fn run(cli: Cli) -> Result<i32, InputError> {
    let started = Instant::now();
    match cli.command {
        Command::Check { file, common } => {
            let doc = load_document(&file)?;
            let m = load(&doc, common.truncate)?;
            let checks = block_checks(&m);
            let r = Report::new("check".into(), &doc, m.truncation, checks, started.elapsed().as_millis(), Vec::new());
            emit(&r, common.format)
        }
        Command::Verify { check, file, common, coeffs, functor, contra, s, category, map, max_group_order } => {
            let coefficients = coeffs
                .iter()
                .map(|c| c.parse::<Coefficients>().map_err(|e| InputError::new(format!("--coeffs {c}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let opts = Options {
                truncate: common.truncate,
                coefficients,
                functor,
                contra,
                s,
                category,
                map,
                max_group_order,
                exec: if common.sequential { Exec::Sequential } else { Exec::Parallel },
            };
            let doc = load_document(&file)?;
            let m = load(&doc, common.truncate)?;
            let (checks, caveats) = verify(&m, &check, &opts)?;
            let r = Report::new(format!("verify {check}"), &doc, m.truncation, checks, started.elapsed().as_millis(), caveats);
            emit(&r, common.format)
        }
        Command::Build { construction, file, truncate, functor, category, map, fiber, under, name, out } => {
            let mut doc = load_document(&file)?;
            let m = load(&doc, truncate)?;
            let opts = BuildOptions { functor, category, map, fiber, under, name };
            build(&mut doc, &m, &construction, &opts)?;
            write_output(&out, &serialize(&doc))?;
            Ok(0)
        }
        Command::Gen { seed, max_group, max_objects, max_morphisms, truncate, s, out } => {
            let caps = Caps { max_group, max_objects, max_morphisms, truncation: truncate, s: s.into() };
            let doc = generate(seed, &caps)?;
            write_output(&out, &serialize(&doc))?;
            Ok(0)
        }
    }
}
