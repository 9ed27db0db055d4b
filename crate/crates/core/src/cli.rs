//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::atlas::{build_atlas, siegel_identify, Atlas, PelCase};
use crate::error::{Error, Result};
use crate::io::{emit_dot, emit_table, parse_case, preset, AtlasDocument};
use crate::oracle::verify_atlas;

#[derive(Debug, Parser)]
#[command(name = "bruhat-strata", version, about = "Bruhat and Ekedahl-Oort stratification atlases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the atlas of a JSON case file.
    Atlas {
        case: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Build the atlas of a case file and check it against brute force.
    Verify {
        case: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Build the atlas of a named preset: siegel:G, hilbert:D, gu:R,S:inert|split.
    Corpus {
        preset: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// Identify the Siegel strata of genus G with the a-number stratification.
    Siegel {
        genus: usize,
        #[arg(long)]
        bound: Option<u64>,
    },
}

#[derive(Debug, Args)]
struct Flags {
    /// Directory for atlas.json, hasse.dot and table.txt.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cross-check the atlas against the brute-force oracles.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    no_minuscule_check: bool,
    /// Maximum Weyl group order to enumerate.
    #[arg(long)]
    bound: Option<u64>,
}

impl Flags {
    fn apply(&self, case: &mut PelCase) {
        if self.no_minuscule_check {
            case.options.minuscule_check = false;
        }
        if let Some(bound) = self.bound {
            case.options.element_bound = bound;
        }
    }
}

fn write_outputs(atlas: &Atlas, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("atlas.json"), AtlasDocument::from_atlas(atlas).to_json())?;
    fs::write(dir.join("hasse.dot"), emit_dot(atlas))?;
    fs::write(dir.join("table.txt"), emit_table(atlas))?;
    Ok(())
}

fn run_case(mut case: PelCase, flags: &Flags, verify: bool, out: &mut dyn Write) -> Result<i32> {
    flags.apply(&mut case);
    let atlas = build_atlas(&case)?;
    write!(out, "{}", emit_table(&atlas))?;
    if let Some(dir) = &flags.out {
        write_outputs(&atlas, dir)?;
    }
    if !(verify || flags.verify) {
        return Ok(0);
    }
    let report = verify_atlas(&atlas)?;
    writeln!(out)?;
    write!(out, "{}", report.render())?;
    if let Some(dir) = &flags.out {
        fs::write(dir.join("verification.json"), report.to_json())?;
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn read_case(path: &Path) -> Result<PelCase> {
    let text = fs::read_to_string(path).map_err(|e| Error::Case(format!("{}: {e}", path.display())))?;
    parse_case(&text)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Atlas { case, flags } => run_case(read_case(&case)?, &flags, false, out),
        Command::Verify { case, flags } => run_case(read_case(&case)?, &flags, true, out),
        Command::Corpus { preset: name, flags } => run_case(preset(&name)?, &flags, false, out),
        Command::Siegel { genus, bound } => {
            if let Some(bound) = bound {
                let order = crate::root_data::FactorType::C.weyl_order(genus.max(1));
                if order > u128::from(bound) {
                    return Err(Error::BoundExceeded { order, bound });
                }
            }
            let identification = siegel_identify(genus)?;
            write!(out, "{}", identification.table())?;
            Ok(0)
        }
    }
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 on verification failure, 2 on invalid input, 3 when the element bound
/// is exceeded.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
