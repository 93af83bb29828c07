//! Command-line front end for `invtwist`.
//!
//! ```text
//! invtwist check <kind> <input>...
//! invtwist build <what> <input> [--out <path>]
//! invtwist pipeline <name> (--builtin <name> | --input <path>) [--c <c>] [--r <r>] [--alpha <a>]
//! invtwist list-builtins
//! ```
//!
//! Global flags: `--field Q|GF:<p>`, `--report-out <path>`, `--max-dim <n>`
//! (default 64), `--jobs <n>` (default 1).
//!
//! Exit codes: 0 when every check passed, 1 when a check failed, 2 when
//! the input could not be read, parsed, or was too large. The definition
//! file grammar is documented in [`defs`], the report format in
//! [`run_report`].

pub mod builtins;
pub mod commands;
pub mod defs;
pub mod emit;
pub mod error;
pub mod run_report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use invtwist::Field;

use commands::{BuildTarget, InstanceArgs, PipelineName, Settings, DEFAULT_MAX_DIM};
use defs::{sha256_hex, Kind, Loader};
use error::{CliError, CliResult, EXIT_INPUT};
use run_report::{OutputDigest, RunReport, Verdict};

#[derive(Parser, Debug)]
#[command(name = "invtwist", version, about = "Exact checks of twisted tensor products and invariance under twisting")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Field for builtins and the field every file must declare (Q or GF:<p>).
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<Field>,

    /// Write a JSON run report to this path.
    #[arg(long, global = true)]
    report_out: Option<PathBuf>,

    /// Refuse instances whose largest tensor product exceeds this dimension.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM)]
    max_dim: usize,

    /// Worker threads for exhaustive checks.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify definition files or builtins as the given kind.
    Check {
        /// algebra, hopf, comodule-algebra, linmap, twisting-data (or twisting),
        /// invariance-data, star-data, nu-twist, sqt-element
        #[arg(value_parser = parse_kind)]
        kind: Kind,
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Construct an object and write it as a definition file.
    Build {
        /// twisted-product, smash, double, star-algebra, derive-rprime, homogenization
        #[arg(value_parser = parse_target)]
        what: BuildTarget,
        input: String,
        /// Destination file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one of the staged example pipelines end to end.
    Pipeline {
        /// comodule-twist, homogenization, sqt-double
        #[arg(value_parser = parse_pipeline)]
        name: PipelineName,
        /// Builtin instance name.
        #[arg(long)]
        builtin: Option<String>,
        /// Definition file for the instance.
        #[arg(long)]
        input: Option<String>,
        /// Deformation parameter (comodule-twist on kC2).
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        /// trivial or triangular (sqt-double).
        #[arg(long)]
        r: Option<String>,
        /// Parameter of the quasitriangular family on H4 (sqt-double).
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// List the builtin instances.
    ListBuiltins,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: invtwist::Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    Kind::parse(s).ok_or_else(|| format!("unknown kind {s:?}"))
}

fn parse_target(s: &str) -> Result<BuildTarget, String> {
    BuildTarget::parse(s).ok_or_else(|| format!("unknown build target {s:?}"))
}

fn parse_pipeline(s: &str) -> Result<PipelineName, String> {
    PipelineName::parse(s).ok_or_else(|| format!("unknown pipeline {s:?}"))
}

/// Runs the command line `args` (program name first), writing human output
/// to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let command: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let started = Instant::now();
    let mut rep = RunReport::new(command);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs as usize).build().expect("thread pool");
    let mut buffer = Vec::new();
    let result = pool.install(|| dispatch(&cli, &mut rep, &mut buffer));
    let _ = out.write_all(&buffer);
    if let Err(e) = result {
        rep.error(e.exit_code(), e.to_string());
        let _ = writeln!(err, "error: {e}");
    }
    rep.finish();
    rep.wall_time_ms = started.elapsed().as_millis() as u64;
    match &cli.command {
        Command::ListBuiltins => {}
        // standard output carries the built file
        Command::Build { out: None, .. } => {
            let _ = err.write_all(render(&rep).as_bytes());
        }
        _ => {
            let _ = out.write_all(render(&rep).as_bytes());
        }
    }
    if let Some(path) = &cli.global.report_out {
        if let Err(e) = std::fs::write(path, rep.to_json()) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    rep.exit_code
}

fn dispatch(cli: &Cli, rep: &mut RunReport, out: &mut Vec<u8>) -> CliResult<()> {
    let settings = Settings { field: cli.global.field, max_dim: cli.global.max_dim };
    let mut loader = Loader::new(settings.field);
    let result = match &cli.command {
        Command::Check { kind, inputs } => commands::check(*kind, inputs, &settings, &mut loader, rep),
        Command::Build { what, input, out: dest } => {
            let built = commands::build(*what, input, &settings, &mut loader, rep);
            match built {
                Ok(Some(text)) => write_output(&text, dest.as_ref(), rep, out),
                Ok(None) => Ok(()),
                Err(e) => Err(e),
            }
        }
        Command::Pipeline { name, builtin, input, c, r, alpha } => {
            let args = InstanceArgs {
                builtin: builtin.clone(),
                input: input.clone(),
                c: c.clone(),
                r: r.clone(),
                alpha: alpha.clone(),
            };
            commands::pipeline(*name, &args, &settings, &mut loader, rep).map(|run| {
                let _ = writeln!(out, "pipeline {} on {}", run.pipeline, run.instance);
            })
        }
        Command::ListBuiltins => {
            let _ = out.write_all(commands::list_builtins().as_bytes());
            Ok(())
        }
    };
    rep.inputs = loader.inputs();
    result
}

fn write_output(text: &str, dest: Option<&PathBuf>, rep: &mut RunReport, out: &mut dyn Write) -> CliResult<()> {
    let digest = sha256_hex(text.as_bytes());
    match dest {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Write { path: path.clone(), source })?;
            rep.output = Some(OutputDigest { path: path.display().to_string(), sha256: digest });
        }
        None => {
            let _ = out.write_all(text.as_bytes());
            rep.output = Some(OutputDigest { path: "-".into(), sha256: digest });
        }
    }
    Ok(())
}

/// The human-readable summary: one line per stage, failure witnesses, and
/// the verdict.
pub fn render(rep: &RunReport) -> String {
    let mut s = String::new();
    for stage in &rep.stages {
        let mark = if stage.passed { "PASS" } else { "FAIL" };
        s.push_str(&format!("[{mark}] {}\n", stage.name));
        if !stage.passed {
            for line in stage.report.to_string().lines().skip(1) {
                s.push_str(&format!("    {}\n", line.trim_start()));
            }
        }
    }
    if let Some(failed) = rep.failed_stage() {
        s.push_str(&format!("failed stage: {}\n", failed.name));
        let earlier_ok = rep.stages.iter().take_while(|x| x.name != failed.name).all(|x| x.passed);
        if failed.kind == invtwist::suite::StageKind::Consequence && earlier_ok {
            s.push_str("implication violated: this stage follows from the stages before it\n");
        }
    }
    let verdict = match rep.verdict {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Error => "ERROR",
    };
    s.push_str(&format!("result: {verdict}\n"));
    s
}
