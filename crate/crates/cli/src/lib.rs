//! Front end for `formring`: job files, command dispatch, output, and the
//! self-test corpus.

pub mod commands;
pub mod job;
pub mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use commands::{execute, refusal, Command, Failure, EXIT_INCONSISTENT, EXIT_INPUT, EXIT_OK};
use job::{BuildError, Format, JobSpec};

#[derive(Parser, Debug)]
#[command(name = "formring", version, about = "Hilbert coefficients, reductions and depth certificates for filtrations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Hilbert coefficients e_0..e_d and the sampled Hilbert function.
    Coeffs(JobArgs),
    /// A minimal reduction J and its reduction number.
    Reduce(JobArgs),
    /// The depth certificate with the E_J series checks.
    Certify(JobArgs),
    /// Coefficient bounds and the reconstruction of e_i.
    Bounds(JobArgs),
    /// Checks that the job describes a filtration.
    Validate(JobArgs),
    /// Runs the fixture and property corpus.
    Selftest,
}

#[derive(Args, Debug)]
struct JobArgs {
    /// Path to the job file.
    job: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Field characteristic; 0 selects the rationals.
    #[arg(long = "char")]
    characteristic: Option<u64>,
    #[arg(long)]
    ncap: Option<usize>,
    #[arg(long)]
    tmax: Option<u32>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Run the bound checks even when their hypotheses fail.
    #[arg(long)]
    force: bool,
}

impl JobArgs {
    fn apply(&self, spec: &mut JobSpec) {
        if let Some(s) = self.seed {
            spec.options.seed = s;
        }
        if let Some(c) = self.characteristic {
            spec.characteristic = c;
        }
        if let Some(n) = self.ncap {
            spec.options.n_cap = n;
        }
        if let Some(t) = self.tmax {
            spec.options.t_max = t;
        }
        if let Some(f) = self.format {
            spec.options.format = f;
        }
        if self.force {
            spec.options.force = true;
        }
    }
}

/// Parses `argv`, runs the command, and returns the exit code. Results go
/// to `out`; diagnostics go to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let (cmd, args) = match cli.command {
        Cmd::Coeffs(a) => (Command::Coeffs, a),
        Cmd::Reduce(a) => (Command::Reduce, a),
        Cmd::Certify(a) => (Command::Certify, a),
        Cmd::Bounds(a) => (Command::Bounds, a),
        Cmd::Validate(a) => (Command::Validate, a),
        Cmd::Selftest => return run_selftest(out),
    };
    run_job(cmd, &args, out, err)
}

fn run_selftest(out: &mut dyn Write) -> i32 {
    let mut ok = true;
    for res in selftest::run_all() {
        let _ = writeln!(out, "{res}");
        ok &= res.passed;
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_INCONSISTENT
    }
}

fn run_job(cmd: Command, args: &JobArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let path = args.job.display().to_string();
    let text = match std::fs::read_to_string(&args.job) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "{path}: {e}");
            return EXIT_INPUT;
        }
    };
    let mut spec = match JobSpec::parse(&text) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "{path}:{}:{}: {}", e.line, e.col, e.msg);
            return EXIT_INPUT;
        }
    };
    args.apply(&mut spec);
    let format = spec.options.format;
    let job = match spec.build() {
        Ok(j) => j,
        Err(BuildError::Syntax(e)) => {
            let _ = writeln!(err, "{path}:{}:{}: {}", e.line, e.col, e.msg);
            return EXIT_INPUT;
        }
        Err(BuildError::Core(e)) => {
            let failure = Failure::from(e);
            return report_failure(&path, failure, format, out, err);
        }
    };
    match execute(cmd, &job) {
        Ok(o) => {
            let _ = write!(out, "{}", o.render(format));
            o.code
        }
        Err(f) => report_failure(&path, f, format, out, err),
    }
}

fn report_failure(path: &str, f: Failure, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match &f {
        Failure::Refused(reason) => {
            let _ = write!(out, "{}", refusal(reason, format));
        }
        Failure::Input(msg) => {
            let _ = writeln!(err, "{path}: error: {msg}");
        }
        Failure::Inconsistent(msg) => {
            let _ = writeln!(err, "{path}: inconsistency: {msg}");
        }
    }
    f.code()
}
