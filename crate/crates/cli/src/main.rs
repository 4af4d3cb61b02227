//! `fqd2n`: idempotents and Wedderburn decompositions of `F_q C_n` and `F_q D_2n`.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fqd2n::dihedral::DEFAULT_BUDGET;
use fqd2n::ff::Gf;
use fqd2n::{report, verify, Error};
use serde::Serialize;

const EXIT_USAGE: u8 = 1;
const EXIT_INVARIANT: u8 = 2;

#[derive(Parser)]
#[command(name = "fqd2n", version, about = "Idempotents of cyclic and dihedral group algebras over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor x^n - 1 into classified irreducible factors.
    Factor(Single),
    /// Primitive idempotents of F_q[x]/(x^n - 1).
    Idempotents(Single),
    /// Central idempotents and component checks of F_q D_2n.
    Dihedral(WithBudget),
    /// Wedderburn decomposition, with the closed-form claims when they apply.
    Decompose(Single),
    /// Run every check on one instance.
    Verify(WithBudget),
    /// Verify all valid (q, n) over a range.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FieldArgs {
    /// Field order, a prime power.
    #[arg(long, conflicts_with_all = ["p", "k"])]
    q: Option<u64>,
    /// Characteristic, used with --k.
    #[arg(long, requires = "k")]
    p: Option<u64>,
    /// Extension degree over F_p.
    #[arg(long, requires = "p")]
    k: Option<u32>,
}

impl FieldArgs {
    fn field(&self) -> Result<Gf, Failure> {
        match (self.q, self.p, self.k) {
            (Some(q), _, _) => Ok(Gf::from_order(q)?),
            (None, Some(p), Some(k)) => Ok(Gf::new(p, k)?),
            _ => Err(Failure::Usage("give the field as --q Q or as --p P --k K".into())),
        }
    }
}

#[derive(Args)]
struct Single {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct WithBudget {
    #[command(flatten)]
    single: Single,
    /// Cap on q^dim(eZ) for primitivity enumeration.
    #[arg(long, env = "FQD2N_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated field orders.
    #[arg(long, value_delimiter = ',', default_values_t = verify::SWEEP_Q)]
    q_list: Vec<u64>,
    #[arg(long, default_value_t = verify::SWEEP_N_MAX)]
    n_max: usize,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, env = "FQD2N_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(flatten)]
    out: Output,
}

enum Failure {
    Usage(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Invariant(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

fn emit<T: Serialize>(out: &Output, value: &T, text: String) -> Result<(), Failure> {
    let body = match out.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Invariant(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Text => text,
    };
    match &out.output {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(|e| Failure::Usage(e.to_string())),
    }
}

/// Exit 2 after output when a hard check failed.
fn status(passed: bool) -> Result<(), Failure> {
    if passed {
        Ok(())
    } else {
        Err(Failure::Invariant("verification failed".into()))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Factor(a) => {
            let r = report::factor_report(&a.field.field()?, a.n)?;
            emit(&a.out, &r, r.text())
        }
        Command::Idempotents(a) => {
            let r = report::idempotents_report(&a.field.field()?, a.n)?;
            emit(&a.out, &r, r.text())
        }
        Command::Dihedral(a) => {
            let s = &a.single;
            let r = report::dihedral_report(&s.field.field()?, s.n, a.budget)?;
            emit(&s.out, &r, r.text())?;
            status(r.passed())
        }
        Command::Decompose(a) => {
            let r = report::decompose_report(&a.field.field()?, a.n)?;
            emit(&a.out, &r, r.text())
        }
        Command::Verify(a) => {
            let s = &a.single;
            let r = report::verify_report(&s.field.field()?, s.n, a.budget)?;
            emit(&s.out, &r, r.text())?;
            status(r.passed)
        }
        Command::Sweep(a) => {
            let (r, elapsed) = verify::sweep(&a.q_list, a.n_max, a.budget, a.jobs)?;
            for s in &r.skipped {
                eprintln!("skipping q={} n={}: {}", s.q, s.n, s.reason);
            }
            eprintln!("sweep finished in {:.2}s", elapsed.as_secs_f64());
            emit(&a.out, &r, report::sweep_text(&r))?;
            status(r.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Invariant(m)) => {
            eprintln!("invariant failure: {m}");
            ExitCode::from(EXIT_INVARIANT)
        }
    }
}
