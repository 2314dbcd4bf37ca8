use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hyperembed::invariants::DEFAULT_MAX_ARITY;
use hyperembed_cli::corpus::{load_corpus, render_outcomes, run_cases};
use hyperembed_cli::{cmd_cert_verify, cmd_compare_invariants, cmd_groebner, cmd_quasi_singular, Failure, Report};

#[derive(Parser)]
#[command(name = "hyperembed", version, about = "Exact invariants of embedded hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the reduced Gröbner basis of a system.
    Groebner {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "degrevlex")]
        order: String,
        /// Variables from highest to lowest; defaults to declaration order.
        #[arg(long, value_delimiter = ',')]
        priority: Option<Vec<String>>,
        /// Polynomials to use; defaults to all of them.
        #[arg(long, value_delimiter = ',')]
        names: Option<Vec<String>>,
    },
    /// Count the zeros of the gradient of a named polynomial.
    QuasiSingular {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Compare E_k + R invariants of two polynomial lists.
    CompareInvariants {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        /// System generating R; defaults to both lists together.
        #[arg(long)]
        modulo: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_ARITY)]
        max_arity: usize,
    },
    /// Replay an isomorphism certificate.
    CertVerify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run the worked-example corpus.
    Corpus(CorpusArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Selection {
    #[arg(long)]
    run_all: bool,
    #[arg(long)]
    case: Option<String>,
}

#[derive(Args)]
struct CorpusArgs {
    #[command(flatten)]
    selection: Selection,
    #[arg(long, default_value = "corpus")]
    dir: PathBuf,
}

fn corpus(args: &CorpusArgs) -> Result<Report, Failure> {
    let mut cases = load_corpus(&args.dir)?;
    if let Some(id) = &args.selection.case {
        cases.retain(|c| &c.id == id);
        if cases.is_empty() {
            return Err(Failure::input(format!("unknown case id `{id}`")));
        }
    }
    let outcomes = run_cases(&cases);
    let ok = outcomes.iter().all(|o| o.passed());
    Ok(Report {
        stdout: render_outcomes(&outcomes),
        code: if ok { 0 } else { 1 },
    })
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let ok = |stdout: String| Report { stdout, code: 0 };
    match cli.command {
        Command::Groebner {
            input,
            order,
            priority,
            names,
        } => cmd_groebner(&input, &order, priority.as_deref(), names.as_deref()).map(ok),
        Command::QuasiSingular { input, poly } => cmd_quasi_singular(&input, &poly).map(ok),
        Command::CompareInvariants {
            left,
            right,
            modulo,
            k,
            max_arity,
        } => cmd_compare_invariants(&left, &right, modulo.as_deref(), k, max_arity).map(ok),
        Command::CertVerify { input } => cmd_cert_verify(&input),
        Command::Corpus(args) => corpus(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(report) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(report.stdout.as_bytes());
            ExitCode::from(report.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
