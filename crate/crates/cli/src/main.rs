use std::io::{self, IsTerminal};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use dlkb_cli::{run_batch, run_repl, Session};

/// Description-logic knowledge base: runs command files, or reads
/// commands interactively when no file is given.
#[derive(Parser)]
#[command(version)]
struct Args {
    /// Command files to run in order.
    files: Vec<PathBuf>,
    /// Load this file before anything else.
    #[arg(long)]
    kb: Option<PathBuf>,
    /// Print reports for declarations and assertions.
    #[arg(long)]
    verbose: bool,
    /// Step budget for normalization and update transactions.
    #[arg(long)]
    budget: Option<usize>,
    /// Print the final state fingerprint.
    #[arg(long)]
    fingerprint: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut session = Session::new(args.verbose, args.budget);
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    let result = (|| {
        if let Some(kb) = &args.kb {
            run_batch(&mut session, kb, &mut out, &mut err)?;
        }
        if args.files.is_empty() {
            let stdin = io::stdin();
            let prompt = stdin.is_terminal();
            run_repl(&mut session, &mut stdin.lock(), &mut out, &mut err, prompt)?;
        }
        for f in &args.files {
            run_batch(&mut session, f, &mut out, &mut err)?;
        }
        if args.fingerprint {
            use std::io::Write;
            write!(out, "{}", session.kb().fingerprint())?;
        }
        io::Result::Ok(())
    })();
    match result {
        Ok(()) => ExitCode::from(session.status()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(dlkb_cli::BAD_INPUT)
        }
    }
}
