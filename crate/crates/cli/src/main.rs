use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kummer_core::exec::Execution;
use kummer_verify::keum_import::import_keum;
use kummer_verify::{run, RunConfig, Suite, Sweep};

/// Exact verification of the Kummer surface automorphism computations.
#[derive(Parser)]
#[command(name = "verify", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a file of z_w actions and record its digest.
    ImportKeum {
        file: PathBuf,
        /// Where to write the digest (default: FILE.sha256).
        #[arg(long)]
        digest_out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Suites to run.
    #[arg(value_enum, default_value = "all")]
    suites: Vec<Suite>,
    /// Seeded rational specializations for the Cremona suite.
    #[arg(long, default_value_t = 5)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Also run the Cremona suite over Q(a, b, c).
    #[arg(long)]
    symbolic: bool,
    /// Validated z_w actions (JSON); enables the z_w-dependent checks.
    #[arg(long)]
    keum_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "representatives")]
    sweep: Sweep,
    /// Write the JSON report here.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Run every batch on the calling thread.
    #[arg(long)]
    sequential: bool,
}

fn exec(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Some(Command::ImportKeum { file, digest_out }) => import(file, digest_out),
        None => run_suites(cli.run),
    }
}

fn import(file: PathBuf, digest_out: Option<PathBuf>) -> ExitCode {
    let report = match import_keum(&file, Execution::Parallel) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    if !report.accepted {
        for p in &report.problems {
            eprintln!("FAIL {p}");
        }
        for f in &report.failures {
            eprintln!("FAIL {}: {}", f.hexad, f.properties.join("; "));
        }
        return ExitCode::from(1);
    }
    let out = digest_out.unwrap_or_else(|| {
        let mut s = file.into_os_string();
        s.push(".sha256");
        PathBuf::from(s)
    });
    if let Err(e) = std::fs::write(&out, format!("{}\n", report.digest)) {
        eprintln!("error: {}: {e}", out.display());
        return ExitCode::from(2);
    }
    eprintln!("accepted, digest {} written to {}", report.digest, out.display());
    ExitCode::SUCCESS
}

fn run_suites(args: RunArgs) -> ExitCode {
    let cfg = RunConfig {
        suites: args.suites,
        samples: args.samples,
        seed: args.seed,
        symbolic: args.symbolic,
        keum_file: args.keum_file,
        sweep: args.sweep,
        exec: exec(args.sequential),
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for a in &report.assertions {
        println!("{:<7} {}: {}", a.status.to_string(), a.id, a.anchor);
    }
    if let Some(d) = &report.keum_digest {
        println!("keum data digest {d}");
    }
    let s = &report.summary;
    println!("{} passed, {} failed, {} skipped", s.pass, s.fail, s.skipped);
    if let Some(path) = &args.output {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
