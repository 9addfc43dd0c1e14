use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dynmatch::harness::{
    bench, gen_workload, read_sequence, run_workload, write_csv, write_sequence, EngineKind, VerifyMode, Workload,
    WorkloadKind, WorkloadSpec, SEED_ENV,
};
use dynmatch::Result;

#[derive(Parser)]
#[command(name = "dynmatch", about = "Dynamic maximal matching: generate, run, benchmark and fuzz")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an update sequence file
    Gen {
        #[arg(long)]
        kind: WorkloadKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        len: usize,
        #[arg(long, default_value_t = 0.5)]
        p_insert: f64,
        #[arg(long, env = SEED_ENV, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Engine the adaptive kinds are played against
        #[arg(long, default_value = "full")]
        engine: EngineKind,
    },
    /// Run an engine over a sequence file
    Run {
        #[arg(long)]
        engine: EngineKind,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "final")]
        verify: VerifyMode,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Measure elementary operations per update across sizes
    Bench {
        #[arg(long)]
        engine: EngineKind,
        #[arg(long)]
        kind: WorkloadKind,
        #[arg(long, value_delimiter = ',', default_value = "128,256,512")]
        n_list: Vec<usize>,
        #[arg(long, env = SEED_ENV, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        len: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        p_insert: f64,
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
    /// Run verified random trials and shrink any failure
    Fuzz {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, env = SEED_ENV, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "full")]
        engine: EngineKind,
        /// Directory for shrunk failing sequences
        #[arg(long, default_value = ".")]
        fail_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Command::Gen { kind, n, len, p_insert, seed, out, engine } => {
            let w = gen_workload(&WorkloadSpec { kind, n, len, p_insert, seed })?;
            let events = match w {
                Workload::Fixed { events, .. } => events,
                adaptive => run_workload(engine, &adaptive, VerifyMode::None)?.trace,
            };
            write_sequence(BufWriter::new(File::create(&out)?), n, &events)?;
            println!("wrote {} updates to {}", events.len(), out.display());
            Ok(true)
        }
        Command::Run { engine, input, verify, json_out } => {
            let (n, events) = read_sequence(BufReader::new(File::open(&input)?))?;
            let out = run_workload(engine, &Workload::Fixed { n, events }, verify)?;
            let json = out.report.to_json();
            println!("{}", json);
            if let Some(path) = &json_out {
                std::fs::write(path, format!("{}\n", json))?;
            }
            if let Some(f) = out.failure {
                eprintln!("failure at update {}: {}", f.step, f.detail);
                let mut path = json_out.unwrap_or_else(|| input.clone()).into_os_string();
                path.push(".shrunk.seq");
                write_sequence(BufWriter::new(File::create(&path)?), n, &f.shrunk)?;
                eprintln!("shrunk to {} updates: {}", f.shrunk.len(), PathBuf::from(path).display());
                return Ok(false);
            }
            Ok(true)
        }
        Command::Bench { engine, kind, n_list, seed, len, p_insert, csv_out } => {
            let rows = bench(engine, kind, &n_list, seed, len, p_insert)?;
            write_csv(std::io::stdout().lock(), &rows)?;
            if let Some(path) = csv_out {
                write_csv(BufWriter::new(File::create(path)?), &rows)?;
            }
            Ok(true)
        }
        Command::Fuzz { trials, seed, engine, fail_dir } => {
            let results = dynmatch::harness::fuzz(trials, seed, engine)?;
            let mut failed = 0;
            for t in &results {
                if let Some(msg) = &t.failure {
                    failed += 1;
                    let s = &t.spec;
                    println!("trial {} ({} n={} len={} p={}): {}", t.id, s.kind, s.n, s.len, s.p_insert, msg);
                    if let Some(seq) = &t.shrunk {
                        let path = fail_dir.join(format!("fuzz-{}-{}.seq", seed, t.id));
                        write_sequence(BufWriter::new(File::create(&path)?), s.n, seq)?;
                        println!("  shrunk to {} updates: {}", seq.len(), path.display());
                    }
                }
            }
            let updates: usize = results.iter().map(|t| t.updates).sum();
            println!("{} trials, {} updates, {} failed", results.len(), updates, failed);
            Ok(failed == 0)
        }
    }
}
