use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use secoh::cli::{parse_problem, run, Mode, ResultDoc, RunOptions};
use secoh::complexes::DEFAULT_AMBIENT_CEILING;

/// Exact secondary cohomology of finite group data.
#[derive(Parser)]
#[command(name = "secoh", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON problem description
    spec: PathBuf,
    /// Write the result document here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Ambient rank ceiling for assembled matrices
    #[arg(long, default_value_t = DEFAULT_AMBIENT_CEILING)]
    ceiling: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Compute cohomology at the requested degrees
    Compute {
        #[command(flatten)]
        common: Common,
    },
    /// Check the structural identities and report pass/fail per identity
    Verify {
        #[command(flatten)]
        common: Common,
        /// Random tuples per pointwise identity
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Cross-check the pipeline against brute-force enumeration
    Oracle {
        #[command(flatten)]
        common: Common,
    },
    /// Dump explicit face-map tables for inspection
    Faces {
        #[command(flatten)]
        common: Common,
        /// Face maps d_degree^k are dumped
        #[arg(long)]
        degree: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, mode, samples, faces_degree) = match &cli.command {
        Command::Compute { common } => (common, Mode::Cohomology, 1000, None),
        Command::Verify { common, samples } => (common, Mode::Verify, *samples, None),
        Command::Oracle { common } => (common, Mode::Oracle, 1000, None),
        Command::Faces { common, degree } => (common, Mode::FacesDump, 1000, Some(*degree)),
    };
    match execute(common, mode, samples, faces_degree) {
        Ok(doc) => {
            if doc.has_failed_check() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(
    common: &Common,
    mode: Mode,
    samples: usize,
    faces_degree: Option<usize>,
) -> secoh::Result<ResultDoc> {
    let text = std::fs::read_to_string(&common.spec)?;
    let mut spec = parse_problem(&text)?;
    // the subcommand decides what runs; the optional mode field is advisory
    spec.mode = mode;
    let opts = RunOptions {
        ceiling: common.ceiling,
        samples,
        faces_degree,
    };
    let doc = run(&spec, &opts)?;
    let rendered = serde_json::to_string_pretty(&doc)?;
    match &common.out {
        None => println!("{rendered}"),
        Some(path) => write_atomically(path, &rendered)?,
    }
    Ok(doc)
}

fn write_atomically(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp",
            path.file_name().unwrap_or_default().to_string_lossy()
        )),
        None => PathBuf::from(format!(".{}.tmp", path.to_string_lossy())),
    };
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, path)
}
