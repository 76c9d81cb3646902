use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use voa::config::{FileConfig, Format, RunConfig, Which};
use voa::parallel::threads_from_env;
use voa::{run, CliError, Command};

/// Exact verification suites for level-k vacuum modules of affine Kac-Moody algebras.
#[derive(Parser, Debug)]
#[command(name = "voa", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Dimension tables of V(k,0)(0), the Heisenberg commutant, its maximal ideal and the parafermion quotient.
    GradedDims,
    /// Virasoro relations and central charges of the conformal vectors; W3 primality.
    CheckVirasoro,
    /// Cartan modes annihilate the coset Virasoro and W3 vectors.
    CheckCommutant,
    /// Generating sets reproduce the charge-zero space, the commutant or the parafermion quotient.
    CheckGenerators,
    /// The commutant ideal equals the vacuum ideal intersected with the commutant.
    CheckIdeal,
    /// Weyl automorphisms preserve the maximal ideal and move the singular vector between roots.
    CheckWeyl,
}

#[derive(Args, Debug)]
struct Opts {
    /// Algebra type such as A1, A2, C2, G2.
    #[arg(long, global = true)]
    algebra: Option<String>,
    /// Level k >= 1.
    #[arg(long, global = true)]
    level: Option<u32>,
    /// Weight bound N.
    #[arg(long, global = true)]
    max_weight: Option<u32>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write the report into this directory instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// TOML file with the same keys as the flags (snake_case).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Largest admissible rank.
    #[arg(long, global = true)]
    rank_cap: Option<usize>,
    /// Mode bound M for the Virasoro relations.
    #[arg(long, global = true)]
    mode_bound: Option<u32>,
    /// Generating set for check-generators.
    #[arg(long, value_enum, global = true)]
    which: Option<Which>,
    /// Rerun with enlarged truncation bounds and compare.
    #[arg(long, global = true)]
    truncation_regression: bool,
    /// Per-bucket dimension cap.
    #[arg(long, global = true)]
    max_bucket_dim: Option<usize>,
    /// Wall-clock cap in seconds.
    #[arg(long, global = true)]
    wall_clock_secs: Option<u64>,
}

impl Opts {
    fn into_file_config(self) -> (FileConfig, Option<PathBuf>) {
        let flags = FileConfig {
            algebra: self.algebra,
            level: self.level,
            max_weight: self.max_weight,
            format: self.format,
            out: self.out,
            rank_cap: self.rank_cap,
            mode_bound: self.mode_bound,
            which: self.which,
            truncation_regression: self.truncation_regression.then_some(true),
            max_bucket_dim: self.max_bucket_dim,
            wall_clock_secs: self.wall_clock_secs,
        };
        (flags, self.config)
    }
}

fn execute(cli: Cli) -> Result<bool, CliError> {
    threads_from_env()?;
    let command = match cli.command {
        Cmd::GradedDims => Command::GradedDims,
        Cmd::CheckVirasoro => Command::CheckVirasoro,
        Cmd::CheckCommutant => Command::CheckCommutant,
        Cmd::CheckGenerators => Command::CheckGenerators,
        Cmd::CheckIdeal => Command::CheckIdeal,
        Cmd::CheckWeyl => Command::CheckWeyl,
    };
    let (flags, config_path) = cli.opts.into_file_config();
    let file = match config_path {
        Some(p) => FileConfig::load(&p)?,
        None => FileConfig::default(),
    };
    let cfg = RunConfig::resolve(flags, file)?;
    let report = run(command, &cfg)?;
    match &cfg.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            let ext = match cfg.format {
                Format::Json => "json",
                Format::Csv => "csv",
            };
            let path = dir.join(format!("{}.{ext}", cfg.file_stem(command.name())));
            std::fs::write(&path, report.render(cfg.format)?)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            for r in &report.reports {
                println!("{}", r.summary_line());
            }
            println!("wrote {}", path.display());
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            report.write_to(&mut stdout, cfg.format)?;
            stdout.flush().map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("voa: {e}");
            if matches!(e, CliError::ResourceCap(_)) {
                eprintln!("voa: aborted; no partial report was written");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
