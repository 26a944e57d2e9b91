use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use postnikov_cli::{
    check_certificate, cmd_bench, cmd_cohomology, cmd_decide, cmd_susp_group, cmd_tower_info, read_certificate,
    InstanceArgs,
};

/// Homotopy classes of maps into Moore–Postnikov towers.
#[derive(Parser)]
#[command(name = "postnikov", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Instance {
    /// Tower file or catalog name (`K(Z,2)`, `K(Z/2,3)xK(Z,2)`, `S2-stage3`).
    #[arg(long)]
    tower: String,
    /// Pair file, or a built-in space: pt, S<n>, T2, W<k>, C<k>.
    #[arg(long)]
    pair: String,
    /// Map X -> B; omit when the tower base is a point.
    #[arg(long)]
    base_map: Option<PathBuf>,
    /// Refuse jobs that need more stages than this.
    #[arg(long)]
    stage_cap: Option<usize>,
}

impl From<Instance> for InstanceArgs {
    fn from(i: Instance) -> Self {
        InstanceArgs { tower: i.tower, pair: i.pair, base_map: i.base_map, stage_cap: i.stage_cap }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two maps are homotopic; writes a checked certificate when they are.
    Decide {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        map_f: PathBuf,
        #[arg(long)]
        map_g: PathBuf,
        #[arg(long, default_value = "certificate.json")]
        out: PathBuf,
        /// Also print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Compute the group of maps out of the (fibrewise) suspension.
    SuspGroup {
        #[command(flatten)]
        instance: Instance,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run the extraction and exactness self-checks.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Relative cohomology of a pair.
    Cohomology {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "Z")]
        coefficients: String,
    },
    /// Describe a tower.
    TowerInfo {
        #[arg(long)]
        tower: String,
    },
    /// Time both commands on subdivided circles.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "4,8,16,32")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file independently.
    Check {
        #[arg(long)]
        verify: PathBuf,
    },
}

fn write_json<T: serde::Serialize>(path: &std::path::Path, value: &T) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Decide { instance, map_f, map_g, out, json } => {
            let report = cmd_decide(&instance.into(), &map_f, &map_g, &out)?;
            println!("{}", report.verdict());
            if let Some(path) = &report.certificate {
                println!("certificate: {} (verified)", path.display());
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            }
            Ok(if report.homotopic { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::SuspGroup { instance, out, verify, seed } => {
            let report = cmd_susp_group(&instance.into(), verify.then_some(seed))?;
            print!("{}", report.render());
            if let Some(path) = out {
                write_json(&path, &report)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cohomology { pair, degree, coefficients } => {
            let r = cmd_cohomology(&pair, degree, &coefficients)?;
            println!("H^{}({}; {}) = {}", r.degree, r.space, r.coefficients, r.group);
            Ok(ExitCode::SUCCESS)
        }
        Command::TowerInfo { tower } => {
            print!("{}", cmd_tower_info(&tower)?.render());
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { sizes, reps, out } => {
            let table = cmd_bench(&sizes, reps)?;
            print!("{}", table.render());
            if let Some(path) = out {
                write_json(&path, &table)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { verify } => {
            check_certificate(&read_certificate(&verify)?)?;
            println!("certificate {} is valid", verify.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
