use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tetvol_cli::{
    cmd_flipdist, cmd_generate, cmd_glue, cmd_prove, cmd_qvol, cmd_render, cmd_table_defect, cmd_tetvol,
    cmd_validate, cmd_vsa, CmdResult, DEFAULT_FLIP_CAP, DEFAULT_NODE_BUDGET,
};

#[derive(Parser)]
#[command(name = "tetvol", about = "Tet-volume of sphere triangulations, with exact certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Branch-and-bound node budget, or flip cap for `flipdist`.
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Seed for randomized generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the command's artifact (triation, certificate, SVG) here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Write a triation (`T <v>`, `U <v>`, `icos`) or a polygon triangulation (`fan <v>`, `polygon <v>`).
    Generate { family: String, v: Option<u32> },
    /// Check that a file describes a sphere triangulation.
    Validate { file: String },
    /// Qvol and its certificates for a family name or triation file.
    Qvol { input: String, v: Option<u32> },
    /// Tet-volume by branch and bound.
    Tetvol { input: String, v: Option<u32> },
    /// Flip distance between two polygon triangulations.
    Flipdist { a: String, b: String },
    /// The sphere obtained by gluing two polygon triangulations.
    Glue { a: String, b: String },
    /// Certify tetvol(T_v) = 2v - 10 for every v in from..=to.
    Prove { from: u32, to: u32 },
    /// Rows of the U_v defect table (default 12 14 16 18 20).
    TableDefect { rows: Vec<u32> },
    /// Volume-to-surface-area ratio of the cylinder (a, b).
    Vsa { a: u32, b: u32 },
    /// SVG of a T_v or U_v triation unwrapped onto a strip.
    Render { input: String, v: Option<u32> },
}

fn run(cli: &Cli) -> CmdResult {
    let nodes = cli.budget.unwrap_or(DEFAULT_NODE_BUDGET);
    match &cli.command {
        Command::Generate { family, v } => cmd_generate(family, *v, cli.seed),
        Command::Validate { file } => cmd_validate(file),
        Command::Qvol { input, v } => cmd_qvol(input, *v),
        Command::Tetvol { input, v } => cmd_tetvol(input, *v, nodes),
        Command::Flipdist { a, b } => {
            let cap = cli.budget.map_or(DEFAULT_FLIP_CAP, |b| b.min(u32::MAX as u64) as u32);
            cmd_flipdist(a, b, cap)
        }
        Command::Glue { a, b } => cmd_glue(a, b),
        Command::Prove { from, to } => cmd_prove(*from, *to),
        Command::TableDefect { rows } => {
            let rows = if rows.is_empty() { vec![12, 14, 16, 18, 20] } else { rows.clone() };
            cmd_table_defect(&rows, nodes)
        }
        Command::Vsa { a, b } => cmd_vsa(*a, *b),
        Command::Render { input, v } => cmd_render(input, *v),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            if let Some(artifact) = out.artifact {
                match &cli.out {
                    Some(path) => {
                        if let Err(e) = fs::write(path, artifact) {
                            eprintln!("cannot write {}: {e}", path.display());
                            return ExitCode::from(2);
                        }
                    }
                    None => {
                        let _ = stdout.write_all(artifact.as_bytes());
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
