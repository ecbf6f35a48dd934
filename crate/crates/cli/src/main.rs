//! `trop`: exact intersection-theoretic reports on tropical surfaces, fans
//! and rank-3 matroids.
//!
//! Exit codes: 0 success, 1 the checked property fails, 2 bad input,
//! 3 resource limit.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::Failure;

#[derive(Parser)]
#[command(
    name = "trop",
    version,
    about = "Exact intersection theory on tropical surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a complex and check its gluing data and structure constants.
    Validate {
        complex: PathBuf,
    },
    /// Signature of every local intersection matrix.
    CheckTropical {
        complex: PathBuf,
    },
    Euler {
        complex: PathBuf,
    },
    Cohomology {
        complex: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
        degree: u8,
        #[arg(long)]
        homology: bool,
    },
    Todd {
        complex: PathBuf,
    },
    Noether {
        complex: PathBuf,
    },
    DivisorOf {
        complex: PathBuf,
        #[arg(long)]
        function: PathBuf,
    },
    Cartier {
        complex: PathBuf,
        #[arg(long)]
        divisor: PathBuf,
        #[arg(long)]
        integral: bool,
    },
    Intersect {
        complex: PathBuf,
        #[arg(long, num_args = 1, required = true)]
        divisor: Vec<PathBuf>,
    },
    CocycleDivisor {
        complex: PathBuf,
        #[arg(long)]
        cochain: PathBuf,
    },
    Picard {
        complex: PathBuf,
    },
    Hodge {
        complex: PathBuf,
    },
    MaxModulus {
        complex: PathBuf,
        #[arg(long, default_value_t = trop_core::linalg::DEFAULT_VARIABLE_CAP)]
        cap: usize,
    },
    Fan {
        #[command(subcommand)]
        command: FanCommand,
    },
    Matroid {
        #[command(subcommand)]
        command: MatroidCommand,
    },
    Gen {
        #[command(subcommand)]
        command: GenCommand,
    },
}

#[derive(Subcommand)]
enum FanCommand {
    Validate {
        fan: PathBuf,
    },
    Td2 {
        fan: PathBuf,
    },
    /// Stellar subdivision of one cone.
    Subdivide {
        fan: PathBuf,
        #[arg(long, value_name = "RAY_A,RAY_B")]
        cone: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MatroidCommand {
    Invariants { matroid: PathBuf },
    Audit { matroid: PathBuf },
}

#[derive(Subcommand)]
enum GenCommand {
    /// A random weak tropical surface.
    Weak {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        facets: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { complex } => commands::validate(&complex),
        Command::CheckTropical { complex } => commands::check_tropical(&complex),
        Command::Euler { complex } => commands::euler(&complex),
        Command::Cohomology {
            complex,
            degree,
            homology,
        } => commands::cohomology(&complex, degree.into(), homology),
        Command::Todd { complex } => commands::todd(&complex),
        Command::Noether { complex } => commands::noether(&complex),
        Command::DivisorOf { complex, function } => commands::divisor_of(&complex, &function),
        Command::Cartier {
            complex,
            divisor,
            integral,
        } => commands::cartier(&complex, &divisor, integral),
        Command::Intersect { complex, divisor } => commands::intersect(&complex, &divisor),
        Command::CocycleDivisor { complex, cochain } => {
            commands::cocycle_divisor(&complex, &cochain)
        }
        Command::Picard { complex } => commands::picard(&complex),
        Command::Hodge { complex } => commands::hodge(&complex),
        Command::MaxModulus { complex, cap } => commands::max_modulus(&complex, cap),
        Command::Fan { command } => match command {
            FanCommand::Validate { fan } => commands::fan_validate(&fan),
            FanCommand::Td2 { fan } => commands::fan_td2(&fan),
            FanCommand::Subdivide { fan, cone, out } => {
                commands::fan_subdivide(&fan, &cone, out.as_deref())
            }
        },
        Command::Matroid { command } => match command {
            MatroidCommand::Invariants { matroid } => commands::matroid_invariants(&matroid),
            MatroidCommand::Audit { matroid } => commands::matroid_audit(&matroid),
        },
        Command::Gen { command } => match command {
            GenCommand::Weak { seed, facets, out } => commands::gen_weak(seed, facets, &out),
        },
    };
    match result {
        Ok(report) => {
            print!("{}", report.text());
            ExitCode::from(if report.verdict { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(match f {
                Failure::Input(_) => 2,
                Failure::Resource(_) => 3,
            })
        }
    }
}
