mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use knotcalc_core::scalar::IntervalCtx;
use num_bigint::BigInt;

use commands::EnumArgs;
use report::{Failure, Report};

#[derive(Parser, Debug)]
#[command(name = "knotcalc", version, about = "Exact presentation, lattice, kernel, JSJ and hyperbolic bound calculus")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Working precision in decimal digits.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..=100_000), global = true)]
    precision: u32,
    /// Hyperbolic catalog JSON (file, literal or `-`).
    #[arg(long, global = true)]
    catalog: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Presentation length of `<gens | relators>`.
    Plen { presentation: String },
    /// Rewrite into a triangular presentation of the same length.
    Triangulate { presentation: String },
    /// Smith normal form of an integer matrix.
    Snf { matrix: String },
    /// Integral kernel basis with the 3^p entry bound.
    KernelBasis { matrix: String },
    /// Bounded generators of the relative cycle space of a handle complex.
    Cycles {
        complex: String,
        /// Relation rows for the torsion bound check.
        #[arg(long)]
        torsion: Option<String>,
    },
    /// Choice of zeta for omega / m and the extended filling map.
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        #[arg(long, allow_hyphen_values = true)]
        m: BigInt,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        t: BigInt,
    },
    /// Enumerate decorated JSJ trees up to isomorphism.
    EnumKnots {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        max_p: i64,
        #[arg(long)]
        max_q: i64,
        /// Largest key-chain order (default: no limit beyond the vertex count).
        #[arg(long)]
        max_r: Option<i64>,
        /// Upper bound on cable q only.
        #[arg(long)]
        cable_cap: Option<BigInt>,
        /// Include every tree as JSON.
        #[arg(long)]
        trees: bool,
    },
    /// Fill the boundary above `edge` along its longitude.
    Desatellite {
        tree: String,
        /// Child node id of the edge to cut.
        #[arg(long)]
        edge: String,
    },
    /// Structural and catalog checks, canonical form and piece statistics.
    Validate {
        tree: String,
        #[arg(long)]
        plen: Option<u64>,
        #[arg(long)]
        rank: Option<u64>,
    },
    /// Winding divisibility of the subtree at `node`.
    Winding {
        tree: String,
        #[arg(long)]
        node: String,
    },
    /// Hyperbolic bounds for presentation length `plen`.
    Bounds {
        #[arg(long)]
        plen: u64,
        #[arg(long)]
        vol: Option<String>,
        #[arg(long)]
        eps: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Plen { .. } => "plen",
            Command::Triangulate { .. } => "triangulate",
            Command::Snf { .. } => "snf",
            Command::KernelBasis { .. } => "kernel-basis",
            Command::Cycles { .. } => "cycles",
            Command::Zeta { .. } => "zeta",
            Command::EnumKnots { .. } => "enum-knots",
            Command::Desatellite { .. } => "desatellite",
            Command::Validate { .. } => "validate",
            Command::Winding { .. } => "winding",
            Command::Bounds { .. } => "bounds",
        }
    }
}

fn run(cli: &Cli, r: &mut Report) -> Result<(), Failure> {
    let ctx = IntervalCtx::with_digits(cli.precision);
    let catalog = || commands::load_catalog(cli.catalog.as_deref());
    match &cli.command {
        Command::Plen { presentation } => commands::plen(r, presentation),
        Command::Triangulate { presentation } => commands::triangulate(r, presentation),
        Command::Snf { matrix } => commands::snf(r, matrix),
        Command::KernelBasis { matrix } => commands::kernel_basis(r, matrix),
        Command::Cycles { complex, torsion } => commands::cycles(r, complex, torsion.as_deref()),
        Command::Zeta { omega, m, t } => commands::zeta(r, omega, m, t),
        Command::EnumKnots { max_vertices, max_p, max_q, max_r, cable_cap, trees } => {
            let args = EnumArgs {
                max_vertices: *max_vertices,
                max_p: *max_p,
                max_q: *max_q,
                max_r: *max_r,
                cable_cap: cable_cap.clone(),
                trees: *trees,
            };
            commands::enum_knots(r, &args, &catalog()?)
        }
        Command::Desatellite { tree, edge } => commands::desatellite_cmd(r, tree, edge, &catalog()?),
        Command::Validate { tree, plen, rank } => commands::validate_cmd(r, tree, *plen, *rank, &catalog()?, &ctx),
        Command::Winding { tree, node } => commands::winding(r, tree, node),
        Command::Bounds { plen, vol, eps } => commands::bounds(r, *plen, vol.as_deref(), eps.as_deref(), &ctx),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = Report::new(cli.command.name());
    let code = match run(&cli, &mut report) {
        Ok(()) => 0,
        Err(f) => {
            let msg = match &f {
                Failure::Input(m) | Failure::Certificate(m) => m.clone(),
            };
            eprintln!("knotcalc {}: {msg}", report.command);
            report.fail(&f);
            f.exit_code()
        }
    };
    let text = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    // a closed pipe downstream is not an error of ours
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(code as u8)
}
