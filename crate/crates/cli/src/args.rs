use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dhoa::Family;

#[derive(Debug, Parser)]
#[command(
    name = "dhoa",
    version,
    about = "Deformed Heisenberg algebra and deformed oscillator toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Family tag: A, B, C, D or a tilded two-parameter form (A~, B~, C~, D~).
    #[arg(long, global = true, default_value = "A")]
    pub family: Family,

    /// Deformation parameter q.
    #[arg(long, global = true)]
    pub q: Option<f64>,

    /// Second deformation parameter p (two-parameter families only).
    #[arg(long, global = true)]
    pub p: Option<f64>,

    /// Largest level index in tabular output.
    #[arg(long, global = true, default_value_t = 100)]
    pub n_max: usize,

    /// Truncated Fock space dimension.
    #[arg(long, global = true, default_value_t = 30)]
    pub dim: usize,

    /// Tolerance for verification and root bracketing.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Closed,
    Recipe,
    Symmetrized,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the structure function Φ(n).
    Dsf {
        /// Emit Φ for families A, B and C at q = 1.015, n = 0..100 (overrides --family, --q, --n-max).
        #[arg(long)]
        fig1: bool,

        /// Evaluation route; defaults to the closed form.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
    /// Tabulate energies E(n) = (Φ(n+1) + Φ(n)) / 2.
    Spectrum {
        /// Emit the ground-state energies of A, B, C, D at q instead of the spectrum.
        #[arg(long)]
        ground_state: bool,
    },
    /// Check the algebra relations on a truncated Fock space.
    Verify {
        /// Scale every Φ(n) by (1 + ε) before building the representation.
        #[arg(long, value_name = "EPS")]
        perturb: Option<f64>,
    },
    /// Find q where E(n) = E(m).
    Degeneracy {
        #[arg(long)]
        n: usize,

        #[arg(long)]
        m: usize,

        /// Search interval as lo:hi.
        #[arg(long, value_parser = parse_range, default_value = "1.001:1.5")]
        q_range: (f64, f64),
    },
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(lo)?, parse(hi)?))
}
