use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyplevy::params::HypParams;

#[derive(Debug, Parser)]
#[command(name = "hyplevy", version, about = "Hypergeometric Lévy processes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Classify the parameters and report η, killing rate and variation
    Validate(Common),
    /// ψ(iθ) over a grid of θ
    Exponent(Common),
    /// Roots and poles of ψ with an interlacing verdict
    Lattice(Common),
    /// Wiener–Hopf factors, their values on a λ grid and Bernstein tests
    Factors(Common),
    /// Lévy density in closed form and as an exponential mixture
    Density(Common),
    /// Ascending ladder height density and potential density (A4 only)
    Ladder(Common),
    /// Run every identity check
    Check(Common),
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Validate(c)
            | Command::Exponent(c)
            | Command::Lattice(c)
            | Command::Factors(c)
            | Command::Density(c)
            | Command::Ladder(c)
            | Command::Check(c) => c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct Common {
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: f64,
    #[arg(long = "beta-hat", allow_hyphen_values = true)]
    pub beta_hat: f64,
    #[arg(long = "gamma-hat", allow_hyphen_values = true)]
    pub gamma_hat: f64,
    #[arg(long = "grid-min", allow_hyphen_values = true)]
    pub grid_min: Option<f64>,
    #[arg(long = "grid-max", allow_hyphen_values = true)]
    pub grid_max: Option<f64>,
    #[arg(long = "grid-points")]
    pub grid_points: Option<usize>,
    /// Truncation order of series and lattices
    #[arg(long, env = "HYPLEVY_TERMS", default_value_t = 200)]
    pub terms: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Common {
    pub fn params(&self) -> HypParams {
        HypParams::raw(self.beta, self.gamma, self.beta_hat, self.gamma_hat)
    }

    /// The requested grid, filling unset bounds from the subcommand's
    /// default.
    pub fn grid(&self, default: (f64, f64, usize)) -> Result<Vec<f64>, String> {
        let lo = self.grid_min.unwrap_or(default.0);
        let hi = self.grid_max.unwrap_or(default.1);
        let n = self.grid_points.unwrap_or(default.2);
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(format!(
                "grid bounds must satisfy min < max, got [{lo}, {hi}]"
            ));
        }
        if n < 2 {
            return Err(format!("grid needs at least 2 points, got {n}"));
        }
        Ok((0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect())
    }
}
