//! `qvf`: reproducible analyses of quadratic vector fields, one JSON
//! document per run on standard output.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "qvf", version, about = "Quadratic vector fields: normal forms, Poincaré map, Bautin jet and cycle-count bounds")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Field as a JSON file path or inline JSON.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, global = true, default_value_t = 0.1)]
    pub sigma: f64,
    #[arg(long, global = true, default_value_t = 0.1)]
    pub kappa: f64,
    /// Relative tolerance of the integrator.
    #[arg(long = "tol-rel", global = true, default_value_t = 1e-10)]
    pub tol_rel: f64,
    /// Absolute tolerance of the integrator.
    #[arg(long = "tol-abs", global = true, default_value_t = 1e-12)]
    pub tol_abs: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Trajectory CSV output path.
    #[arg(long, global = true)]
    pub csv: Option<String>,
    /// Significant digits of the high-precision evaluations.
    #[arg(long, global = true, default_value_t = 50)]
    pub digits: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bring a field to one of the normal forms N1, N2, N3.
    Normalize,
    /// Center conditions g1..g4 and the distance to the center set.
    Centers,
    /// Singular points and the singular-field decomposition.
    Singular,
    /// Limit cycles on the positive x-semiaxis and their tameness.
    Cycles {
        #[arg(long = "x-min", default_value_t = qvf_core::poincare::DEFAULT_X_MIN)]
        x_min: f64,
        #[arg(long = "grid-points", default_value_t = qvf_core::poincare::DEFAULT_GRID_POINTS)]
        grid_points: usize,
    },
    /// Symbolic 7-jet of the Poincaré map.
    Bautin {
        #[command(subcommand)]
        action: BautinAction,
    },
    /// Slopes along the strip below the zero isocline.
    GapCheck,
    /// Every constant of the cycle-count bound.
    Bound {
        /// δ σ κ.
        #[arg(long, num_args = 3, value_names = ["DELTA", "SIGMA", "KAPPA"])]
        at: Option<Vec<f64>>,
    },
    /// ln(M/m)·exp(2D/ε).
    ZeroBound {
        #[arg(long = "max")]
        big_m: f64,
        #[arg(long = "min")]
        small_m: f64,
        #[arg(long)]
        diameter: f64,
        #[arg(long)]
        eps: f64,
    },
    /// All seeded property suites.
    Selftest,
}

#[derive(Debug, Subcommand)]
pub enum BautinAction {
    /// Check the printed decomposition and constants.
    Verify,
    /// Print a1..a7.
    Jet,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
    pub details: Value,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: 2, kind: "InvalidInput", message: message.into(), details: Value::Null }
    }

    pub fn numerical(kind: &'static str, message: impl Into<String>, details: Value) -> Self {
        Self { code: 3, kind, message: message.into(), details }
    }

    fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind, "message": self.message, "details": self.details } })
    }
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            emit(&CliError::input(e.to_string()).to_json());
            return ExitCode::from(2);
        }
    };
    match commands::run(&cli) {
        Ok((v, code)) => {
            emit(&v);
            ExitCode::from(code)
        }
        Err(e) => {
            emit(&e.to_json());
            ExitCode::from(e.code)
        }
    }
}
