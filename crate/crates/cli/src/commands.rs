use serde_json::{json, Value};

use qvf_core::bautin::{jet, verify_appendix, verify_splitting_constants};
use qvf_core::bounds::{bound_report, zero_bound};
use qvf_core::error::{BautinError, BoundsError, PoincareError};
use qvf_core::field::{center_residuals, normalize, sigma_distance, singular_decomposition, singular_points, FieldParams, SINGULAR_TOL};
use qvf_core::poincare::{find_cycles, integrate, strip_gap_check, IntegratorOptions};
use qvf_core::selftest::run_all;

use crate::input::{parse_field, FieldInput};
use crate::{BautinAction, Cli, CliError, Command, GlobalOpts};

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

impl From<PoincareError> for CliError {
    fn from(e: PoincareError) -> Self {
        let message = e.to_string();
        match e {
            PoincareError::SingularCrossing { theta, denominator } => {
                CliError::numerical("SingularCrossing", message, json!({ "theta": theta, "denominator": denominator }))
            }
            PoincareError::Escape { theta, modulus } => {
                CliError::numerical("Escape", message, json!({ "theta": theta, "modulus": modulus }))
            }
            PoincareError::StepFailure { theta, step } => {
                CliError::numerical("StepFailure", message, json!({ "theta": theta, "step": step }))
            }
            PoincareError::Precondition(_) | PoincareError::Field(_) => CliError::input(message),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<BautinError> for CliError {
    fn from(e: BautinError) -> Self {
        CliError::numerical("Bautin", e.to_string(), Value::Null)
    }
}

fn field_input(opts: &GlobalOpts) -> Result<FieldInput, CliError> {
    let spec = opts.field.as_deref().ok_or_else(|| CliError::input("this command needs --field"))?;
    parse_field(spec)
}

fn field(opts: &GlobalOpts) -> Result<FieldParams, CliError> {
    Ok(field_input(opts)?.resolve()?.0)
}

/// `x ∈ (0, 0.1]`.
fn small_parameter(name: &str, x: f64) -> Result<f64, CliError> {
    if x > 0.0 && x <= 0.1 {
        Ok(x)
    } else {
        Err(CliError::input(format!("{name} must lie in (0, 0.1], got {x}")))
    }
}

fn integrator(opts: &GlobalOpts) -> Result<IntegratorOptions, CliError> {
    if !(opts.tol_rel > 0.0 && opts.tol_abs > 0.0) {
        return Err(CliError::input("tolerances must be positive"));
    }
    let delta = small_parameter("delta", opts.delta)?;
    Ok(IntegratorOptions { rel_tol: opts.tol_rel, abs_tol: opts.tol_abs, ..IntegratorOptions::for_delta(delta) })
}

/// The JSON document and the exit code.
pub fn run(cli: &Cli) -> Result<(Value, u8), CliError> {
    let o = &cli.opts;
    let out = match &cli.command {
        Command::Normalize => {
            let (mu, a, b, c) = field_input(o)?.raw_parts();
            let (f, t) = normalize(mu, a, b, c).map_err(|e| CliError::input(e.to_string()))?;
            json!({ "field": f, "transform": t })
        }
        Command::Centers => {
            let f = field(o)?;
            json!({ "field": f, "g": center_residuals(&f).as_array(), "sigma_distance": sigma_distance(&f) })
        }
        Command::Singular => {
            let f = field(o)?;
            let set = singular_points(&f, SINGULAR_TOL).map_err(|e| CliError::input(e.to_string()))?;
            json!({ "field": f, "singular_points": set, "decomposition": singular_decomposition(&f).ok() })
        }
        Command::Cycles { x_min, grid_points } => {
            let f = field(o)?;
            let io = integrator(o)?;
            let search = find_cycles(&f, o.delta, *x_min, *grid_points, &io)?;
            let mut doc = json!({ "field": f, "delta": o.delta, "search": search, "csv": Value::Null });
            if let Some(path) = &o.csv {
                let x = search.outermost_tame.or_else(|| search.cycles.first().map(|c| c.x_star));
                if let Some(x) = x {
                    let traj = integrate(&f, num_complex::Complex64::new(x, 0.0), &IntegratorOptions { record: true, ..io })?;
                    std::fs::write(path, traj.to_csv()).map_err(|e| CliError::input(format!("cannot write {path}: {e}")))?;
                    doc["csv"] = json!({ "path": path, "x_star": x, "samples": traj.samples.len() });
                }
            }
            doc
        }
        Command::Bautin { action: BautinAction::Verify } => {
            let report = verify_appendix()?;
            let splitting = verify_splitting_constants(2e-8, 1e-5, 5e-4);
            let pass = report.exact_pass()
                && report.constants.constants.iter().all(|c| c.pass)
                && splitting.alpha_condition_pass
                && splitting.beta_condition_pass
                && splitting.ordering_holds;
            json!({ "exact_pass": report.exact_pass(), "pass": pass, "decomposition": report, "splitting": splitting })
        }
        Command::Bautin { action: BautinAction::Jet } => {
            let j = jet();
            let coeffs: serde_json::Map<String, Value> =
                j.a.iter().enumerate().map(|(i, p)| (format!("a{}", i + 1), Value::String(p.to_string()))).collect();
            json!({ "lambda1": 0.0, "coefficients": coeffs })
        }
        Command::GapCheck => {
            let f = field(o)?;
            let delta = small_parameter("delta", o.delta)?;
            let kappa = small_parameter("kappa", o.kappa)?;
            json!({ "field": f, "report": strip_gap_check(&f, delta, kappa)? })
        }
        Command::Bound { at } => {
            let (d, s, k) = match at.as_deref() {
                Some(&[d, s, k]) => (d, s, k),
                _ => (o.delta, o.sigma, o.kappa),
            };
            if o.digits < 10 || o.digits > 10_000 {
                return Err(CliError::input("digits must lie in [10, 10000]"));
            }
            to_value(&bound_report(d, s, k, o.digits)?)
        }
        Command::ZeroBound { big_m, small_m, diameter, eps } => {
            let b = zero_bound(*big_m, *small_m, *diameter, *eps)?;
            json!({ "M": big_m, "m": small_m, "D": diameter, "eps": eps, "bound": b })
        }
        Command::Selftest => {
            let r = run_all(o.seed);
            let code = if r.pass { 0 } else { 3 };
            return Ok((to_value(&r), code));
        }
    };
    Ok((out, 0))
}
