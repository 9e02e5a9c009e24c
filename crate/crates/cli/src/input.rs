//! `--field` parsing: a path or inline JSON, normalized or raw.

use num_complex::Complex64;
use qvf_core::field::{normalize, FieldParams, Form, Transform};
use serde_json::Value;

use crate::CliError;

/// A field as given on the command line.
#[derive(Clone, Copy, Debug)]
pub enum FieldInput {
    /// Carries `form`; validated, never renormalized.
    Normalized(FieldParams),
    /// `μ, A, B, C` in any position.
    Raw { mu: Complex64, a: Complex64, b: Complex64, c: Complex64 },
}

impl FieldInput {
    pub fn raw_parts(&self) -> (Complex64, Complex64, Complex64, Complex64) {
        match *self {
            FieldInput::Normalized(f) => (f.mu(), f.a, f.b, f.c),
            FieldInput::Raw { mu, a, b, c } => (mu, a, b, c),
        }
    }

    /// The normalized field and the transform that produced it.
    pub fn resolve(&self) -> Result<(FieldParams, Transform), CliError> {
        match *self {
            FieldInput::Normalized(f) => Ok((f, Transform::IDENTITY)),
            FieldInput::Raw { mu, a, b, c } => normalize(mu, a, b, c).map_err(|e| CliError::input(e.to_string())),
        }
    }
}

fn complex(v: &Value, name: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::input(format!("{name}: expected a number, [re, im] or {{\"re\", \"im\"}}"));
    let num = |x: &Value| x.as_f64().ok_or_else(bad);
    match v {
        Value::Number(_) => Ok(Complex64::new(num(v)?, 0.0)),
        Value::Array(xs) if xs.len() == 2 => Ok(Complex64::new(num(&xs[0])?, num(&xs[1])?)),
        Value::Object(m) => {
            let re = m.get("re").map(num).transpose()?.unwrap_or(0.0);
            let im = m.get("im").map(num).transpose()?.unwrap_or(0.0);
            Ok(Complex64::new(re, im))
        }
        _ => Err(bad()),
    }
}

fn form(s: &str) -> Result<Form, CliError> {
    match s {
        "N1" => Ok(Form::N1),
        "N2" => Ok(Form::N2),
        "N3" => Ok(Form::N3),
        "Linear" => Ok(Form::Linear),
        _ => Err(CliError::input(format!("unknown form {s:?}"))),
    }
}

pub fn parse_field(spec: &str) -> Result<FieldInput, CliError> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        std::fs::read_to_string(spec).map_err(|e| CliError::input(format!("cannot read {spec}: {e}")))?
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::input(format!("field JSON: {e}")))?;
    let obj = v.as_object().ok_or_else(|| CliError::input("field JSON must be an object"))?;
    let get = |k: &str| -> Result<Complex64, CliError> {
        obj.get(k).map(|x| complex(x, k)).unwrap_or(Ok(Complex64::new(0.0, 0.0)))
    };
    let (a, b, c) = (get("A")?, get("B")?, get("C")?);
    let lambda1 = obj.get("lambda1").map(|x| x.as_f64().ok_or_else(|| CliError::input("lambda1 must be a number"))).transpose()?;
    let mu = match (obj.get("mu"), lambda1) {
        (Some(m), None) => complex(m, "mu")?,
        (None, Some(l)) => Complex64::new(l, 1.0),
        (None, None) => return Err(CliError::input("field needs lambda1 or mu")),
        (Some(_), Some(_)) => return Err(CliError::input("give lambda1 or mu, not both")),
    };
    match obj.get("form") {
        Some(f) => {
            let f = form(f.as_str().ok_or_else(|| CliError::input("form must be a string"))?)?;
            let l = lambda1.ok_or_else(|| CliError::input("a field with a form needs lambda1"))?;
            FieldParams::new(l, a, b, c, f).map(FieldInput::Normalized).map_err(|e| CliError::input(e.to_string()))
        }
        None => Ok(FieldInput::Raw { mu, a, b, c }),
    }
}
