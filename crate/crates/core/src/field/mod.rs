//! Quadratic vector fields `ż = μz + Az² + Bz z̄ + C z̄²` with `μ = λ₁ + i`.

mod normalize;
mod singular;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::FieldError;

pub use normalize::{normalize, Transform};
pub use singular::{singular_points, SingularPoint, SingularPointSet, TameRegion, SINGULAR_TOL};

/// Slack allowed on the modulus bounds of the normalized forms, absorbing
/// rounding in the normalizing rescale.
pub const FORM_BOUND_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Form {
    /// `A = 1`, `|B| ≤ 2`, `|C| ≤ 1`.
    N1,
    /// `B = 2`, `|A| ≤ 1`, `|C| ≤ 1`.
    N2,
    /// `C = 1`, `|A| ≤ 1`, `|B| ≤ 2`.
    N3,
    /// `A = B = C = 0`.
    Linear,
}

impl Form {
    pub fn name(self) -> &'static str {
        match self {
            Form::N1 => "N1",
            Form::N2 => "N2",
            Form::N3 => "N3",
            Form::Linear => "Linear",
        }
    }
}

/// A normalized field `λ = (λ₁, A, B, C)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldParams {
    pub lambda1: f64,
    #[serde(rename = "A")]
    pub a: Complex64,
    #[serde(rename = "B")]
    pub b: Complex64,
    #[serde(rename = "C")]
    pub c: Complex64,
    pub form: Form,
}

fn check_finite(name: &str, z: Complex64) -> Result<(), FieldError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(FieldError::InvalidInput(format!("{name} is not finite")))
    }
}

impl FieldParams {
    /// Validates the invariants of `form`.
    pub fn new(lambda1: f64, a: Complex64, b: Complex64, c: Complex64, form: Form) -> Result<Self, FieldError> {
        if !lambda1.is_finite() || lambda1 < 0.0 {
            return Err(FieldError::InvalidInput(format!("lambda1 must be finite and nonnegative, got {lambda1}")));
        }
        check_finite("A", a)?;
        check_finite("B", b)?;
        check_finite("C", c)?;
        let bad = |reason: String| Err(FieldError::InvalidForm { form: form.name(), reason });
        let within = |z: Complex64, r: f64| z.norm() <= r * (1.0 + FORM_BOUND_SLACK);
        match form {
            Form::N1 => {
                if a != Complex64::new(1.0, 0.0) {
                    return bad(format!("A must equal 1, got {a}"));
                }
                if !within(b, 2.0) || !within(c, 1.0) {
                    return bad("need |B| <= 2 and |C| <= 1".into());
                }
            }
            Form::N2 => {
                if b != Complex64::new(2.0, 0.0) {
                    return bad(format!("B must equal 2, got {b}"));
                }
                if !within(a, 1.0) || !within(c, 1.0) {
                    return bad("need |A| <= 1 and |C| <= 1".into());
                }
            }
            Form::N3 => {
                if c != Complex64::new(1.0, 0.0) {
                    return bad(format!("C must equal 1, got {c}"));
                }
                if !within(a, 1.0) || !within(b, 2.0) {
                    return bad("need |A| <= 1 and |B| <= 2".into());
                }
            }
            Form::Linear => {
                let zero = Complex64::new(0.0, 0.0);
                if a != zero || b != zero || c != zero {
                    return bad("quadratic coefficients must vanish".into());
                }
            }
        }
        Ok(Self { lambda1, a, b, c, form })
    }

    pub fn linear(lambda1: f64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self { lambda1, a: z, b: z, c: z, form: Form::Linear }
    }

    /// `μ = λ₁ + i`.
    pub fn mu(&self) -> Complex64 {
        Complex64::new(self.lambda1, 1.0)
    }

    /// Same coefficients with a different `λ₁`.
    pub fn with_lambda1(&self, lambda1: f64) -> Self {
        Self { lambda1, ..*self }
    }

    /// `ż` at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zc = z.conj();
        self.mu() * z + self.a * z * z + self.b * z * zc + self.c * zc * zc
    }
}

/// `g₁ … g₄` of the center conditions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CenterResiduals {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub g4: f64,
}

impl CenterResiduals {
    pub fn as_array(&self) -> [f64; 4] {
        [self.g1, self.g2, self.g3, self.g4]
    }
}

/// `(g₂, g₃, g₄)` as functions of the quadratic coefficients alone.
pub fn center_polynomials(a: Complex64, b: Complex64, c: Complex64) -> [f64; 3] {
    let bc = b.conj();
    let p = 2.0 * a + bc;
    let g2 = (a * b).im;
    let g3 = (p * (a - 2.0 * bc) * bc * c).im;
    let g4 = (p * (b.norm_sqr() - c.norm_sqr()) * bc * bc * c).im;
    [g2, g3, g4]
}

pub fn center_residuals(field: &FieldParams) -> CenterResiduals {
    let [g2, g3, g4] = center_polynomials(field.a, field.b, field.c);
    CenterResiduals { g1: field.lambda1, g2, g3, g4 }
}

/// `Σ |g_j|`; the field is σ-distant from centers iff this is at least σ.
pub fn sigma_distance(field: &FieldParams) -> f64 {
    center_residuals(field).as_array().iter().map(|g| g.abs()).sum()
}

/// `v = v_s + u` with `v_s = μz + z² + (μ/μ̄) z z̄` and `u = b z z̄ + c z̄²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularDecomposition {
    pub b: Complex64,
    pub c: Complex64,
    pub kappa_distance: f64,
}

pub fn singular_decomposition(field: &FieldParams) -> Result<SingularDecomposition, FieldError> {
    if field.a != Complex64::new(1.0, 0.0) {
        return Err(FieldError::FormMismatch);
    }
    let mu = field.mu();
    let b = field.b - mu / mu.conj();
    let c = field.c;
    Ok(SingularDecomposition { b, c, kappa_distance: (b.norm_sqr() + c.norm_sqr()).sqrt() })
}

/// Coefficients `(A, B, C)` of `v_s + u` for the given `μ`, `b`, `c`.
pub fn reassemble(mu: Complex64, b: Complex64, c: Complex64) -> (Complex64, Complex64, Complex64) {
    (Complex64::new(1.0, 0.0), mu / mu.conj() + b, c)
}

/// `h = A e^{iθ} + B e^{−iθ} + C e^{−3iθ}` with `f = Re h`, `g = Im h`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarData {
    pub h: Complex64,
    pub f: f64,
    pub g: f64,
}

pub fn polar_data(field: &FieldParams, theta: f64) -> PolarData {
    let h = polar_h(field.a, field.b, field.c, theta);
    PolarData { h, f: h.re, g: h.im }
}

pub(crate) fn polar_h(a: Complex64, b: Complex64, c: Complex64, theta: f64) -> Complex64 {
    let e1 = Complex64::from_polar(1.0, theta);
    let em1 = e1.conj();
    a * e1 + b * em1 + c * em1 * em1 * em1
}

/// False when `λ₁ > 4/δ`, in which case no cycle of the tame region exists.
pub fn lambda1_gate(field: &FieldParams, delta: f64) -> bool {
    field.lambda1 <= 4.0 / delta
}

pub fn in_tame_region(field: &FieldParams, delta: f64, z: Complex64) -> bool {
    TameRegion::new(field, delta).contains(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn residuals_of_real_center() {
        let f = FieldParams::new(0.0, c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), Form::N1).unwrap();
        assert_eq!(center_residuals(&f).as_array(), [0.0; 4]);
        assert_eq!(sigma_distance(&f), 0.0);
    }

    #[test]
    fn residuals_by_hand() {
        // A = i, B = 1, C = 1: g2 = Im(i) = 1, g3 = Im((2i+1)(i-2)) = Im(-4-3i) = -3
        let [g2, g3, g4] = center_polynomials(c(0.0, 1.0), c(1.0, 0.0), c(1.0, 0.0));
        assert_eq!(g2, 1.0);
        assert_eq!(g3, -3.0);
        assert_eq!(g4, 0.0);
        let f = FieldParams::new(0.5, c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), Form::N1).unwrap();
        assert_eq!(center_residuals(&f).g1, 0.5);
        assert_eq!(sigma_distance(&f), 0.5);
    }

    #[test]
    fn form_invariants_enforced() {
        assert!(FieldParams::new(0.0, c(1.0, 0.0), c(2.5, 0.0), c(0.0, 0.0), Form::N1).is_err());
        assert!(FieldParams::new(0.0, c(0.9, 0.0), c(0.0, 0.0), c(0.0, 0.0), Form::N1).is_err());
        assert!(FieldParams::new(-0.1, c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), Form::N1).is_err());
        assert!(FieldParams::new(0.0, c(0.5, 0.5), c(2.0, 0.0), c(0.0, -1.0), Form::N2).is_ok());
        assert!(FieldParams::new(0.0, c(0.0, 0.0), c(0.0, 0.0), c(0.1, 0.0), Form::Linear).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let mu = c(0.0, 1.0);
        let vs = FieldParams::new(0.0, c(1.0, 0.0), mu / mu.conj(), c(0.0, 0.0), Form::N1).unwrap();
        assert_eq!(singular_decomposition(&vs).unwrap().kappa_distance, 0.0);

        let f = FieldParams::new(0.0, c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), Form::N1).unwrap();
        let d = singular_decomposition(&f).unwrap();
        assert_eq!(d.b, c(1.0, 0.0));
        assert_eq!(d.kappa_distance, 1.0);

        let f = FieldParams::new(1.0, c(1.0, 0.0), c(0.3, 0.0), c(0.0, 0.4), Form::N1).unwrap();
        let d = singular_decomposition(&f).unwrap();
        // (1+i)/(1-i) = i
        assert!((d.b - c(0.3, -1.0)).norm() < 1e-15);
        assert!((d.kappa_distance - (0.09f64 + 1.0 + 0.16).sqrt()).abs() < 1e-15);

        let n2 = FieldParams::new(0.0, c(0.5, 0.0), c(2.0, 0.0), c(0.0, 0.0), Form::N2).unwrap();
        assert_eq!(singular_decomposition(&n2), Err(FieldError::FormMismatch));
    }

    #[test]
    fn polar_examples() {
        let f = FieldParams::new(0.0, c(1.0, 0.0), c(0.3, 0.2), c(-0.1, 0.5), Form::N1).unwrap();
        let p = polar_data(&f, 0.0);
        assert!((p.h - (f.a + f.b + f.c)).norm() < 1e-15);
        let unit = FieldParams::new(0.0, c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), Form::N1).unwrap();
        for t in [0.3, 1.7, 4.0] {
            let p = polar_data(&unit, t);
            assert!((p.f - t.cos()).abs() < 1e-15 && (p.g - t.sin()).abs() < 1e-15);
        }
    }

    #[test]
    fn gate() {
        let f = FieldParams::linear(41.0);
        assert!(!lambda1_gate(&f, 0.1));
        assert!(lambda1_gate(&f.with_lambda1(40.0), 0.1));
        assert!(lambda1_gate(&f.with_lambda1(0.0), 1e-9));
    }
}
