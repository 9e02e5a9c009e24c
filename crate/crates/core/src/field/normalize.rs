//! Reduction of a raw quadratic focus to one of the three normal forms.
//!
//! The rescale `z ↦ cz`, `t ↦ c't` maps `(μ, A, B, C)` to
//! `(c'μ, c'cA, c'c̄B, c'(c̄²/c)C)`. If the resulting `λ₁` is negative, the
//! flip `z ↦ z̄`, `t ↦ −t` then maps `(μ, A, B, C)` to `(−μ̄, −Ā, −B̄, −C̄)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{FieldParams, Form};
use crate::error::FieldError;

/// The rescale and optional flip that take the input field to the output.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transform {
    pub c: Complex64,
    pub c_prime: f64,
    pub conjugated: bool,
    pub time_reversed: bool,
}

impl Transform {
    pub const IDENTITY: Transform =
        Transform { c: Complex64 { re: 1.0, im: 0.0 }, c_prime: 1.0, conjugated: false, time_reversed: false };

    /// Image of `(μ, A, B, C)` under the transform.
    pub fn apply(
        &self,
        mu: Complex64,
        a: Complex64,
        b: Complex64,
        c: Complex64,
    ) -> (Complex64, Complex64, Complex64, Complex64) {
        let k = self.c;
        let kc = k.conj();
        let s = self.c_prime;
        let out = (s * mu, s * k * a, s * kc * b, s * (kc * kc / k) * c);
        if self.conjugated {
            (-out.0.conj(), -out.1.conj(), -out.2.conj(), -out.3.conj())
        } else {
            out
        }
    }
}

fn exact_form(a: Complex64, b: Complex64, c: Complex64) -> Option<Form> {
    let one = Complex64::new(1.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let (na, nb, nc) = (a.norm(), b.norm(), c.norm());
    if a == zero && b == zero && c == zero {
        Some(Form::Linear)
    } else if a == one && nb <= 2.0 && nc <= 1.0 {
        Some(Form::N1)
    } else if b == two && na <= 1.0 && nc <= 1.0 {
        Some(Form::N2)
    } else if c == one && na <= 1.0 && nb <= 2.0 {
        Some(Form::N3)
    } else {
        None
    }
}

/// Normalizes `μ z + A z² + B z z̄ + C z̄²`.
///
/// The form is picked by the largest of `|A|`, `|B|/2`, `|C|` (ties go to
/// N1, then N2). A field that already satisfies some form exactly is
/// returned unchanged, which makes the map idempotent.
pub fn normalize(
    mu_raw: Complex64,
    a_raw: Complex64,
    b_raw: Complex64,
    c_raw: Complex64,
) -> Result<(FieldParams, Transform), FieldError> {
    for (name, z) in [("mu", mu_raw), ("A", a_raw), ("B", b_raw), ("C", c_raw)] {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(FieldError::InvalidInput(format!("{name} is not finite")));
        }
    }
    if mu_raw.im == 0.0 {
        return Err(FieldError::ZeroImaginaryPart);
    }
    let c_prime = 1.0 / mu_raw.im;
    let lambda1_scaled = c_prime * mu_raw.re;
    let flip = lambda1_scaled < 0.0;
    let lambda1 = lambda1_scaled.abs();

    let scaled = |z: Complex64| if flip { -(c_prime * z).conj() } else { c_prime * z };
    let (aw, bw, cw) = (scaled(a_raw), scaled(b_raw), scaled(c_raw));

    let finish = |a, b, c, form, k: Complex64| -> Result<(FieldParams, Transform), FieldError> {
        let params = FieldParams::new(lambda1, a, b, c, form)?;
        // a rescale applied after the flip equals one with conj(c) applied before it
        let c_rec = if flip { k.conj() } else { k };
        Ok((params, Transform { c: c_rec, c_prime, conjugated: flip, time_reversed: flip }))
    };
    let unit = Complex64::new(1.0, 0.0);

    if let Some(form) = exact_form(aw, bw, cw) {
        return finish(aw, bw, cw, form, unit);
    }

    let (na, nb, nc) = (aw.norm(), bw.norm() / 2.0, cw.norm());
    if na >= nb && na >= nc {
        let k = unit / aw;
        let kc = k.conj();
        finish(unit, kc * bw, (kc * kc / k) * cw, Form::N1, k)
    } else if nb >= nc {
        let k = (Complex64::new(2.0, 0.0) / bw).conj();
        let kc = k.conj();
        finish(k * aw, Complex64::new(2.0, 0.0), (kc * kc / k) * cw, Form::N2, k)
    } else {
        // ρ e^{−3iφ} C = 1 with c = ρ e^{iφ}
        let k = Complex64::from_polar(1.0 / cw.norm(), cw.arg() / 3.0);
        let kc = k.conj();
        finish(k * aw, kc * bw, unit, Form::N3, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(x: Complex64, y: Complex64) -> bool {
        (x - y).norm() <= 1e-12 * (1.0 + y.norm())
    }

    #[test]
    fn halves_large_a() {
        let (f, t) = normalize(c(0.0, 1.0), c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(f.form, Form::N1);
        assert_eq!(f.lambda1, 0.0);
        assert_eq!(f.a, c(1.0, 0.0));
        assert_eq!(t.c, c(0.5, 0.0));
        assert_eq!(t.c_prime, 1.0);
    }

    #[test]
    fn identity_on_normal_form() {
        let (f, t) = normalize(c(0.0, 1.0), c(1.0, 0.0), c(1.0, 0.0), c(0.5, 0.0)).unwrap();
        assert_eq!(t, Transform::IDENTITY);
        assert_eq!((f.a, f.b, f.c), (c(1.0, 0.0), c(1.0, 0.0), c(0.5, 0.0)));
    }

    #[test]
    fn negative_lambda_is_flipped() {
        let (f, t) = normalize(c(-1.0, 1.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(f.lambda1, 1.0);
        assert!(t.conjugated && t.time_reversed);
        let (mu, a, b, cc) = t.apply(c(-1.0, 1.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert!(close(mu, f.mu()) && close(a, f.a) && close(b, f.b) && close(cc, f.c));
    }

    #[test]
    fn flow_is_conjugated_and_reversed() {
        // with z = c·ū and t ↦ −c'·t the flipped field must equal −conj(v(z)/c)·c'
        let raw = (c(-0.4, 1.3), c(0.2, -0.7), c(1.1, 0.3), c(-0.2, 0.9));
        let (_, t) = normalize(raw.0, raw.1, raw.2, raw.3).unwrap();
        assert!(t.conjugated);
        let v = |z: Complex64| raw.0 * z + raw.1 * z * z + raw.2 * z * z.conj() + raw.3 * z.conj() * z.conj();
        let (mu, a, b, cc) = t.apply(raw.0, raw.1, raw.2, raw.3);
        for u in [c(0.3, 0.1), c(-0.2, 0.5)] {
            let lhs = mu * u + a * u * u + b * u * u.conj() + cc * u.conj() * u.conj();
            let z = t.c * u.conj();
            let rhs = -(t.c_prime * v(z) / t.c).conj();
            assert!(close(lhs, rhs), "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn zero_imaginary_part_rejected() {
        assert_eq!(normalize(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)), Err(FieldError::ZeroImaginaryPart));
    }

    #[test]
    fn all_zero_is_linear() {
        let (f, _) = normalize(c(0.2, 2.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(f.form, Form::Linear);
        assert!((f.lambda1 - 0.1).abs() < 1e-16);
    }

    #[test]
    fn each_form_reached() {
        let cases = [
            ((c(3.0, 1.0), c(0.1, 0.2), c(0.2, 0.1)), Form::N1),
            ((c(0.1, 0.2), c(-1.0, 3.0), c(0.2, 0.1)), Form::N2),
            ((c(0.1, 0.2), c(0.3, 0.1), c(-2.0, -2.0)), Form::N3),
        ];
        for ((a, b, cc), form) in cases {
            let mu = c(0.3, -2.0);
            let (f, t) = normalize(mu, a, b, cc).unwrap();
            assert_eq!(f.form, form);
            let (mu2, a2, b2, c2) = t.apply(mu, a, b, cc);
            assert!(close(mu2, f.mu()) && close(a2, f.a) && close(b2, f.b) && close(c2, f.c));
        }
    }
}
