//! Double-double Taylor integration of the radial equation, for displacement
//! values far below the double-precision floor.
//!
//! The turn is split into `PRECISE_STEPS` equal steps. On each step the
//! series of `f` and `g` come from the exponentials `e^{ikθ}`, and the series
//! of `w` from `(1 + wg)·w' = λ₁w + w²f`, solved order by order.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use serde::Serialize;
use twofloat::TwoFloat;

use super::{admissible_radius, gronwall_lipschitz, TWO_PI};
use crate::bautin::JetCoefficients;
use crate::error::PoincareError;
use crate::field::FieldParams;
use num_complex::Complex64;

pub type DdComplex = Complex<TwoFloat>;

/// Number of equal steps per turn.
pub const PRECISE_STEPS: usize = 64;
const MAX_ORDER: usize = 80;
const TERM_TOL: f64 = 1e-34;

fn dd(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

fn cdd(z: Complex64) -> DdComplex {
    Complex::new(dd(z.re), dd(z.im))
}

/// `a/b` by two correction steps; the division operator of `TwoFloat` loses
/// the low word when the quotient is inexact.
pub fn dd_div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    TwoFloat::new_add(q1, q2) + q3
}

fn cdiv(a: DdComplex, b: DdComplex) -> DdComplex {
    let den = b.re * b.re + b.im * b.im;
    let num = a * b.conj();
    Complex::new(dd_div(num.re, den), dd_div(num.im, den))
}

/// `z·m/d` for small integers `m`, `d`.
fn cscale(z: DdComplex, m: f64, d: f64) -> DdComplex {
    Complex::new(z.re * m / d, z.im * m / d)
}

fn cnorm(z: &DdComplex) -> f64 {
    z.re.hi().hypot(z.im.hi())
}

/// `p/q` rounded to double-double.
pub fn ratio_to_dd(r: &BigRational) -> TwoFloat {
    fn int_dd(n: &BigInt) -> TwoFloat {
        let hi = n.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() {
            return dd(hi);
        }
        let rest = n - BigInt::from_f64(hi).expect("finite");
        TwoFloat::new_add(hi, rest.to_f64().unwrap_or(0.0))
    }
    dd_div(int_dd(r.numer()), int_dd(r.denom()))
}

/// `e^{iη}` by its power series.
fn unit_exp(eta: TwoFloat) -> DdComplex {
    let mut term = Complex::new(dd(1.0), dd(0.0));
    let mut sum = term;
    let i_eta = Complex::new(dd(0.0), eta);
    for n in 1..40 {
        term = cscale(term * i_eta, 1.0, n as f64);
        sum = sum + term;
        if cnorm(&term) < 1e-40 {
            break;
        }
    }
    sum
}

/// Taylor coefficients of `f` and `g` at `θ₀` (given `e^{iθ₀}`) up to `order`.
fn fg_series(field: &FieldParams, e1: DdComplex, order: usize) -> (Vec<TwoFloat>, Vec<TwoFloat>) {
    let em1 = e1.conj();
    let em3 = em1 * em1 * em1;
    let parts = [(cdd(field.a) * e1, 1.0), (cdd(field.b) * em1, -1.0), (cdd(field.c) * em3, -3.0)];
    let mut f = Vec::with_capacity(order + 1);
    let mut g = Vec::with_capacity(order + 1);
    let mut cur: Vec<DdComplex> = parts.iter().map(|p| p.0).collect();
    for n in 0..=order {
        let s = cur.iter().fold(Complex::new(dd(0.0), dd(0.0)), |acc, z| acc + *z);
        f.push(s.re);
        g.push(s.im);
        for (z, (_, k)) in cur.iter_mut().zip(parts.iter()) {
            // multiply by ik/(n+1)
            *z = cscale(Complex::new(-z.im, z.re), *k, (n + 1) as f64);
        }
    }
    (f, g)
}

/// One Taylor step of length `h` from `w0` at the angle with `e^{iθ₀} = e1`.
fn taylor_step(field: &FieldParams, lambda1: TwoFloat, w0: DdComplex, e1: DdComplex, h: TwoFloat, theta: f64) -> Result<DdComplex, PoincareError> {
    let zero = Complex::new(dd(0.0), dd(0.0));
    let (f, g) = fg_series(field, e1, MAX_ORDER);
    let mut w = vec![w0];
    let mut w2: Vec<DdComplex> = Vec::new();
    let mut w2f: Vec<DdComplex> = Vec::new();
    let mut den: Vec<DdComplex> = Vec::new();
    let mut q: Vec<DdComplex> = Vec::new();
    let mut hp = dd(1.0);
    let mut sum = w0;
    let mut small = 0;
    for n in 0..MAX_ORDER {
        w2.push((0..=n).fold(zero, |acc, i| acc + w[i] * w[n - i]));
        w2f.push((0..=n).fold(zero, |acc, i| acc + w2[i] * f[n - i]));
        let d = (0..=n).fold(if n == 0 { Complex::new(dd(1.0), dd(0.0)) } else { zero }, |acc, i| acc + w[i] * g[n - i]);
        den.push(d);
        if n == 0 && cnorm(&den[0]) < 1e-6 {
            return Err(PoincareError::SingularCrossing { theta, denominator: cnorm(&den[0]) });
        }
        let num = w[n] * lambda1 + w2f[n];
        let corr = (1..=n).fold(zero, |acc, j| acc + den[j] * q[n - j]);
        let qn = cdiv(num - corr, den[0]);
        q.push(qn);
        let wn1 = cscale(qn, 1.0, (n + 1) as f64);
        w.push(wn1);
        hp = hp * h;
        let term = wn1 * hp;
        sum = sum + term;
        let scale = cnorm(&w0).max(1e-300);
        if cnorm(&term) <= TERM_TOL * scale {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(PoincareError::StepFailure { theta, step: h.hi() })
}

/// `w` at `θ_k = 2πk/steps`, `k = 0 … steps`.
pub fn precise_flow(field: &FieldParams, w0: Complex64, steps: usize) -> Result<Vec<DdComplex>, PoincareError> {
    let two_pi = TwoFloat::from(2.0) * twofloat::consts::PI;
    let h = two_pi / steps as f64;
    let step_exp = unit_exp(h);
    let lambda1 = dd(field.lambda1);
    let mut e1 = Complex::new(dd(1.0), dd(0.0));
    let mut w = cdd(w0);
    let mut out = vec![w];
    for k in 0..steps {
        let theta = TWO_PI * k as f64 / steps as f64;
        w = taylor_step(field, lambda1, w, e1, h, theta)?;
        if !(w.re.hi().is_finite() && w.im.hi().is_finite()) {
            return Err(PoincareError::StepFailure { theta, step: h.hi() });
        }
        out.push(w);
        e1 = e1 * step_exp;
    }
    Ok(out)
}

/// `P(x)` in double-double.
pub fn precise_poincare_map(field: &FieldParams, x: Complex64) -> Result<DdComplex, PoincareError> {
    Ok(*precise_flow(field, x, PRECISE_STEPS)?.last().expect("nonempty"))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JetAgreement {
    pub x_large: f64,
    pub x_small: f64,
    pub e_large: f64,
    pub e_small: f64,
    /// `E(x_large)/E(x_small)`; `(x_large/x_small)⁸` for an `O(x⁸)` remainder.
    pub ratio: f64,
}

fn jet_remainder(field: &FieldParams, jet: &JetCoefficients, x: f64) -> Result<f64, PoincareError> {
    let params = [field.a.re, field.a.im, field.b.re, field.b.im, field.c.re, field.c.im].map(dd);
    let pi = twofloat::consts::PI;
    let p = precise_poincare_map(field, Complex64::new(x, 0.0))?;
    let xd = dd(x);
    let mut series = Complex::new(xd, dd(0.0));
    let mut xp = xd;
    for j in 2..=jet.order() {
        xp = xp * xd;
        let a = jet.get(j).eval_with(&params, pi, ratio_to_dd);
        series = series + a * xp;
    }
    let r = p - series;
    Ok(r.re.hi().hypot(r.im.hi()))
}

/// `E(x) = |P(x) − Σ_{j≤7} a_j x^j|` at `x_large` and `x_small`, for `λ₁ = 0`.
pub fn jet_agreement(field: &FieldParams, jet: &JetCoefficients, x_large: f64, x_small: f64) -> Result<JetAgreement, PoincareError> {
    if field.lambda1 != 0.0 {
        return Err(PoincareError::Precondition("the jet is computed at lambda1 = 0".into()));
    }
    let e_large = jet_remainder(field, jet, x_large)?;
    let e_small = jet_remainder(field, jet, x_small)?;
    Ok(JetAgreement { x_large, x_small, e_large, e_small, ratio: e_large / e_small })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DivergenceReport {
    pub lambda1: f64,
    /// `Δ`, the sup of `|wλ₁/(1 + wg)|` over `|w| ≤ 0.01`.
    pub delta_cap: f64,
    pub lipschitz: f64,
    pub actual: f64,
    /// `2πΔe^{2πL}`.
    pub bound: f64,
}

impl DivergenceReport {
    pub fn holds(&self) -> bool {
        self.actual <= self.bound
    }
}

/// Largest gap between the orbits of `field` and of the same field with
/// `λ₁ = 0`, against the Gronwall estimate.
pub fn divergence_check(field: &FieldParams, w0: Complex64) -> Result<DivergenceReport, PoincareError> {
    if !(field.lambda1 <= 0.1) {
        return Err(PoincareError::Precondition("lambda1 must lie in [0, 0.1]".into()));
    }
    if w0.norm() > admissible_radius(0.0) {
        return Err(PoincareError::Precondition(format!("|w0| = {} exceeds 0.0005", w0.norm())));
    }
    let radius = 0.01;
    let g_cap = field.a.norm() + field.b.norm() + field.c.norm();
    let delta_cap = radius * field.lambda1 / (1.0 - radius * g_cap);
    let lipschitz = gronwall_lipschitz(field.lambda1);
    let bound = TWO_PI * delta_cap * (TWO_PI * lipschitz).exp();
    let actual = if field.lambda1 == 0.0 || w0.is_zero() {
        0.0
    } else {
        let fast = precise_flow(field, w0, PRECISE_STEPS)?;
        let slow = precise_flow(&field.with_lambda1(0.0), w0, PRECISE_STEPS)?;
        fast.iter().zip(&slow).map(|(a, b)| cnorm(&(*a - *b))).fold(0.0, f64::max)
    };
    Ok(DivergenceReport { lambda1: field.lambda1, delta_cap, lipschitz, actual, bound })
}
