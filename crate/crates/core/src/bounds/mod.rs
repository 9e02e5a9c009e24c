//! Closed-form constants of the cycle-count bound, evaluated in natural-log
//! scale where the numbers themselves would overflow.

mod trig;

use std::cmp::Ordering;
use std::f64::consts::{LN_10, LN_2, PI, SQRT_2};

use astro_float::BigFloat;
use serde::{Serialize, Serializer};

use crate::error::BoundsError;
use crate::poincare::admissible_radius;
use crate::precise::HighPrecision;

pub use trig::{trig_min_bound, trig_roots, TrigCubic, TrigFactorization};

/// `ln(M/m)·e^{2D/ε}`: the Bernstein index times the geometric factor.
pub fn zero_bound(m_big: f64, m_small: f64, d: f64, eps: f64) -> Result<f64, BoundsError> {
    if !(m_small > 0.0) {
        return Err(BoundsError::Domain(format!("m must be positive, got {m_small}")));
    }
    if !(m_big >= m_small) {
        return Err(BoundsError::Domain(format!("need M >= m, got M = {m_big}, m = {m_small}")));
    }
    if !(d > 0.0 && eps > 0.0) {
        return Err(BoundsError::Domain("D and eps must be positive".into()));
    }
    Ok((m_big / m_small).ln() * (2.0 * d / eps).exp())
}

/// Lower bound on `max_K |f|`: `10⁻²⁶σ` for `λ₁ ≤ 0.1`, `10^{−26/δ}` above.
/// Underflows to zero for `δ` below about `0.08` on the second branch; see
/// [`lower_m_log10`].
pub fn lower_m(lambda1: f64, delta: f64, sigma: f64) -> f64 {
    10f64.powf(lower_m_log10(lambda1, delta, sigma))
}

pub fn lower_m_log10(lambda1: f64, delta: f64, sigma: f64) -> f64 {
    if lambda1 <= 0.1 {
        -26.0 + sigma.log10()
    } else {
        -26.0 / delta
    }
}

/// Width of the strip below the zero isocline, `δ¹⁴κ/10¹⁰`.
pub fn beta(delta: f64, kappa: f64) -> f64 {
    delta.powi(14) * kappa / 1e10
}

/// `δ¹²κ/(10⁶·24√2)`, the lower bound of `|H(v_λ)|` on `Γ⁻`.
pub fn kappa_prime(delta: f64, kappa: f64) -> f64 {
    delta.powi(12) * kappa / (1e6 * 24.0 * SQRT_2)
}

/// Lipschitz cap `6145δ⁻³β⁻²` used for the gap.
pub fn gap_lipschitz(delta: f64, beta: f64) -> f64 {
    6145.0 / (delta.powi(3) * beta * beta)
}

/// `ln ε` for `ε = (βδ/32)e^{−2πL}` with `L` from [`gap_lipschitz`].
pub fn gap_eps(delta: f64, beta: f64) -> f64 {
    (beta * delta / 32.0).ln() - 2.0 * PI * gap_lipschitz(delta, beta)
}

/// `ln` of the geometric factor, `(10⁵ − 1)δ⁻³β⁻²`.
pub fn geom_exponent(delta: f64, beta: f64) -> f64 {
    (1e5 - 1.0) / (delta.powi(3) * beta * beta)
}

/// `ln 2 − ln δ + (26/δ) ln 10 − ln σ`.
pub fn bernstein_cap(delta: f64, sigma: f64) -> f64 {
    LN_2 - delta.ln() + 26.0 / delta * LN_10 - sigma.ln()
}

/// `α = δ⁴/100`.
pub fn root_distance_threshold(delta: f64) -> f64 {
    delta.powi(4) / 100.0
}

/// Polar-coordinate separation `(2/3)δ²` of points `δ`-apart in the disc of
/// radius `δ⁻¹`.
pub fn polar_separation(delta: f64) -> f64 {
    2.0 * delta * delta / 3.0
}

/// The inequality chain behind the root-distance threshold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RootDistanceChain {
    pub alpha: f64,
    pub polar_separation: f64,
    /// `8δ⁻²`.
    pub slope_cap: f64,
    /// `α√(L² + 1)` at `L = 8δ⁻²`.
    pub shift: f64,
    /// `δ²/6`.
    pub shift_cap: f64,
    pub holds: bool,
}

pub fn root_distance_chain(delta: f64) -> RootDistanceChain {
    let alpha = root_distance_threshold(delta);
    let l = 8.0 / (delta * delta);
    let shift = alpha * (l * l + 1.0).sqrt();
    let cap = delta * delta / 6.0;
    RootDistanceChain {
        alpha,
        polar_separation: polar_separation(delta),
        slope_cap: l,
        shift,
        shift_cap: cap,
        holds: shift < cap,
    }
}

/// `X = |ln σ|·exp(exp(lnln))`, kept as `lnln` and `ln|ln σ|`.
#[derive(Clone, Debug)]
pub struct LogLogMagnitude {
    pub lnln: BigFloat,
    pub linear_correction: f64,
    digits: u32,
}

impl LogLogMagnitude {
    pub fn lnln_f64(&self) -> f64 {
        let mut hp = HighPrecision::with_digits(self.digits);
        hp.to_f64(&self.lnln)
    }

    pub fn lnln_decimal(&self) -> String {
        let mut hp = HighPrecision::with_digits(self.digits);
        hp.to_decimal(&self.lnln)
    }
}

impl PartialEq for LogLogMagnitude {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for LogLogMagnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.lnln.partial_cmp(&other.lnln)? {
            Ordering::Equal => self.linear_correction.partial_cmp(&other.linear_correction),
            o => Some(o),
        }
    }
}

impl Serialize for LogLogMagnitude {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LogLogMagnitude", 3)?;
        st.serialize_field("lnln", &self.lnln_f64())?;
        st.serialize_field("lnln_decimal", &self.lnln_decimal())?;
        st.serialize_field("linear_correction", &self.linear_correction)?;
        st.end()
    }
}

/// `H(2, δ, σ, κ) = |ln σ| exp(exp(10²⁵δ⁻³¹κ⁻²))` at `digits` significant
/// digits. `δ` and `κ` enter through their shortest decimal form, so `0.1`
/// means one tenth and not the nearest double.
pub fn hilbert_bound(delta: f64, sigma: f64, kappa: f64, digits: u32) -> LogLogMagnitude {
    let mut hp = HighPrecision::with_digits(digits);
    let ten25 = hp.powi(&hp.int(10), 25);
    let d = hp.parse(&delta.to_string());
    let k = hp.parse(&kappa.to_string());
    let d31 = hp.powi(&d, 31);
    let k2 = hp.powi(&k, 2);
    let lnln = hp.div(&ten25, &hp.mul(&d31, &k2));
    LogLogMagnitude { lnln, linear_correction: sigma.ln().abs().ln(), digits }
}

fn check_unit_interval(name: &str, x: f64) -> Result<(), BoundsError> {
    if x > 0.0 && x < 0.1 + 1e-15 {
        Ok(())
    } else {
        Err(BoundsError::Domain(format!("{name} must lie in (0, 0.1], got {x}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub delta: f64,
    pub sigma: f64,
    pub kappa: f64,
    pub eps_lambda: f64,
    #[serde(rename = "L_cap")]
    pub l_cap: f64,
    pub m_lower: f64,
    pub m_lower_log10: f64,
    pub beta: f64,
    pub kappa_prime: f64,
    /// `ln` of the gap `ε`.
    pub gap_eps: f64,
    pub geom_exponent: f64,
    pub bernstein_cap: f64,
    #[serde(rename = "lnlnH")]
    pub lnln_h: f64,
    #[serde(rename = "H")]
    pub h: LogLogMagnitude,
}

/// Every constant of the composition at `(δ, σ, κ)`, for `λ₁ ≤ 0.1`.
pub fn bound_report(delta: f64, sigma: f64, kappa: f64, digits: u32) -> Result<BoundReport, BoundsError> {
    check_unit_interval("delta", delta)?;
    check_unit_interval("sigma", sigma)?;
    check_unit_interval("kappa", kappa)?;
    let b = beta(delta, kappa);
    let h = hilbert_bound(delta, sigma, kappa, digits);
    Ok(BoundReport {
        delta,
        sigma,
        kappa,
        eps_lambda: admissible_radius(0.0),
        l_cap: gap_lipschitz(delta, b),
        m_lower: lower_m(0.0, delta, sigma),
        m_lower_log10: lower_m_log10(0.0, delta, sigma),
        beta: b,
        kappa_prime: kappa_prime(delta, kappa),
        gap_eps: gap_eps(delta, b),
        geom_exponent: geom_exponent(delta, b),
        bernstein_cap: bernstein_cap(delta, sigma),
        lnln_h: h.lnln_f64(),
        h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_bound_examples() {
        assert_eq!(zero_bound(2.0, 2.0, 1.0, 1.0).unwrap(), 0.0);
        let e = std::f64::consts::E;
        assert!((zero_bound(e * 3.0, 3.0, 0.5, 0.5).unwrap() - e * e).abs() < 1e-12);
        assert!(zero_bound(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(zero_bound(1.0, 2.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn lower_m_branches() {
        assert!((lower_m(0.0, 0.05, 0.05) / 5e-28 - 1.0).abs() < 1e-12);
        assert!((lower_m(1.0, 0.1, 0.05) / 1e-260 - 1.0).abs() < 1e-12);
        assert_eq!(lower_m(0.1, 0.1, 0.05), lower_m(0.0, 0.1, 0.05));
    }

    #[test]
    fn strip_constants() {
        assert!((beta(0.1, 0.1) / 1e-25 - 1.0).abs() < 1e-12);
        let kp = 1e-12 * 0.1 / (1e6 * 24.0 * 2f64.sqrt());
        assert!((kappa_prime(0.1, 0.1) / kp - 1.0).abs() < 1e-12);
        assert!((kappa_prime(0.1, 0.1) - 2.946e-21).abs() < 1e-24);
    }

    #[test]
    fn chain_holds_for_small_delta() {
        for d in [0.01, 0.05, 0.1] {
            assert!(root_distance_chain(d).holds);
        }
        assert_eq!(root_distance_threshold(0.0), 0.0);
    }

    #[test]
    fn composition_constants() {
        assert!((gap_lipschitz(0.1, 0.1) / 6.145e8 - 1.0).abs() < 1e-12);
        assert!((geom_exponent(0.1, 0.1) / 99_999e5 - 1.0).abs() < 1e-12);
        let cap = 2f64.ln() + 10f64.ln() + 260.0 * 10f64.ln() + 10f64.ln();
        assert!((bernstein_cap(0.1, 0.1) - cap).abs() < 1e-9);
        assert!((bernstein_cap(0.1, 0.1) / 603.8 - 1.0).abs() < 1e-3);
        let want = (0.1f64 * 0.1 / 32.0).ln() - 2.0 * PI * 6.145e8;
        assert!((gap_eps(0.1, 0.1) / want - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hilbert_exponent_at_the_corner() {
        let h = hilbert_bound(0.1, 0.1, 0.1, 50);
        assert!((h.lnln_f64() / 1e58 - 1.0).abs() < 1e-12);
        assert_eq!(h.lnln_f64(), 1e58);
        let mut hp = HighPrecision::with_digits(50);
        let want = hp.parse("1e58");
        let rel = hp.div(&hp.sub(&h.lnln, &want), &want);
        assert!(hp.to_f64(&rel).abs() < 1e-45);
        assert!((h.linear_correction - 10f64.ln().ln()).abs() < 1e-15);
        assert!(hilbert_bound(0.05, 0.1, 0.1, 50) > h);
        assert!(hilbert_bound(0.1, 0.1, 0.05, 50) > h);
        assert!(hilbert_bound(0.1, 0.01, 0.1, 50) > h);
    }

    #[test]
    fn report_at_the_corner() {
        let r = bound_report(0.1, 0.1, 0.1, 50).unwrap();
        assert_eq!(r.eps_lambda, 0.0005);
        assert!(r.geom_exponent > 0.0 && r.l_cap.is_finite() && r.gap_eps.is_finite());
        assert!((r.lnln_h / 1e58 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn domain_checked() {
        assert!(bound_report(0.2, 0.05, 0.05, 30).is_err());
        assert!(bound_report(0.05, 0.0, 0.05, 30).is_err());
    }
}
