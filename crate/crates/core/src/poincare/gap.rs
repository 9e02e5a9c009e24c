//! The zero isocline `Γ: r = −1/g_λ(θ)`, the strip `Π_β` below it and the
//! no-contact check on its lower boundary `Γ⁻: r = −1/g_λ(θ) − β`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use serde::Serialize;

use super::{Trajectory, TWO_PI};
use crate::bounds::{beta, kappa_prime, TrigCubic};
use crate::error::PoincareError;
use crate::field::{polar_data, singular_decomposition, FieldParams, TameRegion};

/// Samples per connected arc of `Γ⁻`.
pub const SLOPE_SAMPLES: usize = 4096;
const ARC_SCAN: usize = 4096;

/// `H(v_λ) = λ₁g_λ − f_λ = Im(μ̄h_λ)` as a homogeneous cubic form.
pub fn h_vector_field(field: &FieldParams) -> TrigCubic {
    let mb = field.mu().conj();
    let (za, zb, zc) = (mb * field.a, mb * field.b, mb * field.c);
    // Im(z e^{ikθ}) = Im z cos kθ + Re z sin kθ
    let a1 = za.im + zb.im;
    let b1 = za.re - zb.re;
    let a3 = zc.im;
    let b3 = -zc.re;
    TrigCubic::from_harmonics(a1, b1, a3, b3)
}

/// `(ṙ·g², H)` at the point of `Γ` over `θ`, or `None` where `g(θ) = 0`.
/// Along `Γ`, `ṙ = r(λ₁ + rf)` with `r = −1/g`, so `ṙ·g² = f − λ₁g = −H`.
pub fn rdot_on_isocline(field: &FieldParams, theta: f64) -> Option<(f64, f64)> {
    let p = polar_data(field, theta);
    if p.g == 0.0 {
        return None;
    }
    let r = -1.0 / p.g;
    let e = Complex64::from_polar(1.0, theta);
    let zdot = field.eval(r * e);
    let rdot = (zdot * e.conj()).re;
    Some((rdot * p.g * p.g, field.lambda1 * p.g - p.f))
}

/// Number of samples of a real orbit lying in `Π_β`.
pub fn strip_contacts(field: &FieldParams, beta: f64, traj: &Trajectory) -> usize {
    traj.samples
        .iter()
        .filter(|s| {
            let g = polar_data(field, s.theta).g;
            if g >= 0.0 {
                return false;
            }
            let d = s.w.re + 1.0 / g;
            (-beta..=0.0).contains(&d)
        })
        .count()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapReport {
    pub delta: f64,
    pub kappa: f64,
    pub kappa_distance: f64,
    pub beta: f64,
    pub kappa_prime: f64,
    /// Connected arcs of `{g_λ < 0}` and the tame samples on `Γ⁻`.
    pub arcs: usize,
    pub arc_samples: usize,
    pub empty_arc: bool,
    /// Minimal field slope `|dr/dθ|` on `Γ⁻`.
    #[serde(rename = "S_est")]
    pub s_field: Option<f64>,
    /// Maximal slope `|(1/g)'|` of `Γ⁻`.
    #[serde(rename = "s_est")]
    pub s_curve: Option<f64>,
    #[serde(rename = "minH_on_gamma")]
    pub min_h_on_gamma: Option<f64>,
    /// `‖H‖₂` by Parseval, unnormalized integral over `[0, 2π]`.
    #[serde(rename = "H_l2")]
    pub h_l2: f64,
    #[serde(rename = "H_l2_quadrature")]
    pub h_l2_quadrature: f64,
    /// `|μ|κ/√2`.
    pub l2_lower_bound: f64,
    pub l2_pass: bool,
    /// `κ′/(80β) − 1/5` and `7δ⁻²`.
    pub slope_lower_bound: f64,
    pub curve_slope_upper_bound: f64,
    pub pass: bool,
}

fn g_prime(field: &FieldParams, theta: f64) -> f64 {
    let e = Complex64::from_polar(1.0, theta);
    let em = e.conj();
    let hp = Complex64::i() * (field.a * e - field.b * em - 3.0 * field.c * em * em * em);
    hp.im
}

/// Maximal open arcs of `{g < 0}` as `(start, end)` angles, `end` possibly
/// beyond `2π`.
fn negative_arcs(field: &FieldParams) -> Vec<(f64, f64)> {
    let g = |t: f64| polar_data(field, t).g;
    let step = TWO_PI / ARC_SCAN as f64;
    let neg: Vec<bool> = (0..ARC_SCAN).map(|k| g(k as f64 * step) < 0.0).collect();
    if neg.iter().all(|&b| !b) {
        return vec![];
    }
    if neg.iter().all(|&b| b) {
        return vec![(0.0, TWO_PI)];
    }
    let refine = |mut lo: f64, mut hi: f64| {
        // g changes sign on [lo, hi]
        let s_lo = g(lo) < 0.0;
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if (g(mid) < 0.0) == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let start = neg.iter().position(|&b| !b).expect("some nonnegative sample");
    let mut arcs = Vec::new();
    let mut k = start;
    let mut begin = None;
    for _ in 0..=ARC_SCAN {
        let next = k + 1;
        let (a, b) = (neg[k % ARC_SCAN], neg[next % ARC_SCAN]);
        if !a && b {
            begin = Some(refine(k as f64 * step, next as f64 * step));
        }
        if a && !b {
            if let Some(s) = begin.take() {
                arcs.push((s, refine(k as f64 * step, next as f64 * step)));
            }
        }
        k = next;
        if k >= start + ARC_SCAN {
            break;
        }
    }
    arcs
}

/// Slopes on `Γ⁻` and the `L₂` bound on `H(v_λ)` for a field at distance at
/// least `κ` from the singular fields.
pub fn strip_gap_check(field: &FieldParams, delta: f64, kappa: f64) -> Result<GapReport, PoincareError> {
    let deco = singular_decomposition(field)?;
    if deco.kappa_distance < kappa {
        return Err(PoincareError::Precondition(format!(
            "kappa-distance {} is below kappa = {kappa}",
            deco.kappa_distance
        )));
    }
    let b = beta(delta, kappa);
    let kp = kappa_prime(delta, kappa);
    let region = TameRegion::new(field, delta);
    let arcs = negative_arcs(field);

    let mut count = 0;
    let (mut s_min, mut s_max, mut h_min) = (f64::INFINITY, 0.0f64, f64::INFINITY);
    for &(t0, t1) in &arcs {
        for k in 1..SLOPE_SAMPLES {
            let theta = t0 + (t1 - t0) * k as f64 / SLOPE_SAMPLES as f64;
            let p = polar_data(field, theta);
            if p.g >= 0.0 {
                continue;
            }
            let r = -1.0 / p.g - b;
            if !region.contains(Complex64::from_polar(r, theta)) {
                continue;
            }
            count += 1;
            let h = field.lambda1 * p.g - p.f;
            // on Γ⁻: 1 + rg = −βg and λ₁ + rf = H/g − βf
            let slope = (r * (h / p.g - b * p.f)).abs() / (b * p.g.abs());
            let curve = g_prime(field, theta).abs() / (p.g * p.g);
            s_min = s_min.min(slope);
            s_max = s_max.max(curve);
            h_min = h_min.min(h.abs());
        }
    }
    let mu = field.mu().norm();
    let cubic = h_vector_field(field);
    let h_l2 = (2.0 * PI).sqrt() * mu * ((deco.b.norm_sqr() + deco.c.norm_sqr()) / 2.0).sqrt();
    let l2_lower = mu * kappa / SQRT_2;
    let empty = count == 0;
    let some = |x: f64| if empty { None } else { Some(x) };
    Ok(GapReport {
        delta,
        kappa,
        kappa_distance: deco.kappa_distance,
        beta: b,
        kappa_prime: kp,
        arcs: arcs.len(),
        arc_samples: count,
        empty_arc: empty,
        s_field: some(s_min),
        s_curve: some(s_max),
        min_h_on_gamma: some(h_min),
        h_l2,
        h_l2_quadrature: cubic.l2_quadrature(),
        l2_lower_bound: l2_lower,
        l2_pass: h_l2 >= l2_lower,
        slope_lower_bound: kp / (80.0 * b) - 0.2,
        curve_slope_upper_bound: 7.0 / (delta * delta),
        pass: empty || s_min > s_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Form;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cubic_matches_direct_evaluation() {
        let f = FieldParams::new(0.3, c(1.0, 0.0), c(-0.4, 1.2), c(0.5, -0.6), Form::N1).unwrap();
        let cubic = h_vector_field(&f);
        for k in 0..20 {
            let t = 0.37 * k as f64;
            let p = polar_data(&f, t);
            assert!((cubic.eval(t) - (f.lambda1 * p.g - p.f)).abs() < 1e-14);
        }
    }

    #[test]
    fn isocline_identity() {
        let f = FieldParams::new(0.3, c(1.0, 0.0), c(-0.4, 1.2), c(0.5, -0.6), Form::N1).unwrap();
        for k in 0..50 {
            if let Some((lhs, h)) = rdot_on_isocline(&f, 0.123 * k as f64) {
                assert!((lhs + h).abs() <= 1e-12 * (1.0 + h.abs()));
            }
        }
    }

    #[test]
    fn singular_field_rejected() {
        let mu = c(0.0, 1.0);
        let f = FieldParams::new(0.0, c(1.0, 0.0), mu / mu.conj(), c(0.0, 0.0), Form::N1).unwrap();
        assert!(matches!(strip_gap_check(&f, 0.1, 0.1), Err(PoincareError::Precondition(_))));
    }

    #[test]
    fn arcs_cover_negative_set() {
        let f = FieldParams::new(0.0, c(1.0, 0.0), c(0.3, 0.2), c(0.4, 0.1), Form::N1).unwrap();
        let arcs = negative_arcs(&f);
        assert!(!arcs.is_empty());
        for (a, b) in arcs {
            assert!(b > a);
            assert!(polar_data(&f, 0.5 * (a + b)).g < 0.0);
            assert!(polar_data(&f, a).g.abs() < 1e-12 && polar_data(&f, b).g.abs() < 1e-12);
        }
    }
}
