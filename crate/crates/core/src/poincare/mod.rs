//! The complexified radial equation
//! `dw/dθ = w(λ₁ + w f_λ(θ)) / (1 + w g_λ(θ))` over one turn, the return map
//! on the positive `x`-semiaxis and the checks built on it.

mod cycles;
mod gap;
mod precise;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::PoincareError;
use crate::field::{polar_data, FieldParams};

pub use cycles::{
    classify_tame, find_cycles, max_displacement, CycleSearch, Hole, LimitCycleRecord, MaxDisplacement, Region,
    TameClassification, DEFAULT_GRID_POINTS, DEFAULT_X_MIN,
};
pub use gap::{h_vector_field, rdot_on_isocline, strip_contacts, strip_gap_check, GapReport, SLOPE_SAMPLES};
pub use precise::{
    divergence_check, jet_agreement, precise_flow, precise_poincare_map, ratio_to_dd, DivergenceReport,
    JetAgreement, DdComplex, PRECISE_STEPS,
};

const TWO_PI: f64 = 2.0 * PI;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntegratorOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Smallest admissible `|1 + w g|`.
    pub guard: f64,
    /// Largest admissible `|w|`.
    pub escape_cap: f64,
    /// Keep every accepted step (with the step capped at `2π/512`).
    pub record: bool,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-12, guard: 1e-6, escape_cap: 100.0, record: true }
    }
}

impl IntegratorOptions {
    /// Escape cap `10·δ⁻¹`.
    pub fn for_delta(delta: f64) -> Self {
        Self { escape_cap: 10.0 / delta, ..Self::default() }
    }

    fn scaled_to(&self, x: f64) -> Self {
        Self { abs_tol: self.abs_tol.min(self.rel_tol * x.abs() * 1e-2).max(1e-300), record: false, ..*self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub theta: f64,
    pub w: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrajectoryStats {
    pub steps: usize,
    pub rejected: usize,
    pub min_denominator: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub stats: TrajectoryStats,
}

impl Trajectory {
    pub fn end(&self) -> Complex64 {
        self.samples.last().expect("at least the initial sample").w
    }

    pub fn sup_modulus(&self) -> f64 {
        self.samples.iter().map(|s| s.w.norm()).fold(0.0, f64::max)
    }

    /// `theta,re_w,im_w` with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,re_w,im_w\n");
        for s in &self.samples {
            out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", s.theta, s.w.re, s.w.im));
        }
        out
    }
}

/// Right-hand side and denominator `1 + w g` at `(θ, w)`.
fn rhs(field: &FieldParams, theta: f64, w: Complex64) -> (Complex64, Complex64) {
    let p = polar_data(field, theta);
    let den = 1.0 + w * p.g;
    (w * (field.lambda1 + w * p.f) / den, den)
}

// Dormand–Prince 5(4)
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates from `θ = theta0` to `θ = theta1` with the embedded 5(4) pair.
pub fn integrate_span(
    field: &FieldParams,
    w0: Complex64,
    theta0: f64,
    theta1: f64,
    opts: &IntegratorOptions,
) -> Result<Trajectory, PoincareError> {
    if !(w0.re.is_finite() && w0.im.is_finite()) {
        return Err(PoincareError::Precondition("initial value is not finite".into()));
    }
    let (_, den0) = rhs(field, theta0, w0);
    if den0.norm() < opts.guard {
        return Err(PoincareError::SingularCrossing { theta: theta0, denominator: den0.norm() });
    }
    let span = theta1 - theta0;
    let h_max = if opts.record { TWO_PI / 512.0 } else { span / 4.0 };
    let h_min = span * 1e-14;
    let mut stats = TrajectoryStats { steps: 0, rejected: 0, min_denominator: den0.norm() };
    let mut samples = vec![Sample { theta: theta0, w: w0 }];
    let (mut t, mut w) = (theta0, w0);
    let mut h = (span / 64.0).min(h_max);
    let mut k = [Complex64::default(); 7];
    k[0] = rhs(field, t, w).0;

    while t < theta1 {
        if theta1 - t < h {
            h = theta1 - t;
        }
        let mut stage_ok = true;
        for s in 1..7 {
            let mut ws = w;
            for j in 0..s {
                ws += h * A[s][j] * k[j];
            }
            let (val, den) = rhs(field, t + C[s] * h, ws);
            if den.norm() < opts.guard || !(val.re.is_finite() && val.im.is_finite()) {
                stage_ok = false;
                break;
            }
            k[s] = val;
        }
        let (w_new, err) = if stage_ok {
            let mut w_new = w;
            let mut e = Complex64::default();
            for s in 0..6 {
                w_new += h * A[6][s] * k[s];
            }
            for s in 0..7 {
                e += h * E[s] * k[s];
            }
            let scale = opts.abs_tol + opts.rel_tol * w.norm().max(w_new.norm());
            (w_new, e.norm() / scale)
        } else {
            (w, f64::INFINITY)
        };

        if err <= 1.0 {
            t = if theta1 - t <= h { theta1 } else { t + h };
            w = w_new;
            k[0] = k[6];
            stats.steps += 1;
            let den = rhs(field, t, w).1.norm();
            stats.min_denominator = stats.min_denominator.min(den);
            if den < opts.guard {
                return Err(PoincareError::SingularCrossing { theta: t, denominator: den });
            }
            if w.norm() > opts.escape_cap {
                return Err(PoincareError::Escape { theta: t, modulus: w.norm() });
            }
            if opts.record {
                samples.push(Sample { theta: t, w });
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h = (h * factor).min(h_max);
        } else {
            stats.rejected += 1;
            h *= if err.is_finite() { (0.9 * err.powf(-0.2)).clamp(0.1, 0.9) } else { 0.25 };
            if h < h_min {
                if !stage_ok {
                    let den = rhs(field, t, w).1.norm();
                    return Err(PoincareError::SingularCrossing { theta: t, denominator: den });
                }
                return Err(PoincareError::StepFailure { theta: t, step: h });
            }
        }
    }
    if !opts.record {
        samples.push(Sample { theta: t, w });
    }
    Ok(Trajectory { samples, stats })
}

/// One full turn `θ ∈ [0, 2π]` starting from `w(0) = w0`.
pub fn integrate(field: &FieldParams, w0: Complex64, opts: &IntegratorOptions) -> Result<Trajectory, PoincareError> {
    integrate_span(field, w0, 0.0, TWO_PI, opts)
}

/// `P(x) = w(2π)` with `w(0) = x`; `x` may be complex.
pub fn poincare_map(field: &FieldParams, x: Complex64, opts: &IntegratorOptions) -> Result<Complex64, PoincareError> {
    let o = opts.scaled_to(x.norm());
    Ok(integrate(field, x, &o)?.end())
}

/// `P(x) − x`.
pub fn displacement(field: &FieldParams, x: Complex64, opts: &IntegratorOptions) -> Result<Complex64, PoincareError> {
    Ok(poincare_map(field, x, opts)? - x)
}

/// `ε(λ)`: `0.0005` for `λ₁ ≤ 0.1`, `0.005 e^{−4πλ₁}` above.
pub fn admissible_radius(lambda1: f64) -> f64 {
    if lambda1 <= 0.1 {
        0.0005
    } else {
        0.005 * (-4.0 * PI * lambda1).exp()
    }
}

/// Lipschitz constant of the radial equation on `|w| ≤ 0.01`.
pub fn gronwall_lipschitz(lambda1: f64) -> f64 {
    if lambda1 <= 0.1 {
        0.2
    } else {
        2.0 * lambda1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GronwallReport {
    pub eps: f64,
    pub lipschitz: f64,
    pub w0_modulus: f64,
    pub sup_actual: f64,
    /// `|w₀| e^{2πL}`.
    pub bound: f64,
    /// `|w(θ)| ≤ |w₀|e^{Lθ}` at every sample.
    pub pointwise: bool,
}

impl GronwallReport {
    pub fn holds(&self) -> bool {
        self.sup_actual <= self.bound && self.pointwise
    }
}

pub fn gronwall_check(field: &FieldParams, w0: Complex64, opts: &IntegratorOptions) -> Result<GronwallReport, PoincareError> {
    let eps = admissible_radius(field.lambda1);
    let r0 = w0.norm();
    if r0 > eps {
        return Err(PoincareError::Precondition(format!("|w0| = {r0} exceeds eps = {eps}")));
    }
    let l = gronwall_lipschitz(field.lambda1);
    if r0 == 0.0 {
        return Ok(GronwallReport { eps, lipschitz: l, w0_modulus: 0.0, sup_actual: 0.0, bound: 0.0, pointwise: true });
    }
    let traj = integrate(field, w0, &IntegratorOptions { record: true, ..opts.scaled_to(r0) })?;
    // slack for the integration error
    let slack = 1.0 + 1e3 * opts.rel_tol;
    let pointwise = traj.samples.iter().all(|s| s.w.norm() <= r0 * (l * s.theta).exp() * slack);
    Ok(GronwallReport {
        eps,
        lipschitz: l,
        w0_modulus: r0,
        sup_actual: traj.sup_modulus(),
        bound: r0 * (TWO_PI * l).exp(),
        pointwise,
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
    fn linear_map_is_exponential() {
        let opts = IntegratorOptions::default();
        for l in [0.0, 0.05, 0.5] {
            let f = FieldParams::linear(l);
            let x = 1e-3;
            let p = poincare_map(&f, c(x, 0.0), &opts).unwrap();
            let want = x * (TWO_PI * l).exp();
            assert!((p.re - want).abs() <= 1e-9 * want && p.im.abs() < 1e-20, "{l}: {p} vs {want}");
        }
    }

    #[test]
    fn zero_stays_zero() {
        let f = FieldParams::new(0.0, c(1.0, 0.0), c(0.5, 0.5), c(0.2, 0.0), Form::N1).unwrap();
        let t = integrate(&f, c(0.0, 0.0), &IntegratorOptions::default()).unwrap();
        assert!(t.samples.iter().all(|s| s.w == c(0.0, 0.0)));
        assert!((t.samples.last().unwrap().theta - TWO_PI).abs() < 1e-15);
    }

    #[test]
    fn radius_branches() {
        assert_eq!(admissible_radius(0.0), 0.0005);
        assert_eq!(admissible_radius(0.1), 0.0005);
        assert!((admissible_radius(1.0) - 0.005 * (-4.0 * PI).exp()).abs() < 1e-20);
    }

    #[test]
    fn csv_layout() {
        let t = integrate(&FieldParams::linear(0.0), c(1e-3, 0.0), &IntegratorOptions::default()).unwrap();
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("theta,re_w,im_w"));
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first.len(), 3);
        assert_eq!(first[1].parse::<f64>().unwrap(), 1e-3);
        assert_eq!(csv.lines().count(), t.samples.len() + 1);
    }

    #[test]
    fn escape_is_reported() {
        let f = FieldParams::linear(1.0);
        let opts = IntegratorOptions { escape_cap: 1.0, ..Default::default() };
        assert!(matches!(integrate(&f, c(0.5, 0.0), &opts), Err(PoincareError::Escape { .. })));
    }

    #[test]
    fn guard_at_start() {
        // 1 + w g(0) with g(0) = Im(A + B + C) = 1 vanishes at w = −1
        let f = FieldParams::new(0.0, c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), Form::N1).unwrap();
        let r = integrate(&f, c(-1.0, 0.0), &IntegratorOptions::default());
        assert!(matches!(r, Err(PoincareError::SingularCrossing { .. })));
    }

    #[test]
    fn gronwall_at_the_admissible_radius() {
        let f = FieldParams::new(0.0, c(1.0, 0.0), c(-1.0, 1.5), c(0.3, -0.8), Form::N1).unwrap();
        let r = gronwall_check(&f, c(0.0005, 0.0), &IntegratorOptions::default()).unwrap();
        assert!((r.bound - 0.0005 * (0.4 * PI).exp()).abs() < 1e-18);
        assert!(r.bound < 0.01 && r.holds());
        let z = gronwall_check(&f, c(0.0, 0.0), &IntegratorOptions::default()).unwrap();
        assert_eq!((z.sup_actual, z.bound), (0.0, 0.0));
    }
}
