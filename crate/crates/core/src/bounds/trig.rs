//! Real homogeneous cubic forms in `(cos θ, sin θ)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::BoundsError;
use crate::numeric::poly_roots;

/// `H(θ) = p₀cos³θ + p₁cos²θ sinθ + p₂cosθ sin²θ + p₃sin³θ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrigCubic {
    pub p: [f64; 4],
}

/// `H = A ∏ sin(θ − θ_j)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrigFactorization {
    pub leading: f64,
    pub roots: [Complex64; 3],
}

impl TrigFactorization {
    pub fn eval(&self, theta: f64) -> Complex64 {
        let t = Complex64::new(theta, 0.0);
        self.roots.iter().fold(Complex64::new(self.leading, 0.0), |acc, r| acc * (t - r).sin())
    }

    /// Distance from a real `θ` to the root series `θ_j + πℤ`.
    pub fn root_distance(&self, theta: f64) -> f64 {
        self.roots
            .iter()
            .map(|r| {
                let shift = ((theta - r.re) / PI).round();
                (Complex64::new(theta - shift * PI, 0.0) - r).norm()
            })
            .fold(f64::INFINITY, f64::min)
    }
}

impl TrigCubic {
    pub fn new(p: [f64; 4]) -> Self {
        Self { p }
    }

    /// From `a₁cosθ + b₁sinθ + a₃cos3θ + b₃sin3θ`.
    pub fn from_harmonics(a1: f64, b1: f64, a3: f64, b3: f64) -> Self {
        Self { p: [a1 + a3, b1 + 3.0 * b3, a1 - 3.0 * a3, b1 - b3] }
    }

    /// `(a₁, b₁, a₃, b₃)`.
    pub fn harmonics(&self) -> [f64; 4] {
        let [p0, p1, p2, p3] = self.p;
        [(3.0 * p0 + p2) / 4.0, (p1 + 3.0 * p3) / 4.0, (p0 - p2) / 4.0, (p1 - p3) / 4.0]
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        let [p0, p1, p2, p3] = self.p;
        p0 * c * c * c + p1 * c * c * s + p2 * c * s * s + p3 * s * s * s
    }

    pub fn is_zero(&self) -> bool {
        self.p.iter().all(|&x| x == 0.0)
    }

    /// `‖H‖₂ = (∫₀^{2π} H²)^{1/2}` by Parseval.
    pub fn l2_norm(&self) -> f64 {
        let h = self.harmonics();
        (PI * h.iter().map(|x| x * x).sum::<f64>()).sqrt()
    }

    /// `‖H‖₂` by composite Simpson quadrature.
    pub fn l2_quadrature(&self) -> f64 {
        let n = 2000;
        let step = 2.0 * PI / n as f64;
        let mut acc = 0.0;
        for k in 0..=n {
            let w = if k == 0 || k == n {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let v = self.eval(k as f64 * step);
            acc += w * v * v;
        }
        (acc * step / 3.0).sqrt()
    }

    /// Writes `H = cos³θ·P(tan θ)`, takes `θ_j = arctan t_j` over the roots
    /// of `P`, adds `π/2` for each lost degree and fits `A` at sample points.
    pub fn roots(&self) -> Result<TrigFactorization, BoundsError> {
        if self.is_zero() {
            return Err(BoundsError::ZeroPolynomial);
        }
        let scale = self.p.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let mut coeffs: Vec<Complex64> = self.p.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        while coeffs.last().is_some_and(|c| c.norm() <= 1e-14 * scale) {
            coeffs.pop();
        }
        let mut roots: Vec<Complex64> = poly_roots(&coeffs).into_iter().map(|t| t.atan()).collect();
        while roots.len() < 3 {
            roots.push(Complex64::new(PI / 2.0, 0.0));
        }
        let roots = [roots[0], roots[1], roots[2]];
        let unit = TrigFactorization { leading: 1.0, roots };
        // least squares for A over a few samples
        let (mut num, mut den) = (0.0, 0.0);
        for k in 0..16 {
            let t = 0.1 + k as f64 * PI / 16.0;
            let u = unit.eval(t);
            num += self.eval(t) * u.re;
            den += u.norm_sqr();
        }
        Ok(TrigFactorization { leading: num / den, roots })
    }

    /// `(α³/24)‖H‖₂` against the minimum of `|H|` over `10⁴` samples of
    /// `[0, π)` at distance at least `α` from the roots.
    pub fn min_bound(&self, alpha: f64) -> Result<(f64, f64), BoundsError> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(BoundsError::Domain(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        let fac = self.roots()?;
        let n = 10_000;
        let mut min = f64::INFINITY;
        // |H| has period π
        for k in 0..n {
            let t = PI * k as f64 / n as f64;
            if fac.root_distance(t) >= alpha {
                min = min.min(self.eval(t).abs());
            }
        }
        if !min.is_finite() {
            return Err(BoundsError::EmptyRegion { alpha });
        }
        Ok((alpha.powi(3) / 24.0 * self.l2_norm(), min))
    }
}

pub fn trig_roots(h: &TrigCubic) -> Result<TrigFactorization, BoundsError> {
    h.roots()
}

pub fn trig_min_bound(h: &TrigCubic, alpha: f64) -> Result<(f64, f64), BoundsError> {
    h.min_bound(alpha)
}
