//! Singular points of the complexified field and the tame region.
//!
//! With `v` standing for `z̄`, the singular points other than the origin
//! solve `P = μu + Au² + Buv + Cv² = 0`, `Q = μ̄v + Āv² + B̄uv + C̄u² = 0` in
//! `ℂ²`. Real points are those with `v = ū`. Distances in `ℂ²` use
//! `d² = (|Δu|² + |Δv|²)/2`, so that for real points they agree with the
//! planar distance.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::FieldParams;
use crate::error::FieldError;
use crate::numeric::{poly_roots, trim};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularPoint {
    pub u: Complex64,
    pub v: Complex64,
    pub is_real: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularPointSet {
    pub points: Vec<SingularPoint>,
    pub degenerate: bool,
}

type Poly = Vec<Complex64>;

fn pmul(a: &[Complex64], b: &[Complex64]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn psub(a: &[Complex64], b: &[Complex64]) -> Poly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| a.get(k).copied().unwrap_or_default() - b.get(k).copied().unwrap_or_default())
        .collect()
}

fn residual(f: &FieldParams, u: Complex64, v: Complex64) -> (Complex64, Complex64) {
    let mu = f.mu();
    let p = mu * u + f.a * u * u + f.b * u * v + f.c * v * v;
    let q = mu.conj() * v + f.a.conj() * v * v + f.b.conj() * u * v + f.c.conj() * u * u;
    (p, q)
}

fn newton(f: &FieldParams, mut u: Complex64, mut v: Complex64) -> (Complex64, Complex64) {
    let mu = f.mu();
    let (ac, bc, cc) = (f.a.conj(), f.b.conj(), f.c.conj());
    for _ in 0..60 {
        let (p, q) = residual(f, u, v);
        let j11 = mu + 2.0 * f.a * u + f.b * v;
        let j12 = f.b * u + 2.0 * f.c * v;
        let j21 = bc * v + 2.0 * cc * u;
        let j22 = mu.conj() + 2.0 * ac * v + bc * u;
        let det = j11 * j22 - j12 * j21;
        if det.norm() == 0.0 {
            break;
        }
        let du = (p * j22 - q * j12) / det;
        let dv = (q * j11 - p * j21) / det;
        u -= du;
        v -= dv;
        if du.norm() + dv.norm() <= 1e-15 * (1.0 + u.norm() + v.norm()) {
            break;
        }
    }
    (u, v)
}

fn quadratic_roots(c2: Complex64, c1: Complex64, c0: Complex64) -> Vec<Complex64> {
    poly_roots(&trim(&[c0, c1, c2], 1e-14))
}

/// Resultant in `v` of `P` and `Q`, a polynomial in `u` of degree at most 4.
fn resultant(f: &FieldParams) -> Poly {
    let zero = Complex64::new(0.0, 0.0);
    let mu = f.mu();
    let p2 = vec![f.c];
    let p1 = vec![zero, f.b];
    let p0 = vec![zero, mu, f.a];
    let q2 = vec![f.a.conj()];
    let q1 = vec![mu.conj(), f.b.conj()];
    let q0 = vec![zero, zero, f.c.conj()];
    let d = psub(&pmul(&p2, &q0), &pmul(&p0, &q2));
    let e = psub(&pmul(&p2, &q1), &pmul(&p1, &q2));
    let g = psub(&pmul(&p1, &q0), &pmul(&p0, &q1));
    psub(&pmul(&d, &d), &pmul(&e, &g))
}

/// True when the resultant vanishes identically. A common factor of `P` and
/// `Q` must then be `μ + Au + Bv`, which forces `C = 0` and `Bμ̄ = μĀ`.
fn is_degenerate(f: &FieldParams, tol: f64) -> bool {
    let res = resultant(f);
    let scale = (1.0 + f.mu().norm() + f.a.norm() + f.b.norm() + f.c.norm()).powi(4);
    res.iter().all(|c| c.norm() <= tol.max(1e-13) * scale)
}

/// Isolated singular points other than the origin, refined to `tol`.
pub fn singular_points(field: &FieldParams, tol: f64) -> Result<SingularPointSet, FieldError> {
    if !(tol > 0.0) {
        return Err(FieldError::InvalidInput("tol must be positive".into()));
    }
    if field.a == Complex64::new(0.0, 0.0) && field.c == Complex64::new(0.0, 0.0) {
        // P = u(μ + Bv), Q = v(μ̄ + B̄u): the resultant is formally zero
        let mut points = Vec::new();
        if field.b != Complex64::new(0.0, 0.0) {
            let u = -field.mu().conj() / field.b.conj();
            let v = -field.mu() / field.b;
            points.push(SingularPoint { u, v, is_real: (v - u.conj()).norm() <= tol });
        }
        return Ok(SingularPointSet { points, degenerate: false });
    }
    if is_degenerate(field, tol) {
        return Err(FieldError::Degenerate);
    }
    let res = trim(&resultant(field), 1e-14);
    let mu = field.mu();
    let mut us: Vec<Complex64> = Vec::new();
    for r in poly_roots(&res) {
        if us.iter().all(|u| (u - r).norm() > 1e-7 * (1.0 + r.norm())) {
            us.push(r);
        }
    }

    let mut points: Vec<SingularPoint> = Vec::new();
    for u0 in us {
        let mut vs = quadratic_roots(field.c, field.b * u0, mu * u0 + field.a * u0 * u0);
        vs.extend(quadratic_roots(field.a.conj(), mu.conj() + field.b.conj() * u0, field.c.conj() * u0 * u0));
        for v0 in vs {
            let (u, v) = newton(field, u0, v0);
            let (p, q) = residual(field, u, v);
            if p.norm() > tol || q.norm() > tol {
                continue;
            }
            if u.norm() + v.norm() <= tol {
                continue;
            }
            if points.iter().any(|s| (s.u - u).norm() + (s.v - v).norm() <= tol.max(1e-9)) {
                continue;
            }
            let is_real = (v - u.conj()).norm() <= tol;
            points.push(SingularPoint { u, v, is_real });
        }
    }
    points.sort_by(|x, y| {
        (x.u.re, x.u.im, x.v.re, x.v.im).partial_cmp(&(y.u.re, y.u.im, y.v.re, y.v.im)).unwrap()
    });
    Ok(SingularPointSet { points, degenerate: false })
}

/// `|z| ≤ δ⁻¹` minus the open `δ`-neighbourhoods of the non-origin singular
/// points, with `z` embedded in `ℂ²` as `(z, z̄)`.
#[derive(Clone, Debug)]
pub struct TameRegion {
    delta: f64,
    points: Vec<SingularPoint>,
    /// `(μ, A, B)` of the singular line, for singular fields.
    line: Option<(Complex64, Complex64, Complex64)>,
}

/// Tolerance used when locating singular points for the tame region.
pub const SINGULAR_TOL: f64 = 1e-10;

impl TameRegion {
    pub fn new(field: &FieldParams, delta: f64) -> Self {
        match singular_points(field, SINGULAR_TOL) {
            Ok(set) => Self { delta, points: set.points, line: None },
            Err(_) => Self { delta, points: Vec::new(), line: Some((field.mu(), field.a, field.b)) },
        }
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn points(&self) -> &[SingularPoint] {
        &self.points
    }

    pub fn is_degenerate(&self) -> bool {
        self.line.is_some()
    }

    /// Smallest distance from `(z, z̄)` to the singular set minus the origin.
    pub fn singular_distance(&self, z: Complex64) -> f64 {
        let zc = z.conj();
        let mut d = f64::INFINITY;
        for s in &self.points {
            d = d.min((((z - s.u).norm_sqr() + (zc - s.v).norm_sqr()) / 2.0).sqrt());
        }
        if let Some((mu, a, b)) = self.line {
            let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
            d = d.min((mu + a * z + b * zc).norm() / n / std::f64::consts::SQRT_2);
        }
        d
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.norm() <= 1.0 / self.delta && self.singular_distance(z) >= self.delta
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Form;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn field(l: f64, a: Complex64, b: Complex64, cc: Complex64) -> FieldParams {
        FieldParams { lambda1: l, a, b, c: cc, form: Form::N1 }
    }

    #[test]
    fn linear_field_has_none() {
        let s = singular_points(&FieldParams::linear(0.3), 1e-12).unwrap();
        assert!(s.points.is_empty());
    }

    #[test]
    fn hand_solved_points() {
        // iu + u² = 0, −iv + v² = 0
        let f = field(0.0, c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let s = singular_points(&f, 1e-12).unwrap();
        let want = [(c(0.0, 0.0), c(0.0, 1.0), false), (c(0.0, -1.0), c(0.0, 0.0), false), (c(0.0, -1.0), c(0.0, 1.0), true)];
        assert_eq!(s.points.len(), 3);
        for (u, v, real) in want {
            let hit = s.points.iter().find(|p| (p.u - u).norm() + (p.v - v).norm() < 1e-10).expect("point present");
            assert_eq!(hit.is_real, real);
        }
    }

    #[test]
    fn singular_field_is_degenerate() {
        let mu = c(0.0, 1.0);
        let f = field(0.0, c(1.0, 0.0), mu / mu.conj(), c(0.0, 0.0));
        assert_eq!(singular_points(&f, 1e-10), Err(FieldError::Degenerate));
        let region = TameRegion::new(&f, 0.1);
        assert!(region.is_degenerate());
        // i + z − z̄ = 0 is the horizontal line Im z = −1/2
        assert!(!region.contains(c(0.3, -0.5)));
        assert!(!region.contains(c(-2.0, -0.45)));
        assert!(region.contains(c(-2.0, -0.35)));
        assert!(region.contains(c(0.0, 0.0)));
    }

    #[test]
    fn region_examples() {
        let f = field(0.0, c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let r = TameRegion::new(&f, 0.1);
        assert!(r.contains(c(0.0, 0.0)));
        assert!(!r.contains(c(20.0, 0.0)));
        assert!(!r.contains(c(0.0, -0.95)));
        assert!(r.contains(c(0.0, -0.5)));
    }

    #[test]
    fn random_fields_residuals() {
        let fields = [
            field(0.2, c(1.0, 0.0), c(0.4, -1.1), c(0.3, 0.6)),
            field(1.5, c(0.3, 0.2), c(2.0, 0.0), c(-0.5, 0.1)),
            field(0.0, c(-0.2, 0.7), c(1.0, 1.0), c(1.0, 0.0)),
        ];
        for f in fields {
            let s = singular_points(&f, 1e-10).unwrap();
            assert!(!s.points.is_empty());
            for p in &s.points {
                let (a, b) = residual(&f, p.u, p.v);
                assert!(a.norm() <= 1e-9 && b.norm() <= 1e-9);
            }
        }
    }
}
