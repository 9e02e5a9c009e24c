//! Univariate complex polynomial helpers.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Value of `Σ c_k x^k` (coefficients in increasing degree).
pub fn horner(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect()
}

/// Drops leading coefficients that are negligible against the largest one.
pub fn trim(coeffs: &[Complex64], rel: f64) -> Vec<Complex64> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut out = coeffs.to_vec();
    while let Some(last) = out.last() {
        if last.norm() <= rel * scale {
            out.pop();
        } else {
            break;
        }
    }
    out
}

/// All roots of `Σ c_k x^k` as eigenvalues of the companion matrix, each
/// polished by a few Newton steps.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let full = trim(coeffs, 0.0);
    // exact zero roots first; the Schur iteration stalls on nilpotent input
    let zeros = full.iter().take_while(|c| c.norm() == 0.0).count().min(full.len().saturating_sub(1));
    let p = full[zeros..].to_vec();
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    let n = p.len().saturating_sub(1);
    if n == 0 {
        return out;
    }
    let lead = p[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -p[i] / lead;
    }
    let eig: Vec<Complex64> = match m.try_schur(f64::EPSILON, 10_000) {
        Some(s) => s.eigenvalues().expect("complex Schur form is triangular").iter().copied().collect(),
        None => durand_kerner(&p),
    };
    let dp = derivative(&p);
    out.extend(eig.iter()
        .map(|&r0| {
            let mut r = r0;
            for _ in 0..8 {
                let d = horner(&dp, r);
                if d.norm() == 0.0 {
                    break;
                }
                let step = horner(&p, r) / d;
                let next = r - step;
                if !(next.re.is_finite() && next.im.is_finite()) || horner(&p, next).norm() > horner(&p, r).norm() {
                    break;
                }
                r = next;
                if step.norm() <= 1e-16 * (1.0 + r.norm()) {
                    break;
                }
            }
            r
        }));
    out
}

fn durand_kerner(p: &[Complex64]) -> Vec<Complex64> {
    let n = p.len() - 1;
    let lead = p[n];
    let monic: Vec<Complex64> = p.iter().map(|c| c / lead).collect();
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let den = (0..n).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if den.norm() == 0.0 {
                continue;
            }
            let step = horner(&monic, z[i]) / den;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved <= 1e-15 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cubic_roots() {
        // (x − 1)(x + 2)(x − i) = x³ + (1 − i)x² + (−2 − i)x + 2i
        let p = [c(0.0, 2.0), c(-2.0, -1.0), c(1.0, -1.0), c(1.0, 0.0)];
        let mut roots = poly_roots(&p);
        roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        let want = [c(-2.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)];
        for (r, w) in roots.iter().zip(want) {
            assert!((r - w).norm() < 1e-12, "{r} vs {w}");
        }
    }

    #[test]
    fn trimmed_degree() {
        let p = [c(1.0, 0.0), c(1.0, 0.0), c(1e-30, 0.0)];
        assert_eq!(trim(&p, 1e-14).len(), 2);
        assert_eq!(poly_roots(&trim(&p, 1e-14)), vec![c(-1.0, 0.0)]);
    }

    #[test]
    fn repeated_zero_roots() {
        let p = [c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)];
        let mut roots = poly_roots(&p);
        roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert_eq!(roots.len(), 3);
        assert!(roots[0].norm() == 0.0 && roots[1].norm() == 0.0);
        assert!((roots[2] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(poly_roots(&[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]).iter().all(|r| r.norm() == 0.0));
    }

    #[test]
    fn durand_kerner_cubic() {
        let p = [c(-6.0, 0.0), c(11.0, 0.0), c(-6.0, 0.0), c(1.0, 0.0)];
        let mut roots = durand_kerner(&p);
        roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        for (r, w) in roots.iter().zip([1.0, 2.0, 3.0]) {
            assert!((r - c(w, 0.0)).norm() < 1e-12);
        }
    }
}
