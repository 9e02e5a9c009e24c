//! The classical Bautin recursion at `λ₁ = 0`.
//!
//! Writing the complexified radial equation as `dw/dθ = Σ_{i≥2} R_i(θ) w^i`
//! with `R_i = (−1)^i f g^{i−2}` and expanding the solution through `w(0) = x`
//! as `w = Σ v_i(θ) x^i`, each `v_n` solves
//! `dv_n/dθ = Σ_{i=2}^{n} R_i · [x^n](Σ_j v_j x^j)^i`, `v_n(0) = 0` (`n ≥ 2`),
//! and `v_1 ≡ 1`. The return map is `P(x) = Σ v_j(2π) x^j`.

use crate::error::BautinError;
use crate::symbolic::{build_fg, ParamPoly, QuasiTrigPoly};

/// Highest order for which the recursion is carried out.
pub const MAX_JET_ORDER: usize = 7;

/// Symbolic `f`, `g` and the cached powers of `g`.
#[derive(Clone, Debug)]
pub struct BautinSystem {
    f: QuasiTrigPoly,
    g: QuasiTrigPoly,
    g_powers: Vec<QuasiTrigPoly>,
}

impl Default for BautinSystem {
    fn default() -> Self {
        Self::new()
    }
}

impl BautinSystem {
    pub fn new() -> Self {
        let (f, g) = build_fg();
        Self { f, g, g_powers: vec![QuasiTrigPoly::one()] }
    }

    pub fn f(&self) -> &QuasiTrigPoly {
        &self.f
    }

    pub fn g(&self) -> &QuasiTrigPoly {
        &self.g
    }

    fn g_power(&mut self, n: usize) -> &QuasiTrigPoly {
        while self.g_powers.len() <= n {
            let next = self.g_powers.last().unwrap() * &self.g;
            self.g_powers.push(next);
        }
        &self.g_powers[n]
    }

    /// `R_i` at `λ₁ = 0`: `R_1 = 0`, `R_i = (−1)^i f g^{i−2}`.
    pub fn radial_coefficient(&mut self, i: usize) -> QuasiTrigPoly {
        assert!(i >= 1, "radial coefficients start at i = 1");
        if i == 1 {
            return QuasiTrigPoly::zero();
        }
        let f = self.f.clone();
        let r = &f * self.g_power(i - 2);
        if i % 2 == 0 {
            r
        } else {
            -&r
        }
    }

    /// `v_1, …, v_n` (index 0 holds `v_1`).
    pub fn variational_coefficients(&mut self, n: usize) -> Result<Vec<QuasiTrigPoly>, BautinError> {
        if n == 0 || n > MAX_JET_ORDER {
            return Err(BautinError::OrderOutOfRange { requested: n, max: MAX_JET_ORDER });
        }
        let radial: Vec<QuasiTrigPoly> = (0..=n).map(|i| if i == 0 { QuasiTrigPoly::zero() } else { self.radial_coefficient(i) }).collect();

        // powers[i][m] = [x^m] W^i for i, m ≥ 1, where W = Σ v_j x^j
        let mut powers: Vec<Vec<QuasiTrigPoly>> = vec![vec![QuasiTrigPoly::zero(); n + 1]; n + 1];
        let mut v: Vec<QuasiTrigPoly> = vec![QuasiTrigPoly::zero(); n + 1];
        v[1] = QuasiTrigPoly::one();
        powers[1][1] = QuasiTrigPoly::one();

        for m in 2..=n {
            // [x^m] W^i for 2 ≤ i ≤ m only involves v_1..v_{m−1}
            for i in 2..=m {
                let mut acc = powers[i - 1][m - 1].clone(); // v_1 = 1
                for j in 2..=(m - i + 1) {
                    acc = &acc + &(&v[j] * &powers[i - 1][m - j]);
                }
                powers[i][m] = acc;
            }
            let mut rhs = QuasiTrigPoly::zero();
            for (i, r) in radial.iter().enumerate().take(m + 1).skip(2) {
                rhs = &rhs + &(r * &powers[i][m]);
            }
            let vm = rhs.integrate();
            powers[1][m] = vm.clone();
            v[m] = vm;
        }
        Ok(v.into_iter().skip(1).collect())
    }
}

/// Coefficients `a_1 … a_n` of `P(x) = Σ a_j x^j` at `λ₁ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct JetCoefficients {
    pub a: Vec<ParamPoly>,
}

impl JetCoefficients {
    /// `a_j` for `1 ≤ j ≤ n`.
    pub fn get(&self, j: usize) -> &ParamPoly {
        &self.a[j - 1]
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }
}

pub fn jet_from_variational(v: &[QuasiTrigPoly]) -> JetCoefficients {
    JetCoefficients { a: v.iter().map(QuasiTrigPoly::eval_2pi).collect() }
}
