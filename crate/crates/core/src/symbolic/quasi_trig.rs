//! Quasi-trigonometric polynomials `Σ p_{k,m} θ^m e^{ikθ}` whose coefficients
//! are [`ParamPoly`]s.
//!
//! The class is closed under products and under integration from `0`, which
//! is all the Bautin recursion needs. Secular factors `θ^m` arise whenever a
//! zero-frequency term is integrated and turn into powers of `2π` at the
//! period.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use super::gauss::GaussRational;
use super::param_poly::{Monomial, ParamPoly, Var};

/// `(frequency k, θ-power m)`.
pub type TrigKey = (i64, u32);

#[derive(Clone, Debug, Default)]
pub struct QuasiTrigPoly {
    terms: BTreeMap<TrigKey, ParamPoly>,
    real_valued: bool,
}

impl QuasiTrigPoly {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new(), real_valued: true }
    }

    pub fn one() -> Self {
        Self::from_param(ParamPoly::one())
    }

    /// A θ-independent element. Real-valued when the coefficients are real.
    pub fn from_param(p: ParamPoly) -> Self {
        let real_valued = p.has_real_coefficients();
        let mut out = Self { terms: BTreeMap::new(), real_valued };
        out.add_entry((0, 0), p);
        out
    }

    /// `c·θ^m e^{ikθ}`; not flagged real-valued.
    pub fn monomial(c: ParamPoly, k: i64, m: u32) -> Self {
        let mut out = Self { terms: BTreeMap::new(), real_valued: false };
        out.add_entry((k, m), c);
        out.real_valued = out.is_conjugate_symmetric();
        out
    }

    pub fn theta() -> Self {
        Self::monomial(ParamPoly::one(), 0, 1)
    }

    /// `cos(kθ) = (e^{ikθ} + e^{-ikθ})/2`.
    pub fn cos(k: i64) -> Self {
        let half = ParamPoly::constant(GaussRational::from_ratio(1, 2));
        let mut out = Self::zero();
        out.add_entry((k, 0), half.clone());
        out.add_entry((-k, 0), half);
        out.real_valued = true;
        out
    }

    /// `sin(kθ) = (e^{ikθ} − e^{-ikθ})/(2i)`.
    pub fn sin(k: i64) -> Self {
        let c = GaussRational::new(BigRational::from_integer(0.into()), BigRational::new((-1).into(), 2.into()));
        let mut out = Self::zero();
        out.add_entry((k, 0), ParamPoly::constant(c.clone()));
        out.add_entry((-k, 0), ParamPoly::constant(-c));
        out.real_valued = true;
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether this value was built from real-valued pieces by operations that
    /// preserve real values. See [`Self::is_conjugate_symmetric`] for the check.
    pub fn real_valued(&self) -> bool {
        self.real_valued
    }

    pub fn set_real_valued(&mut self, flag: bool) {
        self.real_valued = flag;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TrigKey, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, k: i64, m: u32) -> Option<&ParamPoly> {
        self.terms.get(&(k, m))
    }

    /// Total number of parameter monomials over all entries.
    pub fn term_count(&self) -> usize {
        self.terms.values().map(ParamPoly::len).sum()
    }

    pub fn max_abs_frequency(&self) -> Option<i64> {
        self.terms.keys().map(|(k, _)| k.abs()).max()
    }

    pub fn frequencies(&self) -> Vec<i64> {
        let mut ks: Vec<i64> = self.terms.keys().map(|(k, _)| *k).collect();
        ks.dedup();
        ks
    }

    pub fn max_theta_power(&self) -> Option<u32> {
        self.terms.keys().map(|(_, m)| *m).max()
    }

    fn add_entry(&mut self, key: TrigKey, p: ParamPoly) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(p);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign(&p);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `p_{-k,m} = conj(p_{k,m})` for every entry.
    pub fn is_conjugate_symmetric(&self) -> bool {
        self.terms.iter().all(|(&(k, m), p)| match self.terms.get(&(-k, m)) {
            Some(q) => *q == p.conj(),
            None => false,
        })
    }

    /// Pointwise complex conjugate (parameters and θ real).
    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(k, m), p)| ((-k, m), p.conj())).collect(),
            real_valued: self.real_valued,
        }
    }

    pub fn scale(&self, c: &ParamPoly) -> Self {
        let mut out = Self { terms: BTreeMap::new(), real_valued: self.real_valued && c.has_real_coefficients() };
        for (key, p) in &self.terms {
            out.add_entry(*key, p * c);
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> Self {
        let c = GaussRational::from_int(n);
        Self {
            terms: if n == 0 {
                BTreeMap::new()
            } else {
                self.terms.iter().map(|(k, p)| (*k, p.scale(&c))).collect()
            },
            real_valued: self.real_valued,
        }
    }

    /// Antiderivative vanishing at `θ = 0`.
    ///
    /// For `k = 0` this is `θ^{m+1}/(m+1)`. For `k ≠ 0`, with `s = 1/(ik)`,
    /// `∫₀^θ t^m e^{ikt} dt = Σ_{j=0}^{m} (−1)^{m−j} (m!/j!) s^{m−j+1} θ^j e^{ikθ} + (−1)^{m+1} m! s^{m+1}`.
    pub fn integrate(&self) -> Self {
        let mut out = Self { terms: BTreeMap::new(), real_valued: self.real_valued };
        for (&(k, m), p) in &self.terms {
            if k == 0 {
                let c = GaussRational::from_ratio(1, m as i64 + 1);
                out.add_entry((0, m + 1), p.scale(&c));
                continue;
            }
            let s = GaussRational::from_int(k).mul_i().inv().expect("k != 0");
            // s^n for n = 1..=m+1
            let mut s_pow = vec![GaussRational::one()];
            for n in 1..=(m as usize + 1) {
                let next = &s_pow[n - 1] * &s;
                s_pow.push(next);
            }
            for j in 0..=m {
                // (-1)^{m-j} m!/j!
                let mut falling = BigInt::from(1);
                for t in (j + 1)..=m {
                    falling *= t;
                }
                if (m - j) % 2 == 1 {
                    falling = -falling;
                }
                let coef = s_pow[(m - j + 1) as usize].scale(&BigRational::from_integer(falling));
                out.add_entry((k, j), p.scale(&coef));
            }
            let mut fact = BigInt::from(1);
            for t in 1..=m {
                fact *= t;
            }
            if m % 2 == 0 {
                fact = -fact;
            }
            let coef = s_pow[(m + 1) as usize].scale(&BigRational::from_integer(fact));
            out.add_entry((0, 0), p.scale(&coef));
        }
        out
    }

    /// `d/dθ`.
    pub fn derivative(&self) -> Self {
        let mut out = Self { terms: BTreeMap::new(), real_valued: self.real_valued };
        for (&(k, m), p) in &self.terms {
            if m > 0 {
                out.add_entry((k, m - 1), p.scale(&GaussRational::from_int(m as i64)));
            }
            if k != 0 {
                out.add_entry((k, m), p.scale(&GaussRational::from_int(k).mul_i()));
            }
        }
        out
    }

    /// Value at `θ = 2π`: `e^{2πik} = 1` and `θ^m = 2^m pi^m` with `pi` symbolic.
    pub fn eval_2pi(&self) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (&(_, m), p) in &self.terms {
            let mut mono = Monomial::ONE;
            mono.0[Var::Pi as usize] = m as u16;
            let two_m = GaussRational::real(BigRational::from_integer(BigInt::from(2).pow(m)));
            out.add_assign(&p.scale(&two_m).mul_monomial(&mono));
        }
        out
    }

    /// Numeric value at real `θ` and parameters `[a1, a2, b1, b2, c1, c2]`.
    pub fn eval_f64(&self, theta: f64, params: &[f64; 6]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(k, m), p) in &self.terms {
            let c = p.eval_f64(params);
            acc += c * theta.powi(m as i32) * Complex64::from_polar(1.0, k as f64 * theta);
        }
        acc
    }
}

/// Equality of the represented functions; the real-valued flag is metadata.
impl PartialEq for QuasiTrigPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for QuasiTrigPoly {}

impl Add<&QuasiTrigPoly> for &QuasiTrigPoly {
    type Output = QuasiTrigPoly;
    fn add(self, rhs: &QuasiTrigPoly) -> QuasiTrigPoly {
        let mut out = self.clone();
        for (k, p) in &rhs.terms {
            out.add_entry(*k, p.clone());
        }
        out.real_valued = self.real_valued && rhs.real_valued;
        out
    }
}

impl Sub<&QuasiTrigPoly> for &QuasiTrigPoly {
    type Output = QuasiTrigPoly;
    fn sub(self, rhs: &QuasiTrigPoly) -> QuasiTrigPoly {
        let mut out = self.clone();
        for (k, p) in &rhs.terms {
            out.add_entry(*k, -p);
        }
        out.real_valued = self.real_valued && rhs.real_valued;
        out
    }
}

impl Neg for &QuasiTrigPoly {
    type Output = QuasiTrigPoly;
    fn neg(self) -> QuasiTrigPoly {
        QuasiTrigPoly {
            terms: self.terms.iter().map(|(k, p)| (*k, -p)).collect(),
            real_valued: self.real_valued,
        }
    }
}

/// Frequencies add and θ-powers add.
impl Mul<&QuasiTrigPoly> for &QuasiTrigPoly {
    type Output = QuasiTrigPoly;
    fn mul(self, rhs: &QuasiTrigPoly) -> QuasiTrigPoly {
        let mut acc: BTreeMap<TrigKey, ParamPoly> = BTreeMap::new();
        for (&(k1, m1), p1) in &self.terms {
            for (&(k2, m2), p2) in &rhs.terms {
                let k = k1.checked_add(k2).expect("frequency overflow");
                acc.entry((k, m1 + m2)).or_default().add_product(p1, p2);
            }
        }
        acc.retain(|_, p| !p.is_zero());
        QuasiTrigPoly { terms: acc, real_valued: self.real_valued && rhs.real_valued }
    }
}

/// Canonical serialization: one entry per line, `[k=<k>,m=<m>] <poly>`,
/// ordered by frequency then θ-power; `0` when empty.
impl fmt::Display for QuasiTrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for ((k, m), p) in &self.terms {
            writeln!(f, "[k={k},m={m}] {p}")?;
        }
        Ok(())
    }
}
