//! Exact Gaussian rationals `p + q·i` with `p, q ∈ ℚ`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Self::new(&self.re / &norm, -(&self.im / &norm)))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Self::new(-self.im.clone(), self.re.clone())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator beyond f64 range
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl Default for GaussRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add<&GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        // skip the cross terms when either factor is purely real or imaginary
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => GaussRational::real(&self.re * &rhs.re),
            (true, false) => GaussRational::new(&self.re * &rhs.re, &self.re * &rhs.im),
            (false, true) => GaussRational::new(&self.re * &rhs.re, &self.im * &rhs.re),
            (false, false) => GaussRational::new(
                &self.re * &rhs.re - &self.im * &rhs.im,
                &self.re * &rhs.im + &self.im * &rhs.re,
            ),
        }
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, rhs: &GaussRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRational> for GaussRational {
    fn sub_assign(&mut self, rhs: &GaussRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

fn fmt_ratio(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical form: `3`, `-1/2`, `2/3*I`, `(1/2 - 5*I)`.
impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_ratio(&self.re, f),
            (true, false) => {
                fmt_ratio(&self.im, f)?;
                write!(f, "*I")
            }
            (false, false) => {
                write!(f, "(")?;
                fmt_ratio(&self.re, f)?;
                if self.im.is_negative() {
                    write!(f, " - ")?;
                    fmt_ratio(&-self.im.clone(), f)?;
                } else {
                    write!(f, " + ")?;
                    fmt_ratio(&self.im, f)?;
                }
                write!(f, "*I)")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_i_is_minus_i() {
        let inv = GaussRational::i().inv().unwrap();
        assert_eq!(inv, -GaussRational::i());
        assert!(GaussRational::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussRational::from_ratio(-1, 2).to_string(), "-1/2");
        let z = GaussRational::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::from_integer((-5).into()),
        );
        assert_eq!(z.to_string(), "(1/2 - 5*I)");
        assert_eq!(GaussRational::i().scale(&BigRational::new(2.into(), 3.into())).to_string(), "2/3*I");
    }

    #[test]
    fn product_matches_complex_rule() {
        let a = GaussRational::new(BigRational::from_integer(1.into()), BigRational::from_integer(2.into()));
        let b = GaussRational::new(BigRational::from_integer((-2).into()), BigRational::from_integer(1.into()));
        // (1+2i)(-2+i) = -4 - 3i
        let p = &a * &b;
        assert_eq!(p, GaussRational::new(BigRational::from_integer((-4).into()), BigRational::from_integer((-3).into())));
    }
}
