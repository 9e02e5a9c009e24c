//! Arbitrary-precision real arithmetic for constant and bound evaluation.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

const RM: RoundingMode = RoundingMode::ToEven;

/// Working context: binary precision plus the constants cache.
pub struct HighPrecision {
    digits: u32,
    bits: usize,
    cc: Consts,
}

impl std::fmt::Debug for HighPrecision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HighPrecision").field("digits", &self.digits).field("bits", &self.bits).finish()
    }
}

impl HighPrecision {
    /// Context carrying at least `digits` significant decimal digits plus
    /// a guard word.
    pub fn with_digits(digits: u32) -> Self {
        let digits = digits.max(1);
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64;
        let bits = bits.div_ceil(64) * 64;
        Self { digits, bits, cc: Consts::new().expect("constants cache") }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.bits)
    }

    /// Exact binary value of `x`.
    pub fn from_f64(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.bits)
    }

    /// Decimal literal rounded to the working precision.
    pub fn parse(&mut self, s: &str) -> BigFloat {
        BigFloat::parse(s, Radix::Dec, self.bits, RM, &mut self.cc)
    }

    pub fn ratio(&self, num: i64, den: i64) -> BigFloat {
        self.int(num).div(&self.int(den), self.bits, RM)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.bits, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }

    pub fn powi(&self, a: &BigFloat, n: usize) -> BigFloat {
        a.powi(n, self.bits, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.bits, RM)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.bits, RM, &mut self.cc)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.bits, RM, &mut self.cc)
    }

    pub fn ln10(&mut self) -> BigFloat {
        self.cc.ln_10(self.bits, RM)
    }

    pub fn ln2(&mut self) -> BigFloat {
        self.cc.ln_2(self.bits, RM)
    }

    /// Decimal rendering with the context's digit count.
    pub fn to_decimal(&mut self, a: &BigFloat) -> String {
        let rounded = self.round_to_digits(a);
        rounded.format(Radix::Dec, RM, &mut self.cc).unwrap_or_else(|_| "NaN".into())
    }

    fn round_to_digits(&mut self, a: &BigFloat) -> BigFloat {
        // reformat through a precision matching the requested digits
        let bits = (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as usize;
        let mut r = a.clone();
        r.set_precision(bits.max(64), RM).ok();
        r
    }

    /// Nearest `f64`, via the decimal form.
    pub fn to_f64(&mut self, a: &BigFloat) -> f64 {
        let s = a.format(Radix::Dec, RM, &mut self.cc).unwrap_or_else(|_| "NaN".into());
        parse_decimal(&s)
    }
}

fn parse_decimal(s: &str) -> f64 {
    match s {
        "Inf" => f64::INFINITY,
        "-Inf" => f64::NEG_INFINITY,
        _ => s.parse::<f64>().unwrap_or(f64::NAN),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_matches_double() {
        let mut hp = HighPrecision::with_digits(50);
        let pi = hp.pi();
        assert_eq!(hp.to_f64(&pi), std::f64::consts::PI);
        let s = hp.to_decimal(&pi);
        assert!(s.starts_with("3.14159265358979323846264338327950288419716939937"), "{s}");
    }

    #[test]
    fn ln_exp_roundtrip() {
        let mut hp = HighPrecision::with_digits(40);
        let x = hp.ratio(7, 3);
        let y = hp.ln(&x);
        let back = hp.exp(&y);
        let err = hp.sub(&back, &x);
        assert!(hp.to_f64(&err).abs() < 1e-38);
    }

    #[test]
    fn precision_grows_with_digits() {
        assert!(HighPrecision::with_digits(100).bits() > HighPrecision::with_digits(50).bits());
    }
}
