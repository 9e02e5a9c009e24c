//! Multivariate polynomials in the field parameters `a1, a2, b1, b2, c1, c2`
//! and a formal symbol `pi`, with exact Gaussian-rational coefficients.
//!
//! Terms are kept in graded lexicographic order with
//! `a1 < a2 < b1 < b2 < c1 < c2 < pi`; zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Float;

use super::gauss::GaussRational;

pub const NVARS: usize = 7;

/// Variables of a [`ParamPoly`], in increasing term-order rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    A1 = 0,
    A2 = 1,
    B1 = 2,
    B2 = 3,
    C1 = 4,
    C2 = 5,
    Pi = 6,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::A1, Var::A2, Var::B1, Var::B2, Var::C1, Var::C2, Var::Pi];

    pub fn name(self) -> &'static str {
        match self {
            Var::A1 => "a1",
            Var::A2 => "a2",
            Var::B1 => "b1",
            Var::B2 => "b2",
            Var::C1 => "c1",
            Var::C2 => "c2",
            Var::Pi => "pi",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == s)
    }
}

/// Exponent vector indexed by [`Var`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v as usize] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.0[v as usize]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0.iter()) {
            *x = x.checked_add(*y).expect("monomial exponent overflow");
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut e = other.0;
        for (x, y) in e.iter_mut().zip(self.0.iter()) {
            *x -= *y;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", v.name())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, GaussRational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GaussRational::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(GaussRational::one(), Monomial::var(v))
    }

    pub fn pi() -> Self {
        Self::var(Var::Pi)
    }

    pub fn term(c: GaussRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&GaussRational> {
        self.terms.get(m)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &GaussRational)> {
        self.terms.last_key_value()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: Monomial, c: &GaussRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &ParamPoly) {
        for (m, c) in &other.terms {
            self.add_term(*m, c);
        }
    }

    pub fn sub_assign(&mut self, other: &ParamPoly) {
        for (m, c) in &other.terms {
            self.add_term(*m, &-c);
        }
    }

    /// `self += a * b` without building the intermediate product.
    pub fn add_product(&mut self, a: &ParamPoly, b: &ParamPoly) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let c = ca * cb;
                let m = ma.mul(mb);
                match self.terms.entry(m) {
                    Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    Entry::Occupied(mut e) => {
                        *e.get_mut() += &c;
                    }
                }
            }
        }
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn scale(&self, c: &GaussRational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn scale_rational(&self, r: &BigRational) -> ParamPoly {
        self.scale(&GaussRational::real(r.clone()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> ParamPoly {
        ParamPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> ParamPoly {
        let mut out = ParamPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Complex conjugate, treating every variable as real.
    pub fn conj(&self) -> ParamPoly {
        ParamPoly { terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect() }
    }

    /// Real part, treating every variable as real.
    pub fn re_part(&self) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, &GaussRational::real(c.re.clone()));
        }
        out
    }

    /// Imaginary part, treating every variable as real.
    pub fn im_part(&self) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, &GaussRational::real(c.im.clone()));
        }
        out
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.terms.values().all(GaussRational::is_real)
    }

    /// Smallest and largest power of `pi` over all terms.
    pub fn pi_degree_range(&self) -> Option<(u16, u16)> {
        let mut it = self.terms.keys().map(|m| m.exponent(Var::Pi));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    pub fn is_pi_free(&self) -> bool {
        self.terms.keys().all(|m| m.exponent(Var::Pi) == 0)
    }

    /// Evaluates at real parameters `[a1, a2, b1, b2, c1, c2]` with `pi` set to `pi`,
    /// converting rational coefficients with `conv`.
    pub fn eval_with<T, F>(&self, params: &[T; 6], pi: T, conv: F) -> Complex<T>
    where
        T: Float,
        F: Fn(&BigRational) -> T,
    {
        let vals: [T; NVARS] = [params[0], params[1], params[2], params[3], params[4], params[5], pi];
        let mut acc = Complex::new(T::zero(), T::zero());
        for (m, c) in &self.terms {
            let mut mono = T::one();
            for (x, &e) in vals.iter().zip(m.0.iter()) {
                if e > 0 {
                    mono = mono * x.powi(e as i32);
                }
            }
            acc = acc + Complex::new(conv(&c.re) * mono, conv(&c.im) * mono);
        }
        acc
    }

    pub fn eval_f64(&self, params: &[f64; 6]) -> Complex<f64> {
        self.eval_with(params, std::f64::consts::PI, super::gauss::ratio_to_f64)
    }
}

impl From<GaussRational> for ParamPoly {
    fn from(c: GaussRational) -> Self {
        ParamPoly::constant(c)
    }
}

impl Add<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl Mul<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

/// Canonical serialization: terms in decreasing term order joined by ` + `,
/// each written `coefficient*monomial`; the zero polynomial is `0`.
impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m == Monomial::ONE {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Serialized as its canonical text form.
impl serde::Serialize for ParamPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Result of dividing a polynomial by an ordered list of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub cofactors: Vec<ParamPoly>,
    pub remainder: ParamPoly,
}

/// Multivariate division of `p` by `generators` in the fixed term order.
///
/// At each step the leading term of the running dividend is cancelled by the
/// first generator whose leading monomial divides it; otherwise it moves to
/// the remainder. On return `p = Σ cofactor_k·generator_k + remainder` and no
/// remainder term is divisible by a generator's leading monomial.
pub fn pp_reduce(p: &ParamPoly, generators: &[ParamPoly]) -> Reduction {
    let leads: Vec<Option<(Monomial, GaussRational)>> = generators
        .iter()
        .map(|g| g.leading_term().map(|(m, c)| (*m, c.inv().expect("nonzero leading coefficient"))))
        .collect();
    let mut cofactors = vec![ParamPoly::zero(); generators.len()];
    let mut remainder = ParamPoly::zero();
    let mut rest = p.clone();

    while let Some((lm, lc)) = rest.terms.pop_last() {
        let hit = leads.iter().enumerate().find_map(|(k, lead)| match lead {
            Some((gm, ginv)) if gm.divides(&lm) => Some((k, gm.quotient_of(&lm), &lc * ginv)),
            _ => None,
        });
        match hit {
            Some((k, qm, qc)) => {
                cofactors[k].add_term(qm, &qc);
                // the leading term cancels exactly, so subtract only the tail
                let (gm, _) = leads[k].as_ref().unwrap();
                for (m, c) in generators[k].terms.iter() {
                    if m == gm {
                        continue;
                    }
                    rest.add_term(m.mul(&qm), &-(c * &qc));
                }
            }
            None => remainder.add_term(lm, &lc),
        }
    }
    Reduction { cofactors, remainder }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: Var) -> ParamPoly {
        ParamPoly::var(v)
    }

    #[test]
    fn grlex_order_puts_pi_highest() {
        let pi = Monomial::var(Var::Pi);
        let c2 = Monomial::var(Var::C2);
        let a1sq = Monomial::var(Var::A1).mul(&Monomial::var(Var::A1));
        assert!(pi > c2);
        assert!(a1sq > pi);
        assert!(Monomial::var(Var::A2) > Monomial::var(Var::A1));
    }

    #[test]
    fn zero_is_additive_identity() {
        let p = &x(Var::A1) + &x(Var::B2).scale(&GaussRational::i());
        assert_eq!(&p + &ParamPoly::zero(), p);
    }

    #[test]
    fn imaginary_part_of_ab_is_g2() {
        let i = GaussRational::i();
        let a = &x(Var::A1) + &x(Var::A2).scale(&i);
        let b = &x(Var::B1) + &x(Var::B2).scale(&i);
        let prod = &a * &b;
        let g2 = &(&x(Var::A1) * &x(Var::B2)) + &(&x(Var::A2) * &x(Var::B1));
        assert_eq!(prod.im_part(), g2);
    }

    #[test]
    fn pi_squared() {
        let p = &ParamPoly::pi() * &ParamPoly::pi();
        assert_eq!(p.to_string(), "1*pi^2");
    }

    #[test]
    fn reduce_generator_by_itself() {
        let g2 = &(&x(Var::A1) * &x(Var::B2)) + &(&x(Var::A2) * &x(Var::B1));
        let g3 = &x(Var::C1) * &x(Var::C2);
        let r = pp_reduce(&g2, &[g2.clone(), g3.clone()]);
        assert_eq!(r.cofactors[0], ParamPoly::one());
        assert!(r.cofactors[1].is_zero());
        assert!(r.remainder.is_zero());

        let r0 = pp_reduce(&ParamPoly::zero(), &[g2, g3]);
        assert!(r0.remainder.is_zero() && r0.cofactors.iter().all(ParamPoly::is_zero));
    }

    #[test]
    fn reduction_identity_holds() {
        let g = &(&x(Var::A1) * &x(Var::B2)) + &x(Var::C1);
        let p = &(&(&x(Var::A1) * &x(Var::A1)) * &x(Var::B2)) + &x(Var::Pi);
        let r = pp_reduce(&p, std::slice::from_ref(&g));
        let back = &(&r.cofactors[0] * &g) + &r.remainder;
        assert_eq!(back, p);
    }

    #[test]
    fn evaluation() {
        let p = &(&x(Var::A1) * &x(Var::Pi)) + &ParamPoly::constant(GaussRational::i());
        let v = p.eval_f64(&[2.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!((v.re - 2.0 * std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(v.im, 1.0);
    }
}
