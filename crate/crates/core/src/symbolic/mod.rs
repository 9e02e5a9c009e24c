//! Exact arithmetic used by the Bautin jet computation.

mod gauss;
mod groebner;
mod param_poly;
mod parse;
mod quasi_trig;

pub use gauss::GaussRational;
pub use groebner::{groebner_basis, reduces_to_zero, BasisLimitExceeded};
pub use param_poly::{pp_reduce, Monomial, ParamPoly, Reduction, Var, NVARS};
pub use parse::{parse_param_poly, parse_quasi_trig};
pub use quasi_trig::{QuasiTrigPoly, TrigKey};

#[allow(unused_imports)]
pub(crate) use gauss::ratio_to_f64;

/// `A = a1 + i·a2`, `B = b1 + i·b2`, `C = c1 + i·c2` as parameter polynomials.
pub fn coefficient_symbols() -> [ParamPoly; 3] {
    let i = GaussRational::i();
    let mk = |re: Var, im: Var| &ParamPoly::var(re) + &ParamPoly::var(im).scale(&i);
    [mk(Var::A1, Var::A2), mk(Var::B1, Var::B2), mk(Var::C1, Var::C2)]
}

/// Symbolic `h = A e^{iθ} + B e^{−iθ} + C e^{−3iθ}`.
pub fn build_h() -> QuasiTrigPoly {
    let [a, b, c] = coefficient_symbols();
    let mut h = QuasiTrigPoly::monomial(a, 1, 0);
    h = &h + &QuasiTrigPoly::monomial(b, -1, 0);
    h = &h + &QuasiTrigPoly::monomial(c, -3, 0);
    h.set_real_valued(false);
    h
}

/// Symbolic `f = Re h` and `g = Im h`, both flagged real-valued.
pub fn build_fg() -> (QuasiTrigPoly, QuasiTrigPoly) {
    let h = build_h();
    let hc = h.conj();
    let half = ParamPoly::constant(GaussRational::from_ratio(1, 2));
    let mut f = (&h + &hc).scale(&half);
    // (h − h̄)/(2i) = −(i/2)(h − h̄)
    let minus_half_i = ParamPoly::constant(-GaussRational::i().scale(&num_rational::BigRational::new(1.into(), 2.into())));
    let mut g = (&h - &hc).scale(&minus_half_i);
    f.set_real_valued(true);
    g.set_real_valued(true);
    (f, g)
}

/// Center-condition generators `g₂, g₃, g₄` as π-free polynomials.
pub fn center_generators() -> [ParamPoly; 3] {
    let [a, b, c] = coefficient_symbols();
    let bc = b.conj();
    let two = ParamPoly::int(2);
    let two_a_plus_bc = &(&two * &a) + &bc;
    let g2 = (&a * &b).im_part();
    let g3 = (&(&(&two_a_plus_bc * &(&a - &(&two * &bc))) * &bc) * &c).im_part();
    let mod_b2 = &b * &bc;
    let mod_c2 = &c * &c.conj();
    let g4 = (&(&(&two_a_plus_bc * &(&mod_b2 - &mod_c2)) * &(&bc * &bc)) * &c).im_part();
    [g2, g3, g4]
}
