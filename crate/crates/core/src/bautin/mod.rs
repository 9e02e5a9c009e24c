//! Symbolic seven-jet of the return map at `λ₁ = 0` and its decomposition in
//! the Bautin ideal `(g₂, g₃, g₄)`.

mod appendix;
mod recursion;
mod verify;

pub use appendix::{v2_closed_form, AppendixCofactors, ALPHA0, BETA0, BETA1, GAMMA0, GAMMA1, GAMMA2, V2};
pub use recursion::{jet_from_variational, BautinSystem, JetCoefficients, MAX_JET_ORDER};
pub use verify::{
    analytic_caps, cached_variational, center_ideal_basis, cofactor_constants, identity_residuals, memberships,
    verify_appendix, verify_constant_bounds, verify_splitting_constants, ConstantCheck, ConstantReport,
    DecompositionReport, IdentityCheck, MembershipCheck, SplittingReport, SupEstimate, CLAIMED_G_BOUNDS,
    SUP_GRID_STEP,
};

/// Radial coefficient `R_i` at `λ₁ = 0`.
pub fn radial_coefficient(i: usize) -> crate::symbolic::QuasiTrigPoly {
    BautinSystem::new().radial_coefficient(i)
}

/// `v_1 … v_n` for `n ≤ 7`.
pub fn variational_coefficients(n: usize) -> Result<Vec<crate::symbolic::QuasiTrigPoly>, crate::error::BautinError> {
    if n == 0 || n > MAX_JET_ORDER {
        return Err(crate::error::BautinError::OrderOutOfRange { requested: n, max: MAX_JET_ORDER });
    }
    Ok(cached_variational()[..n].to_vec())
}

/// The seven-jet `a_1 … a_7` of the return map at `λ₁ = 0`.
pub fn jet() -> JetCoefficients {
    jet_from_variational(cached_variational())
}
