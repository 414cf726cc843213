//! Kac determinants from the Gram oracle, and exact factorization checks
//! against the two-parameter family of vanishing curves.
//!
//! The curves h_{r,s} are never trusted as constants: the standard
//! parametrization c = 13 - 6(t + 1/t), h_{r,s}(t) = ((rt-s)^2 - (t-1)^2)/4t
//! is validated against the engine's own level-1 and level-2 determinants
//! before it is used for the exact division at levels 3 and 4.

use super::{partition_count, VirasoroModule};
use crate::error::Result;
use crate::modes::GradedModule;
use crate::scalars::ratfunc::{VAR_C, VAR_H};
use crate::scalars::RatFunc;

/// Determinant of the contravariant Gram matrix at a level over Q(c, h).
pub fn kac_determinant(level: u32, c: &RatFunc, h: &RatFunc) -> Result<RatFunc> {
    let m = VirasoroModule::verma(c.clone(), h.clone(), level);
    m.gram(level)?.determinant()
}

#[derive(Clone, Debug)]
pub struct KacLevelReport {
    pub level: u32,
    /// Engine determinant over Q(c, h).
    pub determinant: RatFunc,
    /// Exponents P(level - rs) per ordered pair (r, s).
    pub exponents: Vec<((u32, u32), u32)>,
    /// Quotient by the product of curve factors, in the t-parametrization.
    pub cofactor: RatFunc,
    /// True when the cofactor is a nonzero constant (no h, no t left).
    pub divisible: bool,
}

#[derive(Clone, Debug)]
pub struct KacFactorReport {
    /// Level-1/2 engine roots reproduce h_{1,1}, h_{1,2}, h_{2,1}.
    pub parametrization_validated: bool,
    pub levels: Vec<KacLevelReport>,
}

/// c(t) = 13 - 6t - 6/t, reusing the c-variable slot for t.
fn c_of_t() -> RatFunc {
    let t = RatFunc::c();
    &(&RatFunc::int(13) - &(&RatFunc::int(6) * &t)) - &RatFunc::int(6).checked_div(&t).unwrap()
}

/// h_{r,s}(t) = ((r t - s)^2 - (t - 1)^2) / (4 t), in the t slot.
fn h_rs(r: u32, s: u32) -> RatFunc {
    let t = RatFunc::c();
    let a = &(&RatFunc::int(r as i64) * &t) - &RatFunc::int(s as i64);
    let b = &t - &RatFunc::one();
    (&(&a * &a) - &(&b * &b))
        .checked_div(&(&RatFunc::int(4) * &t))
        .unwrap()
}

/// Validate the parametrization and run the exact division at each level up
/// to `max_level`.
pub fn kac_factorization(max_level: u32) -> Result<KacFactorReport> {
    let c = RatFunc::c();
    let h = RatFunc::h();
    let ct = c_of_t();

    // Level 1: determinant 2h; its only root is h_{1,1}(t) = 0.
    let det1 = kac_determinant(1, &c, &h)?;
    let mut validated = det1 == &RatFunc::int(2) * &RatFunc::h() && h_rs(1, 1).is_zero();

    // Level 2: after removing h^{P(1)}, the quadratic must vanish on
    // h_{1,2}(t) and h_{2,1}(t).
    let det2 = kac_determinant(2, &c, &h)?;
    let det2_t = det2.substitute_var(VAR_C, &ct)?;
    let quad = det2_t.checked_div(&RatFunc::h())?;
    for (r, s) in [(1u32, 2u32), (2, 1)] {
        let at_root = quad.substitute_var(VAR_H, &h_rs(r, s))?;
        validated &= at_root.is_zero();
    }

    let mut levels = Vec::new();
    for level in 1..=max_level {
        let det = kac_determinant(level, &c, &h)?;
        let det_t = det.substitute_var(VAR_C, &ct)?;
        let mut expected = RatFunc::one();
        let mut exponents = Vec::new();
        for r in 1..=level {
            for s in 1..=level {
                if r * s > level {
                    continue;
                }
                let e = partition_count(level - r * s) as u32;
                exponents.push(((r, s), e));
                let factor = &RatFunc::h() - &h_rs(r, s);
                expected = &expected * &factor.pow(e as i32)?;
            }
        }
        let cofactor = det_t.checked_div(&expected)?;
        let divisible = !cofactor.is_zero()
            && cofactor.numerator().degree_in(VAR_H) == 0
            && cofactor.denominator().degree_in(VAR_H) == 0
            && cofactor.numerator().degree_in(VAR_C) == 0
            && cofactor.denominator().degree_in(VAR_C) == 0;
        levels.push(KacLevelReport {
            level,
            determinant: det,
            exponents,
            cofactor,
            divisible,
        });
    }
    Ok(KacFactorReport {
        parametrization_validated: validated,
        levels,
    })
}
