//! The fraction field Q(c, h), canonicalized.
//!
//! A value is a reduced pair num/den of bivariate polynomials with the
//! denominator nonzero, gcd(num, den) = 1, and the denominator's deglex
//! leading coefficient normalized to 1. Plain rationals embed as constant
//! numerators over denominator 1, with fast-path arithmetic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::MPoly;
use super::{rat_int, Rat};
use crate::error::{Error, Result};

pub const VAR_C: usize = 0;
pub const VAR_H: usize = 1;

/// Element of Q(c, h) in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: MPoly<2>,
    den: MPoly<2>,
}

impl RatFunc {
    fn reduced(num: MPoly<2>, den: MPoly<2>) -> Self {
        assert!(!den.is_zero(), "zero denominator in rational function");
        if num.is_zero() {
            return RatFunc {
                num,
                den: MPoly::one(),
            };
        }
        let (mut num, mut den) = (num, den);
        if !den.is_constant() || !num.is_constant() {
            let g = MPoly::gcd(&num, &den);
            if !g.is_one() {
                num = num.try_exact_div(&g).expect("gcd divides numerator");
                den = den.try_exact_div(&g).expect("gcd divides denominator");
            }
        }
        // Scalar canonicalization: integer coefficients, jointly primitive,
        // denominator's leading coefficient positive. This makes e.g.
        // (2c+2)/4 render as (c + 1)/2.
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::Signed;
        let l: BigInt = num.coeff_denom_lcm().lcm(&den.coeff_denom_lcm());
        if !l.is_one() {
            let s = Rat::from_integer(l);
            num = num.scale(&s);
            den = den.scale(&s);
        }
        let g = num.coeff_numer_gcd().gcd(&den.coeff_numer_gcd());
        if !g.is_one() && !g.is_zero() {
            let s = Rat::new(num_bigint::BigInt::one(), g);
            num = num.scale(&s);
            den = den.scale(&s);
        }
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }

    pub fn new(num: MPoly<2>, den: MPoly<2>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    pub fn from_poly(p: MPoly<2>) -> Self {
        Self::reduced(p, MPoly::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::from_poly(MPoly::constant(r))
    }

    pub fn int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    pub fn rat(p: i64, q: i64) -> Self {
        Self::from_rat(super::rat(p, q))
    }

    pub fn zero() -> Self {
        Self::from_poly(MPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    /// The central-charge symbol c.
    pub fn c() -> Self {
        Self::from_poly(MPoly::var(VAR_C))
    }

    /// The lowest-weight symbol h.
    pub fn h() -> Self {
        Self::from_poly(MPoly::var(VAR_H))
    }

    pub fn numerator(&self) -> &MPoly<2> {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly<2> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The underlying rational if this value is constant.
    pub fn as_rat(&self) -> Option<Rat> {
        match (self.num.constant_value(), self.den.constant_value()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        if k >= 0 {
            Ok(Self::reduced(
                self.num.pow(k as u32),
                self.den.pow(k as u32),
            ))
        } else {
            self.inv()?.pow(-k)
        }
    }

    /// Substitute rational values for some of c, h. Errors if a bound
    /// denominator vanishes.
    pub fn substitute(&self, c: Option<&Rat>, h: Option<&Rat>) -> Result<Self> {
        let bindings = [c.cloned(), h.cloned()];
        let den = self.den.eval_partial(&bindings);
        if den.is_zero() {
            return Err(Error::Pole {
                denominator: self.den.to_string_with(&["c", "h"]),
            });
        }
        Ok(Self::reduced(self.num.eval_partial(&bindings), den))
    }

    /// Substitute a rational function for one variable (leaving the other as
    /// is). Errors if the denominator collapses to zero.
    pub fn substitute_var(&self, var: usize, g: &RatFunc) -> Result<Self> {
        let sub_poly = |p: &MPoly<2>| -> (MPoly<2>, u16) {
            // p(x -> g) written over the common denominator den(g)^deg.
            let deg = p.degree_in(var);
            let mut acc = MPoly::zero();
            for k in 0..=deg {
                let coeff = p.coeff_of(var, k);
                let term = coeff
                    .mul(&g.num.pow(k as u32))
                    .mul(&g.den.pow((deg - k) as u32));
                acc = acc.add(&term);
            }
            (acc, deg)
        };
        let (n, dn) = sub_poly(&self.num);
        let (d, dd) = sub_poly(&self.den);
        if d.is_zero() {
            return Err(Error::Pole {
                denominator: self.den.to_string_with(&["c", "h"]),
            });
        }
        // Common denominators den(g)^dn, den(g)^dd cancel up to the difference.
        let (n, d) = if dn >= dd {
            (n, d.mul(&g.den.pow((dn - dd) as u32)))
        } else {
            (n.mul(&g.den.pow((dd - dn) as u32)), d)
        };
        Ok(Self::reduced(n, d))
    }

    /// Canonical text form with given variable names.
    pub fn to_string_with(&self, names: &[&str; 2]) -> String {
        let ns = self.num.to_string_with(names);
        if self.den.is_one() {
            return ns;
        }
        let ds = self.den.to_string_with(names);
        let wrap = |s: &str, p: &MPoly<2>| -> String {
            if p.num_terms() > 1 {
                format!("({s})")
            } else {
                s.to_string()
            }
        };
        format!("{}/{}", wrap(&ns, &self.num), wrap(&ds, &self.den))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&["c", "h"]))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::reduced(self.num.add(&rhs.num), self.den.clone());
        }
        RatFunc::reduced(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::reduced(self.num.sub(&rhs.num), self.den.clone());
        }
        RatFunc::reduced(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::reduced(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        (&self).add(&rhs)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        (&self).mul(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn rational_add() {
        let a = RatFunc::rat(1, 2);
        let b = RatFunc::rat(1, 3);
        assert_eq!(&a + &b, RatFunc::rat(5, 6));
    }

    #[test]
    fn inverse_pair_cancels() {
        // (c/(c-1)) * ((c-1)/c) = 1
        let c = RatFunc::c();
        let one = RatFunc::one();
        let f = c.checked_div(&(&c - &one)).unwrap();
        let g = (&c - &one).checked_div(&c).unwrap();
        assert!((&f * &g).is_one());
    }

    #[test]
    fn gcd_reduction_canonicalizes() {
        // (2c+2)/4 -> (c+1)/2
        let c = RatFunc::c();
        let f = (&(&c * &RatFunc::int(2)) + &RatFunc::int(2))
            .checked_div(&RatFunc::int(4))
            .unwrap();
        assert_eq!(f.to_string_with(&["c", "h"]), "(c + 1)/2");
        let g = (&c + &RatFunc::one()).checked_div(&RatFunc::int(2)).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn substitute_and_pole() {
        let c = RatFunc::c();
        let half_c = c.checked_div(&RatFunc::int(2)).unwrap();
        assert_eq!(
            half_c.substitute(Some(&rat(1, 2)), None).unwrap(),
            RatFunc::rat(1, 4)
        );
        let pole = RatFunc::one()
            .checked_div(&(&c - &RatFunc::int(26)))
            .unwrap();
        assert!(matches!(
            pole.substitute(Some(&rat(26, 1)), None),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn substitute_var_into_t_parametrization() {
        // c |-> 13 - 6t - 6/t  evaluated at t = 3/4 gives c_{3,4} = 1/2.
        let t = RatFunc::c();
        let expr = &(&RatFunc::int(13) - &(&t * &RatFunc::int(6)))
            - &RatFunc::int(6).checked_div(&t).unwrap();
        let c = RatFunc::c();
        let out = c.substitute_var(VAR_C, &expr).unwrap();
        assert_eq!(
            out.substitute(Some(&rat(3, 4)), None).unwrap(),
            RatFunc::rat(1, 2)
        );
    }

    #[test]
    fn division_by_zero_reported() {
        assert!(RatFunc::one().checked_div(&RatFunc::zero()).is_err());
    }
}
