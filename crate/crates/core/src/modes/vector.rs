use std::collections::BTreeMap;
use std::fmt;

use super::key::BasisKey;
use crate::scalars::RatFunc;

/// Finite linear combination of basis keys with exact coefficients.
/// No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Vector {
    terms: BTreeMap<BasisKey, RatFunc>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn single(key: BasisKey, coeff: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(key, coeff);
        }
        Vector { terms }
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

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &BasisKey) -> RatFunc {
        self.terms.get(key).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add_term(&mut self, key: BasisKey, coeff: RatFunc) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                let s = &*c + &coeff;
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, scale: &RatFunc) {
        if scale.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * scale);
        }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(other, &RatFunc::one());
        out
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(other, &RatFunc::int(-1));
        out
    }

    pub fn scale(&self, s: &RatFunc) -> Vector {
        let mut out = Vector::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn neg(&self) -> Vector {
        self.scale(&RatFunc::int(-1))
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}) {}", c.to_string_with(&["c", "h"]), k)?;
        }
        Ok(())
    }
}
