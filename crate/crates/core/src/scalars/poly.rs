//! Multivariate polynomials over Q with a fixed number of variables.
//!
//! Exponent vectors are `[u16; N]`. The monomial order is degree-lexicographic
//! with later variables more significant (for `N = 2` and names `(c, h)` this
//! is deglex with c < h), which fixes canonical leading terms and deterministic
//! text renderings.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{rat_int, rat_to_string, Rat};

/// Compare exponent vectors in degree-lexicographic order, last variable most
/// significant.
pub fn cmp_deglex<const N: usize>(a: &[u16; N], b: &[u16; N]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            for i in (0..N).rev() {
                match a[i].cmp(&b[i]) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
            Ordering::Equal
        }
        other => other,
    }
}

/// A polynomial in `N` variables with rational coefficients.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly<const N: usize> {
    terms: BTreeMap<[u16; N], Rat>,
}

impl<const N: usize> MPoly<N> {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert([0u16; N], r);
        }
        MPoly { terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat_int(n))
    }

    /// The monomial `x_i`.
    pub fn var(i: usize) -> Self {
        assert!(i < N);
        let mut exp = [0u16; N];
        exp[i] = 1;
        Self::monomial(exp, Rat::one())
    }

    pub fn monomial(exp: [u16; N], coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&[0u16; N])
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&[0u16; N]))
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return self.terms.get(&[0u16; N]).cloned();
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16; N], &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Leading exponent under deglex; None for the zero polynomial.
    pub fn leading_exp(&self) -> Option<[u16; N]> {
        self.terms
            .keys()
            .max_by(|a, b| cmp_deglex(a, b))
            .copied()
    }

    pub fn leading_coeff(&self) -> Rat {
        match self.leading_exp() {
            Some(e) => self.terms[&e].clone(),
            None => Rat::zero(),
        }
    }

    fn insert_term(&mut self, exp: [u16; N], coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(*e, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for i in 0..N {
                    e[i] = e[i]
                        .checked_add(eb[i])
                        .expect("exponent overflow in polynomial product");
                }
                out.insert_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divide by `g`, returning the exact quotient if `g` divides `self`.
    pub fn try_exact_div(&self, g: &Self) -> Option<Self> {
        assert!(!g.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let glead = g.leading_exp().unwrap();
        let gcoeff = g.terms[&glead].clone();
        while !rem.is_zero() {
            let rlead = rem.leading_exp().unwrap();
            let mut qexp = [0u16; N];
            for i in 0..N {
                if rlead[i] < glead[i] {
                    return None;
                }
                qexp[i] = rlead[i] - glead[i];
            }
            let qc = &rem.terms[&rlead] / &gcoeff;
            let qterm = Self::monomial(qexp, qc);
            rem = rem.sub(&qterm.mul(g));
            quot = quot.add(&qterm);
        }
        Some(quot)
    }

    /// Degree in variable `v`.
    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    /// Coefficient of `x_v^k`, a polynomial not involving `x_v`.
    pub fn coeff_of(&self, v: usize, k: u16) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[v] == k {
                let mut e2 = *e;
                e2[v] = 0;
                out.insert_term(e2, c.clone());
            }
        }
        out
    }

    fn mul_var_pow(&self, v: usize, k: u16) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = *e;
                    e2[v] += k;
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Variables that actually occur.
    fn active_vars(&self) -> Vec<usize> {
        let mut used = [false; 64];
        for e in self.terms.keys() {
            for i in 0..N {
                if e[i] > 0 {
                    used[i] = true;
                }
            }
        }
        (0..N).filter(|&i| used[i]).collect()
    }

    /// Least common multiple of the coefficient denominators.
    pub fn coeff_denom_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        let mut l = num_bigint::BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        l
    }

    /// Gcd of the coefficient numerators (positive; 0 for the zero poly).
    pub fn coeff_numer_gcd(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        let mut g = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
        }
        g
    }

    /// Normalize so the deglex-leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        let lc = self.leading_coeff();
        if lc.is_zero() || lc.is_one() {
            return self.clone();
        }
        let inv = Rat::one() / lc;
        self.scale(&inv)
    }

    /// Content with respect to variable `v`: gcd of the `x_v`-coefficients.
    fn content_in(&self, v: usize) -> Self {
        let mut g = Self::zero();
        for k in 0..=self.degree_in(v) {
            let c = self.coeff_of(v, k);
            if !c.is_zero() {
                g = Self::gcd(&g, &c);
            }
        }
        g
    }

    /// Pseudo-remainder of `f` by `g` in variable `v` (deg_v g >= 1).
    fn pseudo_rem(f: &Self, g: &Self, v: usize) -> Self {
        let dg = g.degree_in(v);
        let lg = g.coeff_of(v, dg);
        let mut r = f.clone();
        while !r.is_zero() && r.degree_in(v) >= dg {
            let dr = r.degree_in(v);
            let lr = r.coeff_of(v, dr);
            // r <- lg*r - lr * x_v^(dr-dg) * g
            r = r.mul(&lg).sub(&lr.mul_var_pow(v, dr - dg).mul(g));
        }
        r
    }

    /// Monic gcd. Recurses over the active variables via primitive
    /// pseudo-remainder sequences; constant gcds normalize to 1.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        let mut vars = a.active_vars();
        for v in b.active_vars() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        if vars.is_empty() {
            return Self::one();
        }
        let v = *vars.iter().max().unwrap();

        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let cont = Self::gcd(&ca, &cb);
        let mut f = a.try_exact_div(&ca).expect("content divides");
        let mut g = b.try_exact_div(&cb).expect("content divides");
        if f.degree_in(v) < g.degree_in(v) {
            std::mem::swap(&mut f, &mut g);
        }
        loop {
            if g.is_zero() {
                break;
            }
            if g.degree_in(v) == 0 {
                // A v-free divisor of a v-primitive polynomial is constant.
                f = Self::one();
                break;
            }
            let r = Self::pseudo_rem(&f, &g, v);
            f = g;
            let c = r.content_in(v);
            g = if r.is_zero() {
                Self::zero()
            } else {
                r.try_exact_div(&c).expect("content divides")
            };
        }
        cont.mul(&f).monic()
    }

    /// Substitute rational values for a subset of the variables.
    pub fn eval_partial(&self, bindings: &[Option<Rat>; N]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exp = *e;
            for i in 0..N {
                if let Some(val) = &bindings[i] {
                    for _ in 0..e[i] {
                        coeff *= val;
                    }
                    exp[i] = 0;
                }
            }
            out.insert_term(exp, coeff);
        }
        out
    }

    /// Render with the given variable names, terms in descending deglex order.
    pub fn to_string_with(&self, names: &[&str; N]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut exps: Vec<&[u16; N]> = self.terms.keys().collect();
        exps.sort_by(|a, b| cmp_deglex(b, a));
        let mut out = String::new();
        for (idx, e) in exps.iter().enumerate() {
            let c = &self.terms[*e];
            let is_const = e.iter().all(|&x| x == 0);
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut mono = String::new();
            for i in 0..N {
                if e[i] > 0 {
                    if !mono.is_empty() {
                        mono.push('*');
                    }
                    mono.push_str(names[i]);
                    if e[i] > 1 {
                        mono.push_str(&format!("^{}", e[i]));
                    }
                }
            }
            if is_const {
                out.push_str(&rat_to_string(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", rat_to_string(&mag), mono));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn c() -> MPoly<2> {
        MPoly::var(0)
    }
    fn h() -> MPoly<2> {
        MPoly::var(1)
    }

    #[test]
    fn deglex_order_c_less_than_h() {
        // h beats c at equal total degree; degree dominates.
        assert_eq!(cmp_deglex(&[0, 1], &[1, 0]), Ordering::Greater);
        assert_eq!(cmp_deglex(&[2, 0], &[0, 1]), Ordering::Greater);
        assert_eq!(cmp_deglex(&[1, 1], &[1, 1]), Ordering::Equal);
    }

    #[test]
    fn arithmetic_and_display() {
        let p = c().mul(&MPoly::int(-15)).add(&MPoly::int(456));
        assert_eq!(p.to_string_with(&["c", "h"]), "-15*c + 456");
        let q = h().mul(&MPoly::int(2));
        assert_eq!(q.to_string_with(&["c", "h"]), "2*h");
        let r = p.mul(&q);
        assert_eq!(r.to_string_with(&["c", "h"]), "-30*c*h + 912*h");
    }

    #[test]
    fn exact_division() {
        let p = c().add(&MPoly::int(1)).mul(&h().sub(&MPoly::int(2)));
        let q = p.try_exact_div(&c().add(&MPoly::int(1))).unwrap();
        assert_eq!(q, h().sub(&MPoly::int(2)));
        assert!(p.try_exact_div(&c().add(&MPoly::int(3))).is_none());
    }

    #[test]
    fn gcd_bivariate() {
        let f = c().add(&h()); // c + h
        let g = c().mul(&c()).sub(&h().mul(&h())); // c^2 - h^2 = (c+h)(c-h)
        let d = MPoly::gcd(&f.mul(&f), &g.mul(&f));
        // gcd = (c + h)^2 up to normalization
        assert_eq!(d, f.mul(&f).monic());
    }

    #[test]
    fn gcd_constants_normalize() {
        let f = MPoly::<2>::constant(rat(4, 3));
        let g = MPoly::<2>::constant(rat(2, 5));
        assert!(MPoly::gcd(&f, &g).is_one());
    }

    #[test]
    fn eval_partial_substitutes() {
        let p = c().mul(&h()).add(&MPoly::int(3)); // c*h + 3
        let out = p.eval_partial(&[Some(rat(1, 2)), None]);
        assert_eq!(out, h().scale(&rat(1, 2)).add(&MPoly::int(3)));
    }
}
