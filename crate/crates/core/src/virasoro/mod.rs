//! Virasoro Verma modules M(c, h), vacuum VOAs, simple quotients L(c, h) by
//! the contravariant-form radical, and minimal-model parameter arithmetic.

mod kac;
mod minimal;
mod neg_energy;

pub use kac::{kac_determinant, kac_factorization, KacFactorReport, KacLevelReport};
pub use minimal::{central_charge, h_equals_one_scan, lowest_weight, mn_identity_check};
pub use neg_energy::{
    negative_energy_system, zero_mode_matching, ConstraintRow, MatchingReport, NegEnergyReport,
};

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::modes::{
    level_quotient, BasisKey, GradedModule, LevelQuotient, ModeCaches, Peel, RawGen, Vector,
};
use crate::scalars::{rat_int, ExactMatrix, Rat, RatFunc};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VirKind {
    /// Universal highest-weight module: basis all partitions, parts >= 1.
    Verma,
    /// M(c, 0) / <L(-1)1>: the universal vacuum VOA, parts >= 2.
    VacuumVoa,
    /// Irreducible quotient of the Verma module by the Gram radical,
    /// level by level. Requires numeric (c, h).
    Simple,
}

/// A truncated Virasoro module. Internal coordinates are always Verma-style
/// partition words; `Simple` projects onto Gram-pivot classes on output.
pub struct VirasoroModule {
    c: RatFunc,
    h: RatFunc,
    kind: VirKind,
    cutoff: u32,
    internal_cap: u32,
    shift: Rat,
    l_cache: RefCell<HashMap<(i64, Vec<u32>), Vector>>,
    caches: ModeCaches,
    quot: RefCell<HashMap<u32, Rc<LevelQuotient>>>,
}

/// Ascending partitions of `n` with parts >= `min`, in lexicographic order.
pub fn partitions(n: u32, min: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut p = min;
    while p <= n {
        for rest in partitions(n - p, p) {
            let mut word = Vec::with_capacity(rest.len() + 1);
            word.push(p);
            word.extend(rest);
            out.push(word);
        }
        p += 1;
    }
    out
}

/// Number of partitions of n (parts >= 1).
pub fn partition_count(n: u32) -> u64 {
    // Euler recurrence with pentagonal numbers would be overkill at this scale.
    fn count(n: u32, min: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        (min..=n).map(|p| count(n - p, p)).sum()
    }
    count(n, 1)
}

impl VirasoroModule {
    pub fn verma(c: RatFunc, h: RatFunc, cutoff: u32) -> Self {
        Self::build(c, h, VirKind::Verma, cutoff)
    }

    pub fn vacuum_voa(c: RatFunc, cutoff: u32) -> Self {
        Self::build(c, RatFunc::zero(), VirKind::VacuumVoa, cutoff)
    }

    pub fn simple(c: Rat, h: Rat, cutoff: u32) -> Self {
        Self::build(
            RatFunc::from_rat(c),
            RatFunc::from_rat(h),
            VirKind::Simple,
            cutoff,
        )
    }

    fn build(c: RatFunc, h: RatFunc, kind: VirKind, cutoff: u32) -> Self {
        VirasoroModule {
            c,
            h,
            kind,
            cutoff,
            internal_cap: 2 * cutoff + 6,
            shift: Rat::zero(),
            l_cache: RefCell::new(HashMap::new()),
            caches: ModeCaches::default(),
            quot: RefCell::new(HashMap::new()),
        }
    }

    /// Set the grading shift: d_W = L(0) - shift.
    pub fn with_shift(mut self, shift: Rat) -> Self {
        self.shift = shift;
        self
    }

    pub fn c(&self) -> &RatFunc {
        &self.c
    }

    pub fn h(&self) -> &RatFunc {
        &self.h
    }

    pub fn kind(&self) -> VirKind {
        self.kind
    }

    fn min_part(&self) -> u32 {
        match self.kind {
            VirKind::VacuumVoa => 2,
            _ => 1,
        }
    }

    /// Full internal (Verma-style) basis at a level.
    pub fn internal_basis(&self, level: u32) -> Vec<BasisKey> {
        partitions(level, self.min_part())
            .into_iter()
            .map(BasisKey::Vir)
            .collect()
    }

    fn word_level(parts: &[u32]) -> u32 {
        parts.iter().sum()
    }

    /// Raw L(m) action on an internal word, fully normal-ordered.
    pub fn act_l(&self, m: i64, parts: &[u32]) -> Result<Vector> {
        let level = Self::word_level(parts) as i64;
        let target = level - m;
        if target < 0 {
            return Ok(Vector::zero());
        }
        if target > self.internal_cap as i64 {
            return Err(Error::Truncation {
                level: target,
                cutoff: self.internal_cap,
            });
        }
        if m == 0 {
            // L(0) is diagonal: h + level.
            let w = &self.h + &RatFunc::from_rat(rat_int(level));
            return Ok(Vector::single(BasisKey::Vir(parts.to_vec()), w));
        }
        let key = (m, parts.to_vec());
        if let Some(hit) = self.l_cache.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let min = self.min_part() as i64;
        let result = if parts.is_empty() {
            // Base cases on the cyclic vector (m = 0 took the fast path).
            let annihilated = match self.kind {
                VirKind::VacuumVoa => m >= -1,
                _ => m >= 1,
            };
            if annihilated {
                Vector::zero()
            } else {
                Vector::single(BasisKey::Vir(vec![(-m) as u32]), RatFunc::one())
            }
        } else {
            let n1 = parts[0] as i64;
            if m <= -min && -m <= n1 {
                // Creation in canonical position.
                let mut word = Vec::with_capacity(parts.len() + 1);
                word.push((-m) as u32);
                word.extend_from_slice(parts);
                Vector::single(BasisKey::Vir(word), RatFunc::one())
            } else {
                // Commute past the first factor:
                // L(m) L(-n1) = L(-n1) L(m) + (m+n1) L(m-n1) + d_{m,n1} (m^3-m)/12 c.
                let rest = &parts[1..];
                let mut acc = Vector::zero();
                let inner = self.act_l(m, rest)?;
                for (k, coeff) in inner.terms() {
                    let BasisKey::Vir(w) = k else { unreachable!() };
                    let lifted = self.act_l(-n1, w)?;
                    acc.add_scaled(&lifted, coeff);
                }
                if m + n1 != 0 {
                    let swap = self.act_l(m - n1, rest)?;
                    acc.add_scaled(&swap, &RatFunc::int(m + n1));
                }
                if m == n1 {
                    let central = rat_int(m * m * m - m) / rat_int(12);
                    let s = &RatFunc::from_rat(central) * &self.c;
                    acc.add_scaled(
                        &Vector::single(BasisKey::Vir(rest.to_vec()), RatFunc::one()),
                        &s,
                    );
                }
                acc
            }
        };
        self.l_cache.borrow_mut().insert(key, result.clone());
        Ok(result)
    }

    fn level_quot(&self, level: u32) -> Result<Rc<LevelQuotient>> {
        if let Some(q) = self.quot.borrow().get(&level) {
            return Ok(Rc::clone(q));
        }
        let full = self.internal_basis(level);
        let gram = self.gram_internal(level)?;
        let q = Rc::new(level_quotient(full, &gram));
        self.quot.borrow_mut().insert(level, Rc::clone(&q));
        Ok(q)
    }

    /// Gram matrix of the contravariant form on the full internal basis.
    fn gram_internal(&self, level: u32) -> Result<ExactMatrix> {
        let basis = self.internal_basis(level);
        let n = basis.len();
        let mut g = ExactMatrix::new(n, n);
        for (i, a) in basis.iter().enumerate() {
            let BasisKey::Vir(aw) = a else { unreachable!() };
            for (j, b) in basis.iter().enumerate() {
                if j < i {
                    let v = g.get(j, i);
                    g.set(i, j, v)?;
                    continue;
                }
                // <L(-a1)...L(-ak) w, y> = <w, L(ak)...L(a1) y>; apply the
                // positive modes in ascending index order.
                let mut v = Vector::single(b.clone(), RatFunc::one());
                for &p in aw.iter() {
                    let mut next = Vector::zero();
                    for (k, coeff) in v.terms() {
                        let BasisKey::Vir(w) = k else { unreachable!() };
                        let acted = self.act_l(p as i64, w)?;
                        next.add_scaled(&acted, coeff);
                    }
                    v = next;
                }
                let entry = v.coeff(&BasisKey::Vir(vec![]));
                g.set(i, j, entry)?;
            }
        }
        Ok(g)
    }
}

impl GradedModule for VirasoroModule {
    fn cutoff(&self) -> u32 {
        self.cutoff
    }

    fn internal_cap(&self) -> u32 {
        self.internal_cap
    }

    fn lowest_weight(&self) -> RatFunc {
        self.h.clone()
    }

    fn grading_shift(&self) -> Rat {
        self.shift.clone()
    }

    fn level_dim(&self, level: u32) -> usize {
        match self.kind {
            VirKind::Simple => self
                .level_quot(level)
                .map(|q| q.pivot_keys.len())
                .unwrap_or(0),
            _ => partitions(level, self.min_part()).len(),
        }
    }

    fn level_basis(&self, level: u32) -> Vec<BasisKey> {
        match self.kind {
            VirKind::Simple => self
                .level_quot(level)
                .map(|q| q.pivot_keys.clone())
                .unwrap_or_default(),
            _ => self.internal_basis(level),
        }
    }

    fn key_level(&self, key: &BasisKey) -> u32 {
        match key {
            BasisKey::Vir(parts) => Self::word_level(parts),
            _ => panic!("foreign key in Virasoro module"),
        }
    }

    fn raw_act(&self, gen: &RawGen, m: i64, key: &BasisKey) -> Result<Vector> {
        let RawGen::L = gen else {
            return Err(Error::UnsupportedFlavor(
                "Virasoro modules only carry L-modes".into(),
            ));
        };
        let BasisKey::Vir(parts) = key else {
            return Err(Error::UnsupportedFlavor("foreign key".into()));
        };
        self.act_l(m, parts)
    }

    fn project(&self, v: &Vector) -> Result<Vector> {
        if self.kind != VirKind::Simple {
            return Ok(v.clone());
        }
        let mut out = Vector::zero();
        for (key, coeff) in v.terms() {
            let level = self.key_level(key);
            if level > self.cutoff {
                return Err(Error::Truncation {
                    level: level as i64,
                    cutoff: self.cutoff,
                });
            }
            let q = self.level_quot(level)?;
            let coords = q
                .reduce
                .get(key)
                .ok_or_else(|| Error::InconsistentSystem("missing reduction".into()))?;
            for (j, x) in coords.iter().enumerate() {
                if !x.is_zero() {
                    out.add_term(q.pivot_keys[j].clone(), x * coeff);
                }
            }
        }
        Ok(out)
    }

    fn caches(&self) -> &ModeCaches {
        &self.caches
    }

    fn key_string(&self, key: &BasisKey) -> String {
        let BasisKey::Vir(parts) = key else {
            return key.to_string();
        };
        if parts.is_empty() {
            return match self.kind {
                VirKind::VacuumVoa => "1".into(),
                _ => "w".into(),
            };
        }
        let tail = match self.kind {
            VirKind::VacuumVoa => "1",
            _ => "w",
        };
        let body = BasisKey::Vir(parts.clone()).to_string();
        // BasisKey::Vir renders with trailing "w"; swap the cyclic-vector name.
        format!("{}{}", &body[..body.len() - 1], tail)
    }

    fn peel(&self, key: &BasisKey) -> Peel {
        let BasisKey::Vir(parts) = key else {
            panic!("foreign key in Virasoro module")
        };
        match parts.split_first() {
            None => Peel::Vacuum,
            Some((&n1, rest)) => Peel::Factor {
                gen: RawGen::L,
                p: 1 - n1 as i64,
                rest: BasisKey::Vir(rest.to_vec()),
            },
        }
    }

    fn gram(&self, level: u32) -> Result<ExactMatrix> {
        match self.kind {
            VirKind::Simple => {
                // Gram of the quotient = Gram restricted to pivot classes.
                let q = self.level_quot(level)?;
                let full = self.internal_basis(level);
                let g = self.gram_internal(level)?;
                let idx: HashMap<&BasisKey, usize> =
                    full.iter().enumerate().map(|(i, k)| (k, i)).collect();
                let n = q.pivot_keys.len();
                let mut out = ExactMatrix::new(n, n);
                for (a, ka) in q.pivot_keys.iter().enumerate() {
                    for (b, kb) in q.pivot_keys.iter().enumerate() {
                        out.set(a, b, g.get(idx[ka], idx[kb]))?;
                    }
                }
                Ok(out)
            }
            _ => self.gram_internal(level),
        }
    }
}

/// Quotient of a numeric-parameter module by the radical of the contravariant
/// form, realized up to `up_to` levels.
pub fn radical_quotient(m: &VirasoroModule, up_to: u32) -> Result<VirasoroModule> {
    let (Some(c), Some(h)) = (m.c.as_rat(), m.h.as_rat()) else {
        return Err(Error::SymbolicRadical(format!(
            "c = {}, h = {}",
            m.c.to_string_with(&["c", "h"]),
            m.h.to_string_with(&["c", "h"])
        )));
    };
    Ok(VirasoroModule::simple(c, h, up_to).with_shift(m.shift.clone()))
}

#[cfg(test)]
mod tests;
