//! Generic vertex-algebra mode calculus over any graded module flavor.
//!
//! The module flavors (Virasoro, affine, lattice) each provide raw generator
//! mode actions and a PBW-word structure for their basis keys. Everything
//! else is generic: modes of composite states via the iterate recursion,
//! the transport series for the intertwining operator Y_WV^W, contravariant
//! Gram matrices, and Im L(-1)^p membership tests.

mod key;
mod vector;

pub use key::BasisKey;
pub use vector::Vector;

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalars::{rat_int, ExactMatrix, Rat, RatFunc, Subspace};

/// Raw generator symbols whose integer-indexed modes each flavor implements
/// directly.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum RawGen {
    /// Virasoro: index m means the operator L(m).
    L,
    /// Affine current for the g-basis element with this index; index m means a(m).
    Curr(u8),
    /// Heisenberg mode h_i(m) for the i-th Cartan direction.
    Heis(u8),
    /// Mode m of the vertex operator attached to a lattice point (integer
    /// coordinates in the lattice basis).
    Vertex(Vec<i32>),
}

/// A single generator mode, e.g. L(-3) or alpha(2).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModeSymbol {
    pub gen: RawGen,
    pub index: i64,
}

/// Structure of a basis key of the algebra V viewed as a PBW word, used by
/// the iterate recursion for modes of composite states.
pub enum Peel {
    /// The vacuum: modes are delta_{n,-1} id.
    Vacuum,
    /// A bare ground-state generator (lattice point): modes are the raw modes.
    Ground(RawGen),
    /// key = (vertex-operator mode p of `gen`) applied to `rest`.
    Factor { gen: RawGen, p: i64, rest: BasisKey },
}

/// Shared memoization for the composite-mode recursion.
#[derive(Default)]
pub struct ModeCaches {
    composite: RefCell<HashMap<(BasisKey, i64, BasisKey), Vector>>,
}

/// A graded module truncated at `cutoff` levels above its lowest weight.
///
/// Levels are natural numbers; the d_W-degree of level l is
/// l + lowest_weight - shift. Raw mode actions may use internal headroom up
/// to `internal_cap`; results of the public operations are checked against
/// `cutoff`.
pub trait GradedModule {
    fn cutoff(&self) -> u32;
    fn internal_cap(&self) -> u32;
    /// L(0)-weight of the lowest level (exact, possibly symbolic).
    fn lowest_weight(&self) -> RatFunc;
    /// d_W = L(0) - shift.
    fn grading_shift(&self) -> Rat;
    /// Dimension of the (projected) level space.
    fn level_dim(&self, level: u32) -> usize;
    /// Canonical basis keys of the (projected) level space.
    fn level_basis(&self, level: u32) -> Vec<BasisKey>;
    /// Level of a key above the lowest weight.
    fn key_level(&self, key: &BasisKey) -> u32;
    /// L(0)-weight of a key read as an element of the algebra V this module
    /// sits over (V is graded from 0, so this differs from `key_level` only
    /// for flavors whose module keys live in a shifted coset).
    fn algebra_key_weight(&self, key: &BasisKey) -> u32 {
        self.key_level(key)
    }
    /// Raw generator mode action in internal coordinates.
    fn raw_act(&self, gen: &RawGen, m: i64, key: &BasisKey) -> Result<Vector>;
    /// Project an internal-coordinate vector onto the canonical basis.
    fn project(&self, v: &Vector) -> Result<Vector>;
    fn caches(&self) -> &ModeCaches;
    /// Canonical string for a key (used verbatim in JSON reports).
    fn key_string(&self, key: &BasisKey) -> String;
    /// Word structure for keys of the VOA this module is a module over.
    fn peel(&self, key: &BasisKey) -> Peel;
    /// Contravariant Gram matrix at a level, if the flavor has an adjoint.
    fn gram(&self, _level: u32) -> Result<ExactMatrix> {
        Err(Error::UnsupportedFlavor(
            "no contravariant form for this flavor".into(),
        ))
    }
}

/// d_W-degree of a level.
pub fn degree_of_level(m: &dyn GradedModule, level: u32) -> RatFunc {
    let shift = RatFunc::from_rat(m.grading_shift());
    &(&m.lowest_weight() + &RatFunc::from_rat(rat_int(level as i64))) - &shift
}

/// Level carrying a given integer d_W-degree, if any.
pub fn level_of_degree(m: &dyn GradedModule, degree: i64) -> Option<u32> {
    let lw = m.lowest_weight().as_rat()?;
    let l = rat_int(degree) + m.grading_shift() - lw;
    if l.denom().is_one() && !l.numer().is_negative() {
        let l: u32 = l.numer().try_into().ok()?;
        if l <= m.cutoff() {
            return Some(l);
        }
    }
    None
}

/// Apply one generator mode to a homogeneous vector, enforcing the public
/// truncation window.
pub fn apply_mode(m: &dyn GradedModule, s: &ModeSymbol, v: &Vector) -> Result<Vector> {
    let mut out = Vector::zero();
    for (key, coeff) in v.terms() {
        let lvl = m.key_level(key) as i64;
        let target = lvl - mode_level_drop(&s.gen, s.index);
        if target < 0 {
            continue;
        }
        if target > m.cutoff() as i64 {
            return Err(Error::Truncation {
                level: target,
                cutoff: m.cutoff(),
            });
        }
        let acted = m.raw_act(&s.gen, s.index, key)?;
        out.add_scaled(&acted, coeff);
    }
    m.project(&out)
}

/// How many levels a raw mode removes (negative = raises).
fn mode_level_drop(gen: &RawGen, m: i64) -> i64 {
    match gen {
        RawGen::L => m,
        RawGen::Curr(_) | RawGen::Heis(_) => m,
        // Vertex modes: handled by weight bookkeeping at the call site; the
        // drop depends on the point's norm, so callers use key levels.
        RawGen::Vertex(_) => m,
    }
}

/// Vertex-operator weight of a raw generator (L(0)-weight of the state whose
/// modes these are). Vertex generators answer via the module.
fn raw_gen_weight(gen: &RawGen, m: &dyn GradedModule) -> i64 {
    match gen {
        RawGen::L => 2,
        RawGen::Curr(_) | RawGen::Heis(_) => 1,
        RawGen::Vertex(pt) => m.algebra_key_weight(&BasisKey::Fock {
            heis: vec![],
            point: pt.clone(),
        }) as i64,
    }
}

fn apply_vo_mode(m: &dyn GradedModule, gen: &RawGen, q: i64, v: &Vector) -> Result<Vector> {
    // Convert vertex-operator index to raw index: omega_q = L(q-1); the
    // weight-1 generators and lattice vertex operators use the index as is.
    let raw_index = match gen {
        RawGen::L => q - 1,
        _ => q,
    };
    let mut out = Vector::zero();
    for (key, coeff) in v.terms() {
        let acted = m.raw_act(gen, raw_index, key)?;
        out.add_scaled(&acted, coeff);
    }
    Ok(out)
}

/// Binomial coefficient C(p, i) for integer p (possibly negative), i >= 0.
fn binom(p: i64, i: u32) -> Rat {
    let mut num = Rat::one();
    for j in 0..i as i64 {
        num *= rat_int(p - j);
    }
    let mut den = Rat::one();
    for j in 1..=i as i64 {
        den *= rat_int(j);
    }
    num / den
}

/// n-th mode of the composite state `a` (a basis key of V) acting on `v` in
/// the module `m`, computed by the iterate recursion on a's PBW word.
pub fn composite_mode(m: &dyn GradedModule, a: &BasisKey, n: i64, v: &Vector) -> Result<Vector> {
    let mut out = Vector::zero();
    for (key, coeff) in v.terms() {
        let r = composite_mode_key(m, a, n, key)?;
        out.add_scaled(&r, coeff);
    }
    Ok(out)
}

fn composite_mode_key(
    m: &dyn GradedModule,
    a: &BasisKey,
    n: i64,
    vkey: &BasisKey,
) -> Result<Vector> {
    let wt_a = m.algebra_key_weight(a) as i64;
    let deg_v = m.key_level(vkey) as i64;
    let target = deg_v + wt_a - n - 1;
    if target < 0 {
        return Ok(Vector::zero());
    }
    if target > m.internal_cap() as i64 {
        return Err(Error::Truncation {
            level: target,
            cutoff: m.internal_cap(),
        });
    }
    let memo_key = (a.clone(), n, vkey.clone());
    if let Some(hit) = m.caches().composite.borrow().get(&memo_key) {
        return Ok(hit.clone());
    }
    let v = Vector::single(vkey.clone(), RatFunc::one());
    let result = match m.peel(a) {
        Peel::Vacuum => {
            if n == -1 {
                v
            } else {
                Vector::zero()
            }
        }
        Peel::Ground(gen) => apply_vo_mode(m, &gen, n, &v)?,
        Peel::Factor { gen, p, rest } => {
            // (b_p u)_n = sum_i (-1)^i C(p,i) [ b_{p-i} u_{n+i}  -  (-1)^p u_{p+n-i} b_i ]
            let wt_b = raw_gen_weight(&gen, m);
            let wt_u = m.algebra_key_weight(&rest) as i64;
            let bound1 = deg_v + wt_u - n - 1; // u_{n+i} v = 0 beyond
            let bound2 = deg_v + wt_b - 1; // b_i v = 0 beyond
            let imax = bound1.max(bound2);
            let sign_p = if p.rem_euclid(2) == 0 { 1i64 } else { -1i64 };
            let mut acc = Vector::zero();
            let mut i: i64 = 0;
            while i <= imax {
                let coeff = binom(p, i as u32);
                let coeff = if i % 2 == 0 { coeff } else { -coeff };
                if !coeff.is_zero() {
                    if i <= bound1 {
                        let inner = composite_mode_key(m, &rest, n + i, vkey)?;
                        if !inner.is_zero() {
                            let outer = apply_vo_mode(m, &gen, p - i, &inner)?;
                            acc.add_scaled(&outer, &RatFunc::from_rat(coeff.clone()));
                        }
                    }
                    if i <= bound2 {
                        let inner = apply_vo_mode(m, &gen, i, &v)?;
                        if !inner.is_zero() {
                            let outer = composite_mode(m, &rest, p + n - i, &inner)?;
                            let s = RatFunc::from_rat(coeff * rat_int(-sign_p));
                            acc.add_scaled(&outer, &s);
                        }
                    }
                }
                i += 1;
            }
            acc
        }
    };
    m.caches()
        .composite
        .borrow_mut()
        .insert(memo_key, result.clone());
    Ok(result)
}

/// i-th mode of the transported operator Y_WV^W(w, x)v: the series
/// w_i v = sum_j (-1)^{i+1+j} / j! * L(-1)^j (v_{i+j} w).
pub fn intertwiner_mode(
    m: &dyn GradedModule,
    w: &Vector,
    i: i64,
    v_in_algebra: &Vector,
) -> Result<Vector> {
    let mut out = Vector::zero();
    for (vkey, vcoeff) in v_in_algebra.terms() {
        let wt_v = m.algebra_key_weight(vkey) as i64;
        for (wkey, wcoeff) in w.terms() {
            let deg_w = m.key_level(wkey) as i64;
            let jmax = deg_w + wt_v - i - 1;
            let mut jfact = Rat::one();
            for j in 0..=jmax.max(-1) {
                if j > 0 {
                    jfact *= rat_int(j);
                }
                let wvec = Vector::single(wkey.clone(), RatFunc::one());
                let mut term = composite_mode(m, vkey, i + j, &wvec)?;
                if term.is_zero() {
                    continue;
                }
                for _ in 0..j {
                    term = apply_vo_mode(m, &RawGen::L, 0, &term)?; // L(-1)
                }
                let sign = if (i + 1 + j).rem_euclid(2) == 0 {
                    Rat::one()
                } else {
                    -Rat::one()
                };
                let scale = &RatFunc::from_rat(sign / jfact.clone()) * &(vcoeff * wcoeff);
                out.add_scaled(&term, &scale);
            }
        }
    }
    Ok(out)
}

/// Contravariant Gram matrix at a level, normalized by <w, w> = 1 at level 0.
pub fn contravariant_gram(m: &dyn GradedModule, level: u32) -> Result<ExactMatrix> {
    m.gram(level)
}

/// Result of an Im L(-1)^p membership test.
#[derive(Clone, Debug)]
pub struct ImageWitness {
    pub member: bool,
    /// Preimage under L(-1)^p when member.
    pub witness: Option<Vector>,
}

/// Decide membership of a homogeneous vector in Im L(-1)^p by exact linear
/// solve against the image of the basis p levels down.
pub fn in_image_translate(m: &dyn GradedModule, v: &Vector, p: u32) -> Result<ImageWitness> {
    if v.is_zero() {
        return Ok(ImageWitness {
            member: true,
            witness: Some(Vector::zero()),
        });
    }
    let level = v
        .terms()
        .map(|(k, _)| m.key_level(k))
        .max()
        .expect("nonzero vector");
    if v.terms().any(|(k, _)| m.key_level(k) != level) {
        return Err(Error::BadSpec(
            "in_image_translate requires a homogeneous vector".into(),
        ));
    }
    if (level as i64) < p as i64 {
        return Ok(ImageWitness {
            member: false,
            witness: None,
        });
    }
    let src = m.level_basis(level - p);
    let dst = m.level_basis(level);
    let dst_index: HashMap<&BasisKey, usize> =
        dst.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut mat = ExactMatrix::new(dst.len(), src.len());
    for (j, key) in src.iter().enumerate() {
        let mut img = Vector::single(key.clone(), RatFunc::one());
        for _ in 0..p {
            img = apply_vo_mode(m, &RawGen::L, 0, &img)?;
        }
        let img = m.project(&img)?;
        for (k, c) in img.terms() {
            let i = *dst_index
                .get(k)
                .ok_or_else(|| Error::InconsistentSystem("image key outside basis".into()))?;
            mat.set(i, j, c.clone())?;
        }
    }
    let mut rhs = vec![RatFunc::zero(); dst.len()];
    for (k, c) in v.terms() {
        let i = *dst_index
            .get(k)
            .ok_or_else(|| Error::BadSpec("vector not in projected coordinates".into()))?;
        rhs[i] = c.clone();
    }
    match mat.solve(&rhs) {
        Some(x) => {
            let mut wit = Vector::zero();
            for (j, key) in src.iter().enumerate() {
                if !x[j].is_zero() {
                    wit.add_scaled(&Vector::single(key.clone(), RatFunc::one()), &x[j]);
                }
            }
            Ok(ImageWitness {
                member: true,
                witness: Some(wit),
            })
        }
        None => Ok(ImageWitness {
            member: false,
            witness: None,
        }),
    }
}

/// Rank data of the contravariant form at each level: the pivot keys span a
/// complement of the radical.
pub struct LevelQuotient {
    pub pivot_keys: Vec<BasisKey>,
    /// Expansion of every full-basis key in pivot classes.
    pub reduce: HashMap<BasisKey, Vec<RatFunc>>,
}

/// Compute the Gram radical data at one level from a full basis and its Gram
/// matrix.
pub fn level_quotient(full: Vec<BasisKey>, gram: &ExactMatrix) -> LevelQuotient {
    let n = full.len();
    assert_eq!(gram.rows(), n);
    // Pivot columns of the Gram matrix index a basis of the quotient.
    let (_, pivots) = gram.rref();
    let pivot_keys: Vec<BasisKey> = pivots.iter().map(|&j| full[j].clone()).collect();
    // Class of column j solves G[P,P] x = G[P, j].
    let mut gpp = ExactMatrix::new(pivots.len(), pivots.len());
    for (a, &i) in pivots.iter().enumerate() {
        for (b, &j) in pivots.iter().enumerate() {
            gpp.set(a, b, gram.get(i, j)).unwrap();
        }
    }
    let mut reduce = HashMap::new();
    for (j, key) in full.iter().enumerate() {
        let rhs: Vec<RatFunc> = pivots.iter().map(|&i| gram.get(i, j)).collect();
        let x = gpp
            .solve(&rhs)
            .expect("Gram pivot block is invertible");
        reduce.insert(key.clone(), x);
    }
    LevelQuotient { pivot_keys, reduce }
}

/// Span of a family of vectors expressed over a fixed key list; returns the
/// subspace and the coordinate order used.
pub fn span_over_keys(keys: &[BasisKey], vectors: &[Vector]) -> (Subspace, HashMap<BasisKey, usize>) {
    let index: HashMap<BasisKey, usize> = keys.iter().cloned().zip(0..).collect();
    let mut space = Subspace::new(keys.len());
    for v in vectors {
        let mut coords = vec![RatFunc::zero(); keys.len()];
        for (k, c) in v.terms() {
            let i = *index.get(k).expect("vector key outside coordinate list");
            coords[i] = c.clone();
        }
        space.insert(coords);
    }
    (space, index)
}
