//! Weight-truncated level-N Zhu algebras A_N(V) and bimodules A_N(W): the
//! O_N spans, star products, the bracket identity, and the induced map on
//! first cohomologies.
//!
//! Truncated O-spans are lower bounds of O_N by construction, so every
//! quotient dimension reported here is an upper bound of the corresponding
//! A_N truncation, and every membership claim certifies genuine membership.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::cohomology::{extend_images, f_linear};
use crate::error::{Error, Result};
use crate::modes::{
    composite_mode, degree_of_level, intertwiner_mode, level_of_degree, BasisKey, GradedModule,
    RawGen, Vector,
};
use crate::scalars::{rat_int, Rat, RatFunc, Subspace};

/// Binomial C(t, j) with an exact (possibly non-integer) top argument.
fn binom_rat(top: &RatFunc, j: u32) -> RatFunc {
    let mut num = RatFunc::one();
    for i in 0..j {
        num = &num * &(top - &RatFunc::int(i as i64));
    }
    let mut den = Rat::one();
    for i in 1..=j as i64 {
        den *= rat_int(i);
    }
    num.checked_div(&RatFunc::from_rat(den)).unwrap()
}

/// The span of truncated O_N generators inside the filtered space of levels
/// 0..=max_level.
pub struct OSpace {
    pub keys: Vec<BasisKey>,
    pub index: HashMap<BasisKey, usize>,
    pub span: Subspace,
    pub max_level: u32,
    pub generators: usize,
}

impl OSpace {
    fn coords(&self, v: &Vector) -> Result<Vec<RatFunc>> {
        let mut out = vec![RatFunc::zero(); self.keys.len()];
        for (k, c) in v.terms() {
            let i = self
                .index
                .get(k)
                .ok_or_else(|| Error::InconsistentSystem(format!("key {k} outside window")))?;
            out[*i] = c.clone();
        }
        Ok(out)
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        Ok(self.span.contains(&self.coords(v)?))
    }

    pub fn insert(&mut self, v: &Vector) -> Result<bool> {
        let coords = self.coords(v)?;
        Ok(self.span.insert(coords))
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// Dimension of the intersection with a single level.
    pub fn level_slice_dim(&self, module: &dyn GradedModule, level: u32) -> usize {
        // Permute coordinates: all other levels first; pivots landing in the
        // target block count the slice.
        let target: Vec<usize> = self
            .keys
            .iter()
            .enumerate()
            .filter(|(_, k)| module.key_level(k) == level)
            .map(|(i, _)| i)
            .collect();
        let others: Vec<usize> = (0..self.keys.len()).filter(|i| !target.contains(i)).collect();
        let perm: Vec<usize> = others.iter().chain(target.iter()).copied().collect();
        let offset = others.len();
        let mut sp = Subspace::new(self.keys.len());
        for row in self.span.basis() {
            let permuted: Vec<RatFunc> = perm.iter().map(|&i| row[i].clone()).collect();
            sp.insert(permuted);
        }
        // Rows whose pivot lands in the target block span the slice.
        sp.basis()
            .iter()
            .filter(|row| {
                row.iter().position(|x| !x.is_zero()).map(|p| p >= offset) == Some(true)
            })
            .count()
    }

    /// Upper bound on the dimension of the A_N truncation over levels <= k.
    pub fn quotient_upper_bound(&self, module: &dyn GradedModule, up_to: u32) -> usize {
        let inside: Vec<usize> = self
            .keys
            .iter()
            .enumerate()
            .filter(|(_, key)| module.key_level(key) <= up_to)
            .map(|(i, _)| i)
            .collect();
        let outside: Vec<usize> = (0..self.keys.len()).filter(|i| !inside.contains(i)).collect();
        let perm: Vec<usize> = outside.iter().chain(inside.iter()).copied().collect();
        let offset = outside.len();
        let mut sp = Subspace::new(self.keys.len());
        for row in self.span.basis() {
            let permuted: Vec<RatFunc> = perm.iter().map(|&i| row[i].clone()).collect();
            sp.insert(permuted);
        }
        let killed = sp
            .basis()
            .iter()
            .filter(|row| row.iter().position(|x| !x.is_zero()).map(|p| p >= offset) == Some(true))
            .count();
        let total: usize = (0..=up_to).map(|l| module.level_dim(l)).sum();
        total - killed
    }
}

/// Res_x x^{-2N-2-n} Y_W((1+x)^{L(0)+N+q} u, x) w as a finite mode sum.
fn o_generator(
    module: &dyn GradedModule,
    u: &BasisKey,
    wt_u: i64,
    w: &BasisKey,
    n_level: u32,
    shift: i64,
    q: i64,
) -> Result<Vector> {
    let nn = n_level as i64;
    let top = RatFunc::int(wt_u + nn + q);
    let wvec = Vector::single(w.clone(), RatFunc::one());
    let mut out = Vector::zero();
    let mut j = 0u32;
    loop {
        let mode = j as i64 - 2 * nn - 2 - shift;
        // u_mode w vanishes once the target level drops below zero.
        let target = module.key_level(w) as i64 + wt_u - mode - 1;
        if target < 0 {
            break;
        }
        let coeff = binom_rat(&top, j);
        if !coeff.is_zero() {
            let t = composite_mode(module, u, mode, &wvec)?;
            out.add_scaled(&module.project(&t)?, &coeff);
        }
        j += 1;
        if j as i64 > wt_u + nn + q && (wt_u + nn + q) >= 0 {
            // Integer exponent: the binomial series terminates.
            break;
        }
        if j > 4 * (module.internal_cap() + 8) {
            return Err(Error::InconsistentSystem("runaway binomial series".into()));
        }
    }
    Ok(out)
}

/// Options for the truncated O_N computation.
#[derive(Clone, Copy, Debug)]
pub struct ZhuOptions {
    /// Zhu level N (0, 1 or 2).
    pub n_level: u32,
    /// Weight cutoff K for the generator family.
    pub cutoff: u32,
}

/// Working levels needed by o_space at these options.
pub fn required_levels(opts: &ZhuOptions) -> u32 {
    2 * opts.cutoff + 2 * opts.n_level + 2
}

/// Exact span of the truncated O_N(W) (or O_N(V) when `module` is the
/// algebra itself): all Res-family vectors with wt(u) + level(w) <= K and
/// shift n <= K, plus the (d_W + L(-1))w family.
pub fn o_space(
    algebra: &dyn GradedModule,
    module: &dyn GradedModule,
    opts: &ZhuOptions,
) -> Result<OSpace> {
    let max_level = required_levels(opts);
    if module.cutoff() < max_level {
        return Err(Error::BadSpec(format!(
            "module must be realized to level {max_level} for this cutoff"
        )));
    }
    let mut keys = Vec::new();
    for l in 0..=max_level {
        keys.extend(module.level_basis(l));
    }
    let index: HashMap<BasisKey, usize> = keys.iter().cloned().zip(0..).collect();
    let mut o = OSpace {
        span: Subspace::new(keys.len()),
        keys,
        index,
        max_level,
        generators: 0,
    };
    let nn = opts.n_level as i64;
    // Res-family generators.
    for wu in 0..=opts.cutoff {
        for u in algebra.level_basis(wu) {
            for lw in 0..=opts.cutoff.saturating_sub(wu) {
                for w in module.level_basis(lw) {
                    for n in 0..=(opts.cutoff as i64) {
                        // Highest term level: lw + wu + 2N + 1 + n.
                        if lw as i64 + wu as i64 + 2 * nn + 1 + n > max_level as i64 {
                            continue;
                        }
                        let g = o_generator(module, &u, wu as i64, &w, opts.n_level, n, 0)?;
                        if !g.is_zero() {
                            o.insert(&g)?;
                            o.generators += 1;
                        }
                    }
                }
            }
        }
    }
    // (d_W + L(-1)) w for every basis vector representable in the window.
    for lw in 0..max_level {
        for w in module.level_basis(lw) {
            let dw = degree_of_level(module, lw);
            let mut g = Vector::single(w.clone(), dw);
            let t = module.raw_act(&RawGen::L, -1, &w)?;
            g.add_scaled(&module.project(&t)?, &RatFunc::one());
            if !g.is_zero() {
                o.insert(&g)?;
                o.generators += 1;
            }
        }
    }
    Ok(o)
}

/// Add the redundant shifted family Res_x x^{-2N-2-p} Y((1+x)^{L(0)+N+q}u, x)w
/// for p >= q >= 0 up to the given bound; returns true if the span grew.
pub fn add_redundant_family(
    o: &mut OSpace,
    algebra: &dyn GradedModule,
    module: &dyn GradedModule,
    opts: &ZhuOptions,
    bound: u32,
) -> Result<bool> {
    let mut grew = false;
    let nn = opts.n_level as i64;
    for wu in 0..=opts.cutoff {
        for u in algebra.level_basis(wu) {
            for lw in 0..=opts.cutoff.saturating_sub(wu) {
                for w in module.level_basis(lw) {
                    for p in 0..=(bound as i64) {
                        for q in 0..=p {
                            if lw as i64 + wu as i64 + 2 * nn + 1 + p > o.max_level as i64 {
                                continue;
                            }
                            let g =
                                o_generator(module, &u, wu as i64, &w, opts.n_level, p, q)?;
                            if !g.is_zero() && o.insert(&g)? {
                                grew = true;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(grew)
}

/// u *_N v in the algebra: sum_{m=0}^N (-1)^m C(m+N, N)
/// Res_x x^{-N-m-1} Y((1+x)^{L(0)+N} u, x) v.
pub fn star_algebra(
    algebra: &dyn GradedModule,
    u: &BasisKey,
    v: &Vector,
    n_level: u32,
) -> Result<Vector> {
    let wt_u = algebra.key_level(u) as i64;
    let nn = n_level as i64;
    let mut out = Vector::zero();
    for m in 0..=nn {
        let mut sign_binom = binom_coeff(m + nn, nn);
        if m % 2 == 1 {
            sign_binom = -sign_binom;
        }
        let term = res_mode_sum(algebra, u, wt_u + nn, v, -nn - m - 1)?;
        out.add_scaled(&term, &RatFunc::from_rat(sign_binom));
    }
    Ok(out)
}

/// v *_N w for v in the algebra acting on the module (no alternating sign).
pub fn star_vw(
    module: &dyn GradedModule,
    algebra: &dyn GradedModule,
    v: &BasisKey,
    w: &Vector,
    n_level: u32,
) -> Result<Vector> {
    let wt_v = algebra.key_level(v) as i64;
    let nn = n_level as i64;
    let mut out = Vector::zero();
    for m in 0..=nn {
        let b = binom_coeff(m + nn, nn);
        let term = res_mode_sum(module, v, wt_v + nn, w, -nn - m - 1)?;
        out.add_scaled(&term, &RatFunc::from_rat(b));
    }
    Ok(out)
}

/// w *_N v through the transported operator: sum_m C(m+N,N)
/// Res_x x^{-1-m-N} Y_WV^W((1+x)^{d_W+N} w, x) v.
pub fn star_wv(
    module: &dyn GradedModule,
    algebra: &dyn GradedModule,
    w: &BasisKey,
    w_level: u32,
    v: &BasisKey,
    n_level: u32,
) -> Result<Vector> {
    let nn = n_level as i64;
    let deg = degree_of_level(module, w_level);
    let top = &deg + &RatFunc::int(nn);
    let wt_v = algebra.key_level(v) as i64;
    let wvec = Vector::single(w.clone(), RatFunc::one());
    let vvec = Vector::single(v.clone(), RatFunc::one());
    let mut out = Vector::zero();
    for m in 0..=nn {
        let b = binom_coeff(m + nn, nn);
        // Res_x x^{-1-m-N} sum_j C(top, j) w_{j-1-m-N} v.
        let mut j = 0u32;
        loop {
            let mode = j as i64 - 1 - m - nn;
            let target = w_level as i64 + wt_v - mode - 1;
            if target < 0 {
                break;
            }
            let coeff = binom_rat(&top, j);
            if !coeff.is_zero() {
                let t = intertwiner_mode(module, &wvec, mode, &vvec)?;
                out.add_scaled(&module.project(&t)?, &(&coeff * &RatFunc::from_rat(b.clone())));
            }
            j += 1;
        }
    }
    Ok(out)
}

fn binom_coeff(top: i64, bottom: i64) -> Rat {
    let mut num = Rat::one();
    for i in 0..bottom {
        num *= rat_int(top - i);
    }
    let mut den = Rat::one();
    for i in 1..=bottom {
        den *= rat_int(i);
    }
    num / den
}

/// Res_x x^{shift} Y((1+x)^{top} u, x) applied to a vector.
fn res_mode_sum(
    module: &dyn GradedModule,
    u: &BasisKey,
    top: i64,
    v: &Vector,
    shift: i64,
) -> Result<Vector> {
    let wt_u = module.algebra_key_weight(u) as i64;
    let mut out = Vector::zero();
    let max_level = v
        .terms()
        .map(|(k, _)| module.key_level(k))
        .max()
        .unwrap_or(0) as i64;
    let mut j = 0i64;
    loop {
        let mode = j + shift;
        let target = max_level + wt_u - mode - 1;
        if target < 0 {
            break;
        }
        if top >= 0 && j > top {
            break;
        }
        let coeff = binom_coeff(top, j);
        if !coeff.is_zero() {
            let t = composite_mode(module, u, mode, v)?;
            out.add_scaled(&module.project(&t)?, &RatFunc::from_rat(coeff));
        }
        j += 1;
    }
    Ok(out)
}

/// Res_x Y_W((1+x)^{L(0)-1} v, x) w: the right-hand side of the bracket
/// identity.
pub fn bracket_residue(
    module: &dyn GradedModule,
    v: &BasisKey,
    v_weight: i64,
    w: &Vector,
) -> Result<Vector> {
    res_mode_sum(module, v, v_weight - 1, w, 0)
}

/// Outcome of one Leibniz / containment audit of an induced map.
pub struct InducedMapReport {
    pub o_v_generators_mapped: usize,
    pub containment_ok: bool,
    pub leibniz_pairs: usize,
    pub leibniz_ok: bool,
    /// Zero-mode representative mod O_N(W) on the generators, when requested
    /// and found.
    pub w1_witness: Option<Vector>,
}

/// Verify that a derivation F (given by generator images) maps the truncated
/// O_N(V) into the truncated O_N(W) span and satisfies the Leibniz rule for
/// the star products modulo that span.
#[allow(clippy::too_many_arguments)]
pub fn induced_map_check(
    v_alg: &dyn GradedModule,
    w_mod: &dyn GradedModule,
    gens: &[BasisKey],
    images: &[Vector],
    opts: &ZhuOptions,
    o_v: &OSpace,
    o_w: &OSpace,
    find_w1: bool,
) -> Result<InducedMapReport> {
    let depth = required_levels(opts);
    let f = extend_images(v_alg, w_mod, gens, images, depth)?;

    // Containment: F(generating vectors of O_N(V)) inside the O_N(W) span.
    let nn = opts.n_level as i64;
    let mut mapped = 0usize;
    let mut containment_ok = true;
    for wu in 0..=opts.cutoff {
        for u in v_alg.level_basis(wu) {
            for lv in 0..=opts.cutoff.saturating_sub(wu) {
                for b in v_alg.level_basis(lv) {
                    for n in 0..=(opts.cutoff as i64) {
                        if lv as i64 + wu as i64 + 2 * nn + 1 + n > o_v.max_level as i64 {
                            continue;
                        }
                        let g = o_generator(v_alg, &u, wu as i64, &b, opts.n_level, n, 0)?;
                        if g.is_zero() {
                            continue;
                        }
                        let fg = f_linear(&f, &g)?;
                        mapped += 1;
                        if !o_w.contains(&fg)? {
                            containment_ok = false;
                        }
                    }
                }
            }
        }
    }
    // (L(0) + L(-1)) family.
    for lv in 0..depth {
        for b in v_alg.level_basis(lv) {
            let mut g = Vector::single(b.clone(), RatFunc::int(lv as i64));
            let t = v_alg.raw_act(&RawGen::L, -1, &b)?;
            g.add_scaled(&v_alg.project(&t)?, &RatFunc::one());
            if g.is_zero() {
                continue;
            }
            let fg = f_linear(&f, &g)?;
            mapped += 1;
            if !o_w.contains(&fg)? {
                containment_ok = false;
            }
        }
    }

    // Leibniz: f(u * v) = u * f(v) + f(u) * v mod O_N(W) on pairs within the
    // cutoff.
    let mut pairs = 0usize;
    let mut leibniz_ok = true;
    for wu in 0..=opts.cutoff {
        for u in v_alg.level_basis(wu) {
            for wv in 0..=opts.cutoff.saturating_sub(wu) {
                for b in v_alg.level_basis(wv) {
                    let bv = Vector::single(b.clone(), RatFunc::one());
                    let uv = star_algebra(v_alg, &u, &bv, opts.n_level)?;
                    let lhs = f_linear(&f, &uv)?;
                    // u * f(v): star_vw with u from the algebra.
                    let fv = f_linear(&f, &bv)?;
                    let t1 = star_vw(w_mod, v_alg, &u, &fv, opts.n_level)?;
                    // f(u) * v: transported star; f(u) is homogeneous.
                    let fu = f
                        .get(&u)
                        .ok_or_else(|| Error::InconsistentSystem("F undefined".into()))?;
                    let mut t2 = Vector::zero();
                    for (k, c) in fu.terms() {
                        let lw = w_mod.key_level(k);
                        let s = star_wv(w_mod, v_alg, k, lw, &b, opts.n_level)?;
                        t2.add_scaled(&s, c);
                    }
                    let mut resid = lhs.clone();
                    resid.add_scaled(&t1, &RatFunc::int(-1));
                    resid.add_scaled(&t2, &RatFunc::int(-1));
                    pairs += 1;
                    if !o_w.contains(&resid)? {
                        leibniz_ok = false;
                    }
                }
            }
        }
    }

    // Optional: find w1 with F(g) = (w1)_0 g mod O_N(W) on the generators.
    let w1_witness = if find_w1 {
        find_zero_mode_rep(w_mod, gens, images, o_w)?
    } else {
        None
    };

    Ok(InducedMapReport {
        o_v_generators_mapped: mapped,
        containment_ok,
        leibniz_pairs: pairs,
        leibniz_ok,
        w1_witness,
    })
}

/// Solve F(g) = (w1)_0 g mod the O_N(W) span over w1 in the degree-1 slice.
fn find_zero_mode_rep(
    w_mod: &dyn GradedModule,
    gens: &[BasisKey],
    images: &[Vector],
    o_w: &OSpace,
) -> Result<Option<Vector>> {
    let Some(l1) = level_of_degree(w_mod, 1) else {
        return Ok(None);
    };
    let w1_keys = w_mod.level_basis(l1);
    // Residuals live in the O-span coordinates; reduce everything there.
    let mut cols: Vec<Vec<RatFunc>> = Vec::new();
    for w1 in &w1_keys {
        let wvec = Vector::single(w1.clone(), RatFunc::one());
        let mut stacked = Vec::new();
        for g in gens {
            let img = intertwiner_mode(w_mod, &wvec, 0, &Vector::single(g.clone(), RatFunc::one()))?;
            let img = w_mod.project(&img)?;
            stacked.extend(o_w.span.reduce(o_w.coords(&img)?));
        }
        cols.push(stacked);
    }
    let mut rhs = Vec::new();
    for img in images {
        rhs.extend(o_w.span.reduce(o_w.coords(img)?));
    }
    let rows = rhs.len();
    let mut mat = crate::scalars::ExactMatrix::new(rows, w1_keys.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            mat.set(i, j, c.clone())?;
        }
    }
    match mat.solve(&rhs) {
        Some(x) => {
            let mut out = Vector::zero();
            for (j, key) in w1_keys.iter().enumerate() {
                if !x[j].is_zero() {
                    out.add_term(key.clone(), x[j].clone());
                }
            }
            Ok(Some(out))
        }
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests;
