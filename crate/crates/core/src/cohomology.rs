//! Zero-mode derivation spaces, the depth-bounded derivation constraint
//! solver, and H^1 = Z^1 certification on truncated instances.
//!
//! The solver fixes the images of the algebra generators as unknowns, extends
//! the would-be derivation over a spanning set by the mode recursion
//! F(g_m v) = g_m F(v) + F(g)_m v, and emits one exact linear constraint per
//! (generator, mode, basis vector) triple. Every constraint is a necessary
//! consequence of the derivation property, so equality of the solution-space
//! dimension with dim Z^1 proves H^1 = Z^1 on the instance; a strict gap
//! alone proves nothing and must pass the recursive re-verification before it
//! is reported as a counterexample.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::modes::{
    composite_mode, intertwiner_mode, level_of_degree, BasisKey, GradedModule, RawGen, Vector,
};
use crate::scalars::{ExactMatrix, RatFunc, Subspace};

/// Layout of the unknown coefficients: one block per generator, spanning the
/// W-basis at the generator's d_W-degree.
pub struct UnknownLayout {
    pub blocks: Vec<GenBlock>,
    pub total: usize,
}

pub struct GenBlock {
    pub gen: BasisKey,
    pub weight: u32,
    /// W level realizing d_W-degree = weight, if any.
    pub level: Option<u32>,
    pub keys: Vec<BasisKey>,
    pub offset: usize,
}

impl UnknownLayout {
    fn build(v: &dyn GradedModule, w: &dyn GradedModule, gens: &[BasisKey]) -> Self {
        let mut blocks = Vec::new();
        let mut total = 0;
        for g in gens {
            let weight = v.key_level(g);
            let level = level_of_degree(w, weight as i64);
            let keys = level.map(|l| w.level_basis(l)).unwrap_or_default();
            blocks.push(GenBlock {
                gen: g.clone(),
                weight,
                level,
                keys,
                offset: total,
            });
            total += blocks.last().unwrap().keys.len();
        }
        UnknownLayout { blocks, total }
    }
}

/// A W-valued quantity depending linearly on the unknowns: rows index the
/// W-basis at a fixed level, columns the unknowns.
#[derive(Clone)]
struct LinValue {
    /// W level (None encodes the zero space: degree not realized).
    level: Option<u32>,
    /// rows[w_index][unknown] nonzero entries.
    rows: Vec<HashMap<usize, RatFunc>>,
}

impl LinValue {
    fn zero(level: Option<u32>, dim: usize) -> Self {
        LinValue {
            level,
            rows: vec![HashMap::new(); dim],
        }
    }

    fn add_scaled(&mut self, other: &LinValue, scale: &RatFunc) {
        if scale.is_zero() {
            return;
        }
        assert_eq!(self.rows.len(), other.rows.len());
        for (r, row) in other.rows.iter().enumerate() {
            for (u, c) in row {
                let e = self.rows[r].entry(*u).or_insert_with(RatFunc::zero);
                let s = &*e + &(c * scale);
                if s.is_zero() {
                    self.rows[r].remove(u);
                } else {
                    *e = s;
                }
            }
        }
    }
}

/// Everything the solver produced for one instance.
pub struct SolveResult {
    pub layout: UnknownLayout,
    pub depth: u32,
    /// (provenance, coefficients) per emitted row.
    pub row_provenance: Vec<String>,
    pub matrix: ExactMatrix,
    /// Basis of the solution space over the unknowns.
    pub solution_basis: Vec<Vec<RatFunc>>,
}

impl SolveResult {
    pub fn dim_solutions(&self) -> usize {
        self.solution_basis.len()
    }

    /// Concrete generator images for a solution vector.
    pub fn images_of(&self, sol: &[RatFunc]) -> Vec<Vector> {
        self.layout
            .blocks
            .iter()
            .map(|b| {
                let mut out = Vector::zero();
                for (i, key) in b.keys.iter().enumerate() {
                    let c = &sol[b.offset + i];
                    if !c.is_zero() {
                        out.add_term(key.clone(), c.clone());
                    }
                }
                out
            })
            .collect()
    }
}

struct Builder<'a> {
    v: &'a dyn GradedModule,
    w: &'a dyn GradedModule,
    layout: UnknownLayout,
    depth: u32,
    /// F on the V-basis keys, as unknown-linear W-values.
    f: HashMap<BasisKey, LinValue>,
    v_index: HashMap<BasisKey, usize>,
    w_index: HashMap<BasisKey, (u32, usize)>,
}

impl<'a> Builder<'a> {
    fn new(
        v: &'a dyn GradedModule,
        w: &'a dyn GradedModule,
        gens: &'a [BasisKey],
        depth: u32,
    ) -> Self {
        let layout = UnknownLayout::build(v, w, gens);
        let mut v_index = HashMap::new();
        for n in 0..=depth {
            for (i, k) in v.level_basis(n).into_iter().enumerate() {
                v_index.insert(k, i);
            }
        }
        let mut w_index = HashMap::new();
        for l in 0..=w.cutoff() {
            for (i, k) in w.level_basis(l).into_iter().enumerate() {
                w_index.insert(k, (l, i));
            }
        }
        Builder {
            v,
            w,
            layout,
            depth,
            f: HashMap::new(),
            v_index,
            w_index,
        }
    }

    fn w_level_of_degree(&self, degree: i64) -> Option<u32> {
        level_of_degree(self.w, degree)
    }

    fn w_dim(&self, level: Option<u32>) -> usize {
        level.map(|l| self.w.level_dim(l)).unwrap_or(0)
    }

    /// Convert a projected W-vector into coordinates at a known level.
    fn w_coords(&self, vec: &Vector, level: Option<u32>) -> Result<Vec<(usize, RatFunc)>> {
        let mut out = Vec::new();
        for (k, c) in vec.terms() {
            let (l, i) = self
                .w_index
                .get(k)
                .ok_or_else(|| Error::InconsistentSystem("key outside W basis".into()))?;
            if Some(*l) != level {
                return Err(Error::InconsistentSystem(format!(
                    "degree bookkeeping violated: key {k} at level {l}"
                )));
            }
            out.push((*i, c.clone()));
        }
        Ok(out)
    }

    /// F-value of an arbitrary V-vector at a single level: linear extension
    /// over the stored basis values.
    fn f_of_vector(&self, vec: &Vector, v_level: u32) -> Result<LinValue> {
        let level = self.w_level_of_degree(v_level as i64);
        let mut out = LinValue::zero(level, self.w_dim(level));
        for (k, c) in vec.terms() {
            let fv = self
                .f
                .get(k)
                .ok_or_else(|| Error::InconsistentSystem(format!("F undefined on {k}")))?;
            out.add_scaled(fv, c);
        }
        Ok(out)
    }

    /// Apply the vertex-operator mode a_m (a in V) to an unknown-linear value.
    fn apply_composite(&self, a: &BasisKey, m: i64, x: &LinValue) -> Result<LinValue> {
        let Some(src_level) = x.level else {
            // Zero space in, zero space out at the shifted degree.
            return Ok(LinValue::zero(None, 0));
        };
        let delta = self.v.key_level(a) as i64 - m - 1;
        let target = src_level as i64 + delta;
        let tlevel = if (0..=self.w.cutoff() as i64).contains(&target) {
            Some(target as u32)
        } else if target < 0 {
            None
        } else {
            return Err(Error::Truncation {
                level: target,
                cutoff: self.w.cutoff(),
            });
        };
        let mut out = LinValue::zero(tlevel, self.w_dim(tlevel));
        if tlevel.is_none() {
            return Ok(out);
        }
        let src_basis = self.w.level_basis(src_level);
        // Collect per-source-row actions once.
        for (r, key) in src_basis.iter().enumerate() {
            if x.rows[r].is_empty() {
                continue;
            }
            let acted = composite_mode(self.w, a, m, &Vector::single(key.clone(), RatFunc::one()))?;
            let acted = self.w.project(&acted)?;
            if acted.is_zero() {
                continue;
            }
            let coords = self.w_coords(&acted, tlevel)?;
            for (u, c) in &x.rows[r] {
                for (i, a_c) in &coords {
                    let e = out.rows[*i].entry(*u).or_insert_with(RatFunc::zero);
                    let s = &*e + &(a_c * c);
                    if s.is_zero() {
                        out.rows[*i].remove(u);
                    } else {
                        *e = s;
                    }
                }
            }
        }
        Ok(out)
    }

    /// The transport term F(g)_m applied to a V basis key, as an
    /// unknown-linear value supported on g's block.
    fn transport_term(&self, gen_idx: usize, m: i64, beta: &BasisKey) -> Result<LinValue> {
        let block = &self.layout.blocks[gen_idx];
        let beta_level = self.v.key_level(beta);
        let degree = block.weight as i64 + beta_level as i64 - m - 1;
        let tlevel = self.w_level_of_degree(degree);
        let mut out = LinValue::zero(tlevel, self.w_dim(tlevel));
        if block.level.is_none() || tlevel.is_none() {
            return Ok(out);
        }
        let beta_vec = Vector::single(beta.clone(), RatFunc::one());
        for (j, wkey) in block.keys.iter().enumerate() {
            let wvec = Vector::single(wkey.clone(), RatFunc::one());
            let t = intertwiner_mode(self.w, &wvec, m, &beta_vec)?;
            let t = self.w.project(&t)?;
            if t.is_zero() {
                continue;
            }
            for (i, c) in self.w_coords(&t, tlevel)? {
                let e = out.rows[i]
                    .entry(block.offset + j)
                    .or_insert_with(RatFunc::zero);
                let s = &*e + &c;
                if s.is_zero() {
                    out.rows[i].remove(&(block.offset + j));
                } else {
                    *e = s;
                }
            }
        }
        Ok(out)
    }

    /// RHS of the recursion: g_m F(beta) + F(g)_m beta.
    fn derivation_rhs(&self, gen_idx: usize, m: i64, beta: &BasisKey) -> Result<LinValue> {
        let g = &self.layout.blocks[gen_idx].gen.clone();
        let beta_level = self.v.key_level(beta);
        let fb = self.f_of_vector(&Vector::single(beta.clone(), RatFunc::one()), beta_level)?;
        let mut rhs = self.apply_composite(g, m, &fb)?;
        let tt = self.transport_term(gen_idx, m, beta)?;
        if rhs.level == tt.level {
            rhs.add_scaled(&tt, &RatFunc::one());
        } else if rhs.rows.is_empty() {
            rhs = tt;
        } else if !tt.rows.is_empty() {
            return Err(Error::InconsistentSystem(
                "transport and action land at different levels".into(),
            ));
        }
        Ok(rhs)
    }

    /// Define F on every V-basis key up to the depth by accepting spanning
    /// candidates g_m beta and solving for the basis coordinates.
    fn define_f(&mut self) -> Result<()> {
        // F(1) = 0 and F on the rest of level 0 (only the vacuum for VOAs).
        for k in self.v.level_basis(0) {
            let lvl = self.w_level_of_degree(0);
            self.f.insert(k, LinValue::zero(lvl, self.w_dim(lvl)));
        }
        for n in 1..=self.depth {
            let basis = self.v.level_basis(n);
            if basis.is_empty() {
                continue;
            }
            let dim = basis.len();
            let mut accepted_coords: Vec<Vec<RatFunc>> = Vec::new();
            let mut accepted_vals: Vec<LinValue> = Vec::new();
            let mut span = Subspace::new(dim);
            'candidates: for (gi, block) in self.layout.blocks.iter().enumerate() {
                let d = block.weight as i64;
                // Raising vertex-operator modes: delta = d - m - 1 >= 1.
                for delta in 1..=(n as i64) {
                    let m = d - delta - 1;
                    let src = n as i64 - delta;
                    for beta in self.v.level_basis(src as u32) {
                        let x = composite_mode(
                            self.v,
                            &block.gen,
                            m,
                            &Vector::single(beta.clone(), RatFunc::one()),
                        )?;
                        let x = self.v.project(&x)?;
                        if x.is_zero() {
                            continue;
                        }
                        let mut coords = vec![RatFunc::zero(); dim];
                        for (k, c) in x.terms() {
                            coords[self.v_index[k]] = c.clone();
                        }
                        if !span.insert(coords.clone()) {
                            continue;
                        }
                        let rhs = self.derivation_rhs(gi, m, &beta)?;
                        accepted_coords.push(coords);
                        accepted_vals.push(rhs);
                        if span.dim() == dim {
                            break 'candidates;
                        }
                    }
                }
            }
            if span.dim() != dim {
                return Err(Error::InconsistentSystem(format!(
                    "generators do not span level {n}: reached {} of {dim}",
                    span.dim()
                )));
            }
            // Solve X a = e_j for each basis key.
            let mut xmat = ExactMatrix::new(dim, dim);
            for (j, col) in accepted_coords.iter().enumerate() {
                for (i, c) in col.iter().enumerate() {
                    xmat.set(i, j, c.clone())?;
                }
            }
            let wl = self.w_level_of_degree(n as i64);
            for (j, key) in basis.iter().enumerate() {
                let mut rhs = vec![RatFunc::zero(); dim];
                rhs[j] = RatFunc::one();
                let a = xmat
                    .solve(&rhs)
                    .ok_or_else(|| Error::InconsistentSystem("spanning solve failed".into()))?;
                let mut val = LinValue::zero(wl, self.w_dim(wl));
                for (i, c) in a.iter().enumerate() {
                    val.add_scaled(&accepted_vals[i], c);
                }
                self.f.insert(key.clone(), val);
            }
        }
        Ok(())
    }

    /// Emit every constraint row F(g_m beta) - g_m F(beta) - F(g)_m beta = 0.
    fn emit_rows(&self) -> Result<(Vec<String>, ExactMatrix)> {
        let mut provenance = Vec::new();
        let mut rows: Vec<Vec<(usize, RatFunc)>> = Vec::new();
        for (gi, block) in self.layout.blocks.iter().enumerate() {
            let d = block.weight as i64;
            for n in 0..=self.depth {
                for beta in self.v.level_basis(n) {
                    // All modes with target level inside the window.
                    let m_min = d + n as i64 - 1 - self.depth as i64;
                    let m_max = d + n as i64 - 1;
                    for m in m_min..=m_max {
                        let target = n as i64 + d - m - 1;
                        let x = composite_mode(
                            self.v,
                            &block.gen,
                            m,
                            &Vector::single(beta.clone(), RatFunc::one()),
                        )?;
                        let x = self.v.project(&x)?;
                        let mut lhs = self.f_of_vector(&x, target as u32)?;
                        let rhs = self.derivation_rhs(gi, m, &beta)?;
                        if lhs.level != rhs.level {
                            if lhs.rows.iter().all(|r| r.is_empty())
                                && rhs.rows.iter().all(|r| r.is_empty())
                            {
                                continue;
                            }
                            return Err(Error::InconsistentSystem(
                                "row level mismatch".into(),
                            ));
                        }
                        lhs.add_scaled(&rhs, &RatFunc::int(-1));
                        for (r, row) in lhs.rows.iter().enumerate() {
                            if row.is_empty() {
                                continue;
                            }
                            provenance.push(format!(
                                "gen {} mode {m} on {beta} (component {r})",
                                self.v.key_string(&block.gen)
                            ));
                            rows.push(row.iter().map(|(u, c)| (*u, c.clone())).collect());
                        }
                    }
                }
            }
        }
        let mut mat = ExactMatrix::new(rows.len(), self.layout.total);
        for (i, row) in rows.iter().enumerate() {
            for (u, c) in row {
                mat.set(i, *u, c.clone())?;
            }
        }
        Ok((provenance, mat))
    }
}

/// Run the constraint solver for the instance (V, W, generators, depth).
pub fn derivation_solve(
    v: &dyn GradedModule,
    w: &dyn GradedModule,
    gens: &[BasisKey],
    depth: u32,
) -> Result<SolveResult> {
    let mut b = Builder::new(v, w, gens, depth);
    b.define_f()?;
    let (row_provenance, matrix) = b.emit_rows()?;
    let solution_basis = matrix.nullspace();
    Ok(SolveResult {
        layout: b.layout,
        depth,
        row_provenance,
        matrix,
        solution_basis,
    })
}

/// The zero-mode derivation space: tuples (w_0 g)_g for w in the degree-1
/// slice of W, spanned and expressed over the solver's unknown layout.
pub struct ZeroModeSpace {
    pub w1_keys: Vec<BasisKey>,
    pub tuples: Vec<Vec<RatFunc>>,
    pub basis: Vec<Vec<RatFunc>>,
    pub dim: usize,
}

pub fn zero_mode_space(
    w: &dyn GradedModule,
    gens: &[BasisKey],
    layout: &UnknownLayout,
) -> Result<ZeroModeSpace> {
    let w1_level = level_of_degree(w, 1);
    let w1_keys = w1_level.map(|l| w.level_basis(l)).unwrap_or_default();
    let mut tuples = Vec::new();
    let mut span = Subspace::new(layout.total);
    let mut basis = Vec::new();
    for w1 in &w1_keys {
        let wvec = Vector::single(w1.clone(), RatFunc::one());
        let mut tuple = vec![RatFunc::zero(); layout.total];
        for (gi, g) in gens.iter().enumerate() {
            let img = intertwiner_mode(w, &wvec, 0, &Vector::single(g.clone(), RatFunc::one()))?;
            let img = w.project(&img)?;
            let block = &layout.blocks[gi];
            for (k, c) in img.terms() {
                let pos = block
                    .keys
                    .iter()
                    .position(|x| x == k)
                    .ok_or_else(|| Error::InconsistentSystem("zero-mode image outside block".into()))?;
                tuple[block.offset + pos] = c.clone();
            }
        }
        if span.insert(tuple.clone()) {
            basis.push(tuple.clone());
        }
        tuples.push(tuple);
    }
    Ok(ZeroModeSpace {
        w1_keys,
        tuples,
        dim: span.dim(),
        basis,
    })
}

/// dim W_[1] - dim L(-1) W_[0]: the a-priori bound on dim Z^1.
pub fn zsp_upper_bound(w: &dyn GradedModule) -> Result<usize> {
    let Some(l1) = level_of_degree(w, 1) else {
        return Ok(0);
    };
    let d1 = w.level_dim(l1);
    let Some(l0) = level_of_degree(w, 0) else {
        return Ok(d1);
    };
    // Rank of L(-1): W_[0] -> W_[1].
    let mut span = Subspace::new(d1);
    let basis1 = w.level_basis(l1);
    let index: HashMap<&BasisKey, usize> = basis1.iter().enumerate().map(|(i, k)| (k, i)).collect();
    for k in w.level_basis(l0) {
        let img = w.raw_act(&RawGen::L, -1, &k)?;
        let img = w.project(&img)?;
        let mut coords = vec![RatFunc::zero(); d1];
        for (kk, c) in img.terms() {
            coords[index[kk]] = c.clone();
        }
        span.insert(coords);
    }
    Ok(d1 - span.dim())
}

/// Linear extension of a stored F over the basis keys of a vector.
pub fn f_linear(f: &HashMap<BasisKey, Vector>, x: &Vector) -> Result<Vector> {
    let mut out = Vector::zero();
    for (k, c) in x.terms() {
        let fv = f
            .get(k)
            .ok_or_else(|| Error::InconsistentSystem(format!("F undefined on {k}")))?;
        out.add_scaled(fv, c);
    }
    Ok(out)
}

/// Build the concrete extension of generator images over all basis keys of
/// V up to the depth via the spanning recursion.
pub fn extend_images(
    v: &dyn GradedModule,
    w: &dyn GradedModule,
    gens: &[BasisKey],
    images: &[Vector],
    depth: u32,
) -> Result<HashMap<BasisKey, Vector>> {
    let mut f: HashMap<BasisKey, Vector> = HashMap::new();
    for k in v.level_basis(0) {
        f.insert(k, Vector::zero());
    }
    let gen_index: HashMap<&BasisKey, usize> =
        gens.iter().enumerate().map(|(i, k)| (k, i)).collect();
    for n in 1..=depth {
        let basis = v.level_basis(n);
        if basis.is_empty() {
            continue;
        }
        let dim = basis.len();
        let v_index: HashMap<&BasisKey, usize> =
            basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut span = Subspace::new(dim);
        let mut accepted: Vec<(Vec<RatFunc>, Vector)> = Vec::new();
        'outer: for g in gens {
            let gi = gen_index[g];
            let d = v.key_level(g) as i64;
            for delta in 1..=(n as i64) {
                let m = d - delta - 1;
                let src = (n as i64 - delta) as u32;
                for beta in v.level_basis(src) {
                    let x = v.project(&composite_mode(
                        v,
                        g,
                        m,
                        &Vector::single(beta.clone(), RatFunc::one()),
                    )?)?;
                    if x.is_zero() {
                        continue;
                    }
                    let mut coords = vec![RatFunc::zero(); dim];
                    for (k, c) in x.terms() {
                        coords[v_index[k]] = c.clone();
                    }
                    if !span.insert(coords.clone()) {
                        continue;
                    }
                    let beta_vec = Vector::single(beta.clone(), RatFunc::one());
                    let fx = f_linear(&f, &beta_vec)?;
                    let mut val = w.project(&composite_mode(w, g, m, &fx)?)?;
                    let img = &images[gi];
                    if !img.is_zero() {
                        let t = intertwiner_mode(w, img, m, &beta_vec)?;
                        val.add_scaled(&w.project(&t)?, &RatFunc::one());
                    }
                    accepted.push((coords, val));
                    if span.dim() == dim {
                        break 'outer;
                    }
                }
            }
        }
        if span.dim() != dim {
            return Err(Error::InconsistentSystem(format!(
                "generators do not span level {n}"
            )));
        }
        let mut xmat = ExactMatrix::new(dim, dim);
        for (j, (col, _)) in accepted.iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                xmat.set(i, j, c.clone())?;
            }
        }
        for (j, key) in basis.iter().enumerate() {
            let mut rhs = vec![RatFunc::zero(); dim];
            rhs[j] = RatFunc::one();
            let a = xmat
                .solve(&rhs)
                .ok_or_else(|| Error::InconsistentSystem("spanning solve failed".into()))?;
            let mut val = Vector::zero();
            for (i, c) in a.iter().enumerate() {
                val.add_scaled(&accepted[i].1, c);
            }
            f.insert(key.clone(), val);
        }
    }
    Ok(f)
}

/// Extend generator images to all of V up to the depth and re-verify the
/// derivation property on every (basis element, mode, basis element) triple.
/// Returns the first violated triple, or None when everything checks out.
pub fn extend_and_verify(
    v: &dyn GradedModule,
    w: &dyn GradedModule,
    gens: &[BasisKey],
    images: &[Vector],
    depth: u32,
) -> Result<Option<String>> {
    let f = extend_images(v, w, gens, images, depth)?;
    let f_of = f_linear;
    let rhs_of = |f: &HashMap<BasisKey, Vector>, a: &BasisKey, m: i64, x: &Vector| -> Result<Vector> {
        // a_m F(x) + F(a)_m x, for F already defined on a and on x's keys.
        let fx = f_of(f, x)?;
        let mut rhs = w.project(&composite_mode(w, a, m, &fx)?)?;
        let fa = f
            .get(a)
            .ok_or_else(|| Error::InconsistentSystem(format!("F undefined on {a}")))?;
        if !fa.is_zero() {
            let t = intertwiner_mode(w, fa, m, x)?;
            rhs.add_scaled(&w.project(&t)?, &RatFunc::one());
        }
        Ok(rhs)
    };
    // Record the generator images on file: F must agree with them.
    for (gi, g) in gens.iter().enumerate() {
        let have = f.get(g).cloned().unwrap_or_default();
        if have != images[gi] {
            return Ok(Some(format!(
                "image of generator {} inconsistent with recursion",
                v.key_string(g)
            )));
        }
    }
    // Full re-verification: F(a_m b) = a_m F(b) + F(a)_m b for all pairs of
    // basis elements within the depth and every mode landing inside it.
    for na in 0..=depth {
        for a in v.level_basis(na) {
            for nb in 0..=depth {
                if na + nb > depth {
                    continue;
                }
                for b in v.level_basis(nb) {
                    let m_min = na as i64 + nb as i64 - 1 - depth as i64;
                    let m_max = na as i64 + nb as i64 - 1;
                    for m in m_min..=m_max {
                        let x = v.project(&composite_mode(
                            v,
                            &a,
                            m,
                            &Vector::single(b.clone(), RatFunc::one()),
                        )?)?;
                        let lhs = f_of(&f, &x)?;
                        let rhs = rhs_of(&f, &a, m, &Vector::single(b.clone(), RatFunc::one()))?;
                        if lhs != rhs.clone() {
                            return Ok(Some(format!(
                                "violated at ({}, mode {m}, {})",
                                v.key_string(&a),
                                v.key_string(&b)
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    CertifiedEqual,
    Counterexample,
    Inconclusive,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::CertifiedEqual => "CERTIFIED_EQUAL",
            Status::Counterexample => "COUNTEREXAMPLE",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }
}

pub struct CohomologyOutcome {
    pub depth: u32,
    pub dim_solutions: usize,
    pub dim_zero_mode: usize,
    pub zsp_bound: usize,
    pub status: Status,
    /// Solution-space basis as generator-image tuples.
    pub solution_witnesses: Vec<Vec<Vector>>,
    pub zero_mode_witnesses: Vec<Vec<Vector>>,
    /// For a counterexample: the verified witness index and depth.
    pub counterexample: Option<usize>,
    pub suggested_depth: Option<u32>,
}

/// Certify from precomputed solver output (exposed so soundness tests can
/// inject mutated solution spaces).
pub fn certify_from_parts(
    v: &dyn GradedModule,
    w: &dyn GradedModule,
    gens: &[BasisKey],
    solve: &SolveResult,
    depth: u32,
) -> Result<CohomologyOutcome> {
    let zm = zero_mode_space(w, gens, &solve.layout)?;
    // Zero-mode derivations are derivations: their tuples must satisfy every
    // row; a violation is an engine bug, not a mathematical finding.
    for t in &zm.tuples {
        let residual = solve.matrix.mul_vec(t);
        if residual.iter().any(|x| !x.is_zero()) {
            return Err(Error::InconsistentSystem(
                "zero-mode tuple violates a constraint row".into(),
            ));
        }
    }
    let dim_s = solve.dim_solutions();
    let dim_z = zm.dim;
    let mut status = if dim_s == dim_z {
        Status::CertifiedEqual
    } else {
        Status::Inconclusive
    };
    let mut counterexample = None;
    if dim_s != dim_z {
        // Look for a solution outside the zero-mode span that survives the
        // recursive re-verification.
        let mut zspan = Subspace::new(solve.layout.total);
        for t in &zm.basis {
            zspan.insert(t.clone());
        }
        for (i, sol) in solve.solution_basis.iter().enumerate() {
            if zspan.contains(sol) {
                continue;
            }
            let images = solve.images_of(sol);
            if extend_and_verify(v, w, gens, &images, depth)?.is_none() {
                status = Status::Counterexample;
                counterexample = Some(i);
                break;
            }
        }
    }
    let outcome = CohomologyOutcome {
        depth,
        dim_solutions: dim_s,
        dim_zero_mode: dim_z,
        zsp_bound: zsp_upper_bound(w)?,
        status,
        solution_witnesses: solve
            .solution_basis
            .iter()
            .map(|s| solve.images_of(s))
            .collect(),
        zero_mode_witnesses: zm.basis.iter().map(|s| solve.images_of(s)).collect(),
        counterexample,
        suggested_depth: if status == Status::Inconclusive {
            Some(depth + 2)
        } else {
            None
        },
    };
    Ok(outcome)
}

/// Full pipeline: solve, compute the zero-mode space, and classify.
pub fn certify(
    v: &dyn GradedModule,
    w: &dyn GradedModule,
    gens: &[BasisKey],
    depth: u32,
) -> Result<CohomologyOutcome> {
    let solve = derivation_solve(v, w, gens, depth)?;
    certify_from_parts(v, w, gens, &solve, depth)
}
