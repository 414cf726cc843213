//! Negative-energy derivation constraints over Q(c).
//!
//! For an L(0)-graded module of lowest weight h in {-1, -2, -3}, a derivation
//! image F(w) of the conformal vector is an unknown combination of the
//! depth-(2-h) words with at least one L(-1) factor. The constraints
//! L(2m)F in Im L(-1) and L(2m)F - (1/2)L(-1)L(2m+1)F in Im L(-1)^2 yield an
//! exact linear system on the ansatz coefficients; the matching step then
//! expresses the surviving family as zero modes of weight-1 elements modulo
//! Im L(-1)^4.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::modes::{intertwiner_mode, BasisKey, Vector};
use crate::scalars::{rat_int, ExactMatrix, RatFunc, Subspace};

use super::{partitions, VirasoroModule};

/// One emitted constraint row with its provenance.
#[derive(Clone, Debug)]
pub struct ConstraintRow {
    pub provenance: String,
    pub coeffs: Vec<RatFunc>,
}

pub struct NegEnergyReport {
    pub h: i64,
    /// Ansatz words in the printed order (fewest L(-1) factors first).
    pub ansatz: Vec<BasisKey>,
    /// Raw actions L(m)F per ansatz word, for m = 2..=2-h, keyed by m.
    pub actions: Vec<(i64, Vec<Vector>)>,
    pub rows: Vec<ConstraintRow>,
    /// Basis of the exact solution space of the stacked system over Q(c).
    pub solution_basis: Vec<Vec<RatFunc>>,
    /// The working module (Verma at symbolic c, numeric h).
    pub module: VirasoroModule,
}

/// Ansatz order: fewest L(-1) factors first, then shorter words, then
/// reverse-lexicographic; reproduces the printed coefficient labels.
fn ansatz_words(h: i64) -> Vec<Vec<u32>> {
    let depth = (2 - h) as u32;
    let mut words: Vec<Vec<u32>> = partitions(depth, 1)
        .into_iter()
        .filter(|w| w.iter().any(|&p| p == 1))
        .collect();
    words.sort_by(|a, b| {
        let ones = |w: &Vec<u32>| w.iter().filter(|&&p| p == 1).count();
        ones(a)
            .cmp(&ones(b))
            .then(a.len().cmp(&b.len()))
            .then(b.cmp(a))
    });
    words
}

/// Subspace of Im L(-1)^p inside the internal level, with the basis order.
fn image_subspace(
    m: &VirasoroModule,
    level: u32,
    p: u32,
) -> Result<(Subspace, HashMap<BasisKey, usize>)> {
    let basis = m.internal_basis(level);
    let index: HashMap<BasisKey, usize> = basis.iter().cloned().zip(0..).collect();
    let mut space = Subspace::new(basis.len());
    if level >= p {
        for key in m.internal_basis(level - p) {
            let BasisKey::Vir(word) = &key else { unreachable!() };
            let mut v = Vector::single(BasisKey::Vir(word.clone()), RatFunc::one());
            for _ in 0..p {
                let mut next = Vector::zero();
                for (k, coeff) in v.terms() {
                    let BasisKey::Vir(w) = k else { unreachable!() };
                    next.add_scaled(&m.act_l(-1, w)?, coeff);
                }
                v = next;
            }
            let mut coords = vec![RatFunc::zero(); basis.len()];
            for (k, coeff) in v.terms() {
                coords[index[k]] = coeff.clone();
            }
            space.insert(coords);
        }
    }
    Ok((space, index))
}

fn coords_of(v: &Vector, index: &HashMap<BasisKey, usize>, dim: usize) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::zero(); dim];
    for (k, c) in v.terms() {
        out[index[k]] = c.clone();
    }
    out
}

/// Build and solve the constraint system at lowest weight h in {-1,-2,-3}.
pub fn negative_energy_system(h: i64) -> Result<NegEnergyReport> {
    if !(-3..=-1).contains(&h) {
        return Err(Error::BadSpec(format!(
            "negative-energy analysis covers h in {{-1,-2,-3}}, got {h}"
        )));
    }
    let depth = (2 - h) as u32;
    let module = VirasoroModule::verma(RatFunc::c(), RatFunc::from_rat(rat_int(h)), depth + 2);
    let words = ansatz_words(h);
    let ansatz: Vec<BasisKey> = words.iter().cloned().map(BasisKey::Vir).collect();

    // Record L(m) actions for the audit: every m that lands at level >= 0.
    let mut actions = Vec::new();
    for m in 2..=(depth as i64) {
        let acted: Result<Vec<Vector>> = words.iter().map(|w| module.act_l(m, w)).collect();
        actions.push((m, acted?));
    }
    let action_of = |m: i64, j: usize| -> &Vector { &actions[(m - 2) as usize].1[j] };

    let mut rows: Vec<ConstraintRow> = Vec::new();
    let mut push_rows = |vectors: Vec<Vector>,
                         level: u32,
                         p: u32,
                         label: &str,
                         module: &VirasoroModule|
     -> Result<()> {
        let (space, index) = image_subspace(module, level, p)?;
        let basis = module.internal_basis(level);
        let residuals: Vec<Vec<RatFunc>> = vectors
            .iter()
            .map(|v| space.reduce(coords_of(v, &index, basis.len())))
            .collect();
        for (i, key) in basis.iter().enumerate() {
            if residuals.iter().any(|r| !r[i].is_zero()) {
                rows.push(ConstraintRow {
                    provenance: format!("{label}: component {key}"),
                    coeffs: residuals.iter().map(|r| r[i].clone()).collect(),
                });
            }
        }
        Ok(())
    };

    let max_m = depth as i64 / 2;
    for m in 1..=max_m {
        // L(2m)F in Im L(-1)
        let lvl_a = depth - (2 * m) as u32;
        let va: Vec<Vector> = (0..words.len())
            .map(|j| action_of(2 * m, j).clone())
            .collect();
        push_rows(
            va.clone(),
            lvl_a,
            1,
            &format!("L({})F(w) in Im L(-1)", 2 * m),
            &module,
        )?;

        // L(2m)F - 1/2 L(-1) L(2m+1)F in Im L(-1)^2
        let mut vb = Vec::new();
        for (j, a) in va.iter().enumerate() {
            let mut x = a.clone();
            if 2 * m + 1 <= depth as i64 {
                let l_next = action_of(2 * m + 1, j);
                let mut shifted = Vector::zero();
                for (k, coeff) in l_next.terms() {
                    let BasisKey::Vir(w) = k else { unreachable!() };
                    shifted.add_scaled(&module.act_l(-1, w)?, coeff);
                }
                x.add_scaled(&shifted, &RatFunc::rat(-1, 2));
            }
            vb.push(x);
        }
        push_rows(
            vb,
            lvl_a,
            2,
            &format!(
                "L({})F(w) - 1/2 L(-1)L({})F(w) in Im L(-1)^2",
                2 * m,
                2 * m + 1
            ),
            &module,
        )?;
    }

    let mut mat = ExactMatrix::new(rows.len(), ansatz.len());
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.coeffs.iter().enumerate() {
            mat.set(i, j, v.clone())?;
        }
    }
    let solution_basis = mat.nullspace();

    Ok(NegEnergyReport {
        h,
        ansatz,
        actions,
        rows,
        solution_basis,
        module,
    })
}

pub struct MatchingReport {
    pub h: i64,
    /// Weight-1 words (no L(-1) factor) spanning the complement of Im L(-1).
    pub w1_words: Vec<BasisKey>,
    /// Zero modes (w1)_0 w applied to the conformal vector.
    pub zero_modes: Vec<Vector>,
    /// det of the square residual system when defined; its vanishing locus
    /// is the degeneracy condition on c.
    pub degeneracy_det: Option<RatFunc>,
    /// For each solution-space basis element F: matching coefficients x with
    /// F - sum x_i (w1_i)_0 w in Im L(-1)^4, plus the verification flag.
    pub matchings: Vec<(Vec<RatFunc>, bool)>,
}

/// Solve F(w) = sum_i x_i (w1_i)_0 w  mod Im L(-1)^4 for every solution F of
/// the constraint system.
pub fn zero_mode_matching(report: &NegEnergyReport) -> Result<MatchingReport> {
    let h = report.h;
    let depth = (2 - h) as u32;
    let module = &report.module;
    let w1_level = (1 - h) as u32;
    let w1_words: Vec<BasisKey> = partitions(w1_level, 2)
        .into_iter()
        .map(BasisKey::Vir)
        .collect();

    let omega = Vector::single(BasisKey::omega(), RatFunc::one());
    let mut zero_modes = Vec::new();
    for w in &w1_words {
        let wv = Vector::single(w.clone(), RatFunc::one());
        zero_modes.push(intertwiner_mode(module, &wv, 0, &omega)?);
    }

    let (im4, index) = image_subspace(module, depth, 4)?;
    let basis = module.internal_basis(depth);
    let zm_resid: Vec<Vec<RatFunc>> = zero_modes
        .iter()
        .map(|v| im4.reduce(coords_of(v, &index, basis.len())))
        .collect();

    // Rows where some zero-mode residual is nonzero.
    let active: Vec<usize> = (0..basis.len())
        .filter(|&i| zm_resid.iter().any(|r| !r[i].is_zero()))
        .collect();
    let mut a = ExactMatrix::new(active.len(), w1_words.len());
    for (r, &i) in active.iter().enumerate() {
        for (cidx, resid) in zm_resid.iter().enumerate() {
            a.set(r, cidx, resid[i].clone())?;
        }
    }
    let degeneracy_det = if active.len() == w1_words.len() {
        Some(a.determinant()?)
    } else {
        None
    };

    let mut matchings = Vec::new();
    for sol in &report.solution_basis {
        let mut f = Vector::zero();
        for (j, coeff) in sol.iter().enumerate() {
            f.add_scaled(
                &Vector::single(report.ansatz[j].clone(), RatFunc::one()),
                coeff,
            );
        }
        let f_resid = im4.reduce(coords_of(&f, &index, basis.len()));
        // Consistency beyond the active rows means no solution.
        let consistent_outside = (0..basis.len())
            .filter(|i| !active.contains(i))
            .all(|i| f_resid[i].is_zero());
        let rhs: Vec<RatFunc> = active.iter().map(|&i| f_resid[i].clone()).collect();
        match (consistent_outside, a.solve(&rhs)) {
            (true, Some(x)) => {
                // Verify F - sum x_i zm_i in Im L(-1)^4 exactly.
                let mut diff = f.clone();
                for (i, zm) in zero_modes.iter().enumerate() {
                    diff.add_scaled(zm, &-&x[i]);
                }
                let ok = im4
                    .reduce(coords_of(&diff, &index, basis.len()))
                    .iter()
                    .all(|v| v.is_zero());
                matchings.push((x, ok));
            }
            _ => matchings.push((vec![], false)),
        }
    }

    Ok(MatchingReport {
        h,
        w1_words,
        zero_modes,
        degeneracy_det,
        matchings,
    })
}
