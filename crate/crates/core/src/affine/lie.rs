//! Simple Lie algebra data: Chevalley bases, the normalized invariant form,
//! finite-dimensional modules, the Casimir element, and the Whitehead
//! inner-derivation solver.
//!
//! A1 and A2 are built in from their defining matrix realizations (structure
//! constants are derived, then validated against the bracket identities);
//! other algebras can be supplied as structure-constant tables and go through
//! the same validation.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalars::{rat, rat_int, ExactMatrix, Rat, RatFunc};

/// Root in integer coordinates over the simple roots.
pub type Root = Vec<i64>;

/// Basis layout: indices 0..rank are the Cartan elements t_i attached to the
/// simple roots; index rank + k is the root vector for `roots[k]`.
pub struct SimpleLieAlgebra {
    pub name: String,
    pub rank: usize,
    /// All roots, positive first, in a fixed order.
    pub roots: Vec<Root>,
    /// Gram matrix of the simple roots under the normalized form.
    pub simple_gram: Vec<Vec<Rat>>,
    /// bracket[i][j] = [x_i, x_j] as a basis combination.
    bracket: Vec<Vec<Vec<(usize, Rat)>>>,
    /// Normalized invariant form on the basis.
    form: Vec<Vec<Rat>>,
}

fn dot(gram: &[Vec<Rat>], a: &[Rat], b: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            s += ai * &gram[i][j] * bj;
        }
    }
    s
}

fn root_to_rat(r: &Root) -> Vec<Rat> {
    r.iter().map(|&k| rat_int(k)).collect()
}

impl SimpleLieAlgebra {
    pub fn dim(&self) -> usize {
        self.rank + self.roots.len()
    }

    pub fn a1() -> Self {
        // sl2: e = E12, f = E21, t = E11 - E22; trace form.
        let mats = vec![
            mat2(&[(0, 0, 1), (1, 1, -1)]),
            mat2(&[(0, 1, 1)]),
            mat2(&[(1, 0, 1)]),
        ];
        Self::from_matrices("A1", 1, vec![vec![1], vec![-1]], vec![vec![rat(2, 1)]], mats)
    }

    pub fn a2() -> Self {
        // sl3 with the Chevalley basis E12, E23, E13 and transposes.
        let mats = vec![
            mat3(&[(0, 0, 1), (1, 1, -1)]),
            mat3(&[(1, 1, 1), (2, 2, -1)]),
            mat3(&[(0, 1, 1)]),
            mat3(&[(1, 2, 1)]),
            mat3(&[(0, 2, 1)]),
            mat3(&[(1, 0, 1)]),
            mat3(&[(2, 1, 1)]),
            mat3(&[(2, 0, 1)]),
        ];
        let roots = vec![
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![-1, 0],
            vec![0, -1],
            vec![-1, -1],
        ];
        let gram = vec![vec![rat(2, 1), rat(-1, 1)], vec![rat(-1, 1), rat(2, 1)]];
        Self::from_matrices("A2", 2, roots, gram, mats)
    }

    /// Derive brackets and the form from an n x n matrix realization.
    fn from_matrices(
        name: &str,
        rank: usize,
        roots: Vec<Root>,
        simple_gram: Vec<Vec<Rat>>,
        mats: Vec<Vec<Vec<Rat>>>,
    ) -> Self {
        let dim = mats.len();
        let n = mats[0].len();
        // Coordinate solver: flatten basis matrices into columns.
        let mut cols = ExactMatrix::new(n * n, dim);
        for (j, m) in mats.iter().enumerate() {
            for a in 0..n {
                for b in 0..n {
                    if !m[a][b].is_zero() {
                        cols.set(a * n + b, j, RatFunc::from_rat(m[a][b].clone()))
                            .unwrap();
                    }
                }
            }
        }
        let coords = |x: &Vec<Vec<Rat>>| -> Vec<Rat> {
            let mut rhs = vec![RatFunc::zero(); n * n];
            for a in 0..n {
                for b in 0..n {
                    rhs[a * n + b] = RatFunc::from_rat(x[a][b].clone());
                }
            }
            cols.solve(&rhs)
                .expect("element outside the algebra span")
                .into_iter()
                .map(|v| v.as_rat().unwrap())
                .collect()
        };
        let mut bracket = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let mut br = vec![vec![Rat::zero(); n]; n];
                for a in 0..n {
                    for b in 0..n {
                        let mut s = Rat::zero();
                        for k in 0..n {
                            s += &mats[i][a][k] * &mats[j][k][b];
                            s -= &mats[j][a][k] * &mats[i][k][b];
                        }
                        br[a][b] = s;
                    }
                }
                bracket[i][j] = coords(&br)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
            }
        }
        let mut form = vec![vec![Rat::zero(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let mut s = Rat::zero();
                for a in 0..n {
                    for b in 0..n {
                        s += &mats[i][a][b] * &mats[j][b][a];
                    }
                }
                form[i][j] = s;
            }
        }
        let g = SimpleLieAlgebra {
            name: name.into(),
            rank,
            roots,
            simple_gram,
            bracket,
            form,
        };
        g.validate().expect("built-in algebra must validate");
        g
    }

    /// Assemble an algebra from a structure-constant table: roots in simple
    /// root coordinates, the simple-root Gram matrix, and c_{ab} for each
    /// pair of roots with a + b a root.
    pub fn from_structure_constants(
        name: &str,
        rank: usize,
        roots: Vec<Root>,
        simple_gram: Vec<Vec<Rat>>,
        constants: &HashMap<(usize, usize), Rat>,
    ) -> Result<Self> {
        let dim = rank + roots.len();
        let root_index: HashMap<Root, usize> =
            roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let pair = |a: &Root, b: &Root| dot(&simple_gram, &root_to_rat(a), &root_to_rat(b));
        let mut bracket = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                bracket[i][j] = if i < rank && j < rank {
                    Vec::new()
                } else if i < rank || j < rank {
                    // [t_i, e_b] = b(t_i) e_b = <alpha_i, b> e_b
                    let (t, e, sign) = if i < rank { (i, j, 1) } else { (j, i, -1) };
                    let b = &roots[e - rank];
                    let mut alpha_i = vec![0i64; rank];
                    alpha_i[t] = 1;
                    let c = pair(&alpha_i, b) * rat_int(sign);
                    if c.is_zero() {
                        Vec::new()
                    } else {
                        vec![(e, c)]
                    }
                } else {
                    let a = &roots[i - rank];
                    let b = &roots[j - rank];
                    let sum: Root = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    if sum.iter().all(|&k| k == 0) {
                        // [e_a, e_-a] = (2/<a,a>) t_a with t_a = sum a_k t_k.
                        let norm = pair(a, a);
                        a.iter()
                            .enumerate()
                            .filter(|(_, &k)| k != 0)
                            .map(|(k, &coeff)| (k, rat(2, 1) / norm.clone() * rat_int(coeff)))
                            .collect()
                    } else if let Some(&s) = root_index.get(&sum) {
                        let c = constants.get(&(i - rank, j - rank)).cloned().ok_or_else(
                            || {
                                Error::BadSpec(format!(
                                    "missing structure constant for roots {} and {}",
                                    i - rank,
                                    j - rank
                                ))
                            },
                        )?;
                        vec![(rank + s, c)]
                    } else {
                        Vec::new()
                    }
                };
            }
        }
        // Normalized form: <t_i, t_j> from the simple Gram, <e_a, e_-a> = 2/<a,a>.
        let mut form = vec![vec![Rat::zero(); dim]; dim];
        for i in 0..rank {
            for j in 0..rank {
                form[i][j] = simple_gram[i][j].clone();
            }
        }
        for (k, a) in roots.iter().enumerate() {
            let neg: Root = a.iter().map(|&x| -x).collect();
            if let Some(&kn) = root_index.get(&neg) {
                form[rank + k][rank + kn] = rat(2, 1) / pair(a, a);
            }
        }
        let g = SimpleLieAlgebra {
            name: name.into(),
            rank,
            roots,
            simple_gram,
            bracket,
            form,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.bracket[i][j]
    }

    /// Bracket of basis element i with a coordinate vector.
    pub fn bracket_vec(&self, i: usize, x: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        for (j, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, b) in &self.bracket[i][j] {
                out[*k] += b * c;
            }
        }
        out
    }

    pub fn form(&self, i: usize, j: usize) -> &Rat {
        &self.form[i][j]
    }

    pub fn root_pairing(&self, a: &Root, b: &Root) -> Rat {
        dot(&self.simple_gram, &root_to_rat(a), &root_to_rat(b))
    }

    pub fn e_index(&self, r: &Root) -> Option<usize> {
        self.roots.iter().position(|x| x == r).map(|k| self.rank + k)
    }

    pub fn positive_roots(&self) -> Vec<Root> {
        // Positive = last nonzero coordinate positive (roots are stored with
        // positives first, but derive it rather than trust the order).
        self.roots
            .iter()
            .filter(|r| {
                r.iter()
                    .rev()
                    .find(|&&k| k != 0)
                    .map(|&k| k > 0)
                    .unwrap_or(false)
            })
            .cloned()
            .collect()
    }

    /// Half-sum of the positive roots, in simple-root coordinates.
    pub fn rho(&self) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.rank];
        for r in self.positive_roots() {
            for (i, &k) in r.iter().enumerate() {
                out[i] += rat(k, 2);
            }
        }
        out
    }

    /// Highest root: the positive root of maximal height.
    pub fn theta(&self) -> Root {
        self.positive_roots()
            .into_iter()
            .max_by_key(|r| r.iter().sum::<i64>())
            .expect("nonempty root system")
    }

    /// Dual Coxeter number h^vee = 1 + <rho, theta>.
    pub fn dual_coxeter(&self) -> Rat {
        let theta = root_to_rat(&self.theta());
        rat(1, 1) + dot(&self.simple_gram, &self.rho(), &theta)
    }

    /// Fundamental-weight coordinates -> simple-root coordinates.
    pub fn weight_to_root_coords(&self, lambda: &[u64]) -> Vec<Rat> {
        // omega_i defined by <omega_i, alpha_j^vee> = delta_ij; with all roots
        // of a simply laced algebra normalized to <a,a> = 2 this solves
        // G x = lambda where G is the simple Gram.
        assert_eq!(lambda.len(), self.rank);
        let mut g = ExactMatrix::new(self.rank, self.rank);
        for i in 0..self.rank {
            for j in 0..self.rank {
                // <alpha_j^vee, alpha_i> = 2 <alpha_j, alpha_i>/<alpha_j, alpha_j>
                let mut a = vec![0i64; self.rank];
                a[i] = 1;
                let mut b = vec![0i64; self.rank];
                b[j] = 1;
                let v = rat(2, 1) * self.root_pairing(&a, &b)
                    / self.root_pairing(&b, &b);
                g.set(i, j, RatFunc::from_rat(v)).unwrap();
            }
        }
        let rhs: Vec<RatFunc> = lambda
            .iter()
            .map(|&x| RatFunc::from_rat(rat_int(x as i64)))
            .collect();
        g.solve(&rhs)
            .expect("Cartan matrix invertible")
            .into_iter()
            .map(|v| v.as_rat().unwrap())
            .collect()
    }

    pub fn weight_pairing(&self, a: &[Rat], b: &[Rat]) -> Rat {
        dot(&self.simple_gram, a, b)
    }

    /// Check all stored identities: antisymmetry, Jacobi, the Chevalley
    /// normalization [e_a, e_-a] = (2/<a,a>) t_a, and form invariance.
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        let br = |i: usize, x: &Vec<Rat>| self.bracket_vec(i, x);
        let unit = |i: usize| {
            let mut v = vec![Rat::zero(); dim];
            v[i] = Rat::one();
            v
        };
        // Antisymmetry.
        for i in 0..dim {
            for j in 0..dim {
                let a = br(i, &unit(j));
                let mut b = br(j, &unit(i));
                for x in b.iter_mut() {
                    *x = -x.clone();
                }
                if a != b {
                    return Err(Error::BadSpec(format!(
                        "bracket not antisymmetric at ({i}, {j})"
                    )));
                }
            }
        }
        // Jacobi on all basis triples.
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let mut total = br(i, &br(j, &unit(k)));
                    let t2 = br(j, &{
                        let mut v = br(i, &unit(k));
                        for x in v.iter_mut() {
                            *x = -x.clone();
                        }
                        v
                    });
                    let ij = self.bracket[i][j].clone();
                    let mut t3 = vec![Rat::zero(); dim];
                    for (m, c) in ij {
                        for (n, d) in self.bracket[m][k].iter().map(|(n, d)| (*n, d.clone())) {
                            t3[n] -= c.clone() * d;
                        }
                    }
                    for (x, y) in total.iter_mut().zip(t2) {
                        *x += y;
                    }
                    for (x, y) in total.iter_mut().zip(t3) {
                        *x += y;
                    }
                    if total.iter().any(|x| !x.is_zero()) {
                        return Err(Error::BadSpec(format!(
                            "Jacobi identity fails on basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        // Form invariance: <[x,y],z> + <y,[x,z]> = 0.
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let mut s = Rat::zero();
                    for (m, c) in &self.bracket[i][j] {
                        s += c * &self.form[*m][k];
                    }
                    for (m, c) in &self.bracket[i][k] {
                        s += c * &self.form[j][*m];
                    }
                    if !s.is_zero() {
                        return Err(Error::BadSpec(format!(
                            "form not invariant at ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Structure constant c_{ab} for roots a, b (indices into `roots`) with
    /// a + b a root.
    pub fn chevalley_constant(&self, a: usize, b: usize) -> Option<Rat> {
        let sum: Root = self.roots[a]
            .iter()
            .zip(&self.roots[b])
            .map(|(x, y)| x + y)
            .collect();
        let target = self.e_index(&sum)?;
        self.bracket[self.rank + a][self.rank + b]
            .iter()
            .find(|(k, _)| *k == target)
            .map(|(_, c)| c.clone())
            .or(Some(Rat::zero()))
    }

    /// Verify c_{ab}/<g,g> = c_{bg}/<a,a> = c_{ga}/<b,b> on all root triples
    /// with a + b + g = 0, plus the antisymmetries.
    pub fn chevalley_identity_check(&self) -> bool {
        let nroots = self.roots.len();
        for a in 0..nroots {
            for b in 0..nroots {
                let ra = &self.roots[a];
                let rb = &self.roots[b];
                let rg: Root = ra.iter().zip(rb).map(|(x, y)| -(x + y)).collect();
                if rg.iter().all(|&k| k == 0) {
                    continue;
                }
                let Some(gidx) = self.roots.iter().position(|r| *r == rg) else {
                    continue;
                };
                let (Some(cab), Some(cbg), Some(cga)) = (
                    self.chevalley_constant(a, b),
                    self.chevalley_constant(b, gidx),
                    self.chevalley_constant(gidx, a),
                ) else {
                    return false;
                };
                let na = self.root_pairing(ra, ra);
                let nb = self.root_pairing(rb, rb);
                let ng = self.root_pairing(&rg, &rg);
                if cab.clone() / ng != cbg.clone() / na.clone() || cbg / na != cga / nb {
                    return false;
                }
                // c_{ab} = -c_{ba} = -c_{-a,-b}
                let nega: Root = ra.iter().map(|&k| -k).collect();
                let negb: Root = rb.iter().map(|&k| -k).collect();
                let ia = self.roots.iter().position(|r| *r == nega).unwrap();
                let ib = self.roots.iter().position(|r| *r == negb).unwrap();
                let cba = self.chevalley_constant(b, a).unwrap();
                let cnn = self.chevalley_constant(ia, ib).unwrap();
                if cab != -cba.clone() || cab != -cnn.clone() {
                    return false;
                }
            }
        }
        true
    }

    /// Dual-basis pairs (u_i, u^i) for the Casimir element.
    pub fn casimir_pairs(&self) -> Vec<(usize, Vec<Rat>)> {
        let mut pairs = Vec::new();
        // Cartan block: invert the restricted form.
        let r = self.rank;
        let mut gc = ExactMatrix::new(r, r);
        for i in 0..r {
            for j in 0..r {
                gc.set(i, j, RatFunc::from_rat(self.form[i][j].clone()))
                    .unwrap();
            }
        }
        for i in 0..r {
            let mut rhs = vec![RatFunc::zero(); r];
            rhs[i] = RatFunc::one();
            let x = gc.solve(&rhs).expect("form nondegenerate on Cartan");
            let mut dual = vec![Rat::zero(); self.dim()];
            for (j, v) in x.into_iter().enumerate() {
                dual[j] = v.as_rat().unwrap();
            }
            pairs.push((i, dual));
        }
        // Root block: dual of e_a is (<a,a>/2) e_{-a}.
        for (k, a) in self.roots.iter().enumerate() {
            let neg: Root = a.iter().map(|&x| -x).collect();
            let kn = self.e_index(&neg).expect("closed under negation");
            let mut dual = vec![Rat::zero(); self.dim()];
            dual[kn] = self.root_pairing(a, a) / rat(2, 1);
            pairs.push((self.rank + k, dual));
        }
        pairs
    }
}

fn mat2(entries: &[(usize, usize, i64)]) -> Vec<Vec<Rat>> {
    mat_n(2, entries)
}

fn mat3(entries: &[(usize, usize, i64)]) -> Vec<Vec<Rat>> {
    mat_n(3, entries)
}

fn mat_n(n: usize, entries: &[(usize, usize, i64)]) -> Vec<Vec<Rat>> {
    let mut m = vec![vec![Rat::zero(); n]; n];
    for &(i, j, v) in entries {
        m[i][j] = rat_int(v);
    }
    m
}

/// A finite-dimensional g-module given by action matrices per basis element.
#[derive(Clone)]
pub struct GModule {
    pub dim: usize,
    /// action[i] is the matrix of the i-th algebra basis element.
    pub action: Vec<Vec<Vec<Rat>>>,
}

impl GModule {
    pub fn trivial() -> Self {
        GModule {
            dim: 1,
            action: Vec::new(),
        }
    }

    /// The adjoint module: ad-matrices straight from the bracket table.
    pub fn adjoint(g: &SimpleLieAlgebra) -> Self {
        let d = g.dim();
        let mut action = Vec::with_capacity(d);
        for i in 0..d {
            let mut m = vec![vec![Rat::zero(); d]; d];
            for j in 0..d {
                for (k, c) in g.bracket(i, j) {
                    m[*k][j] = c.clone();
                }
            }
            action.push(m);
        }
        GModule { dim: d, action }
    }

    /// Irreducible sl2-module of highest weight m (dimension m + 1), in the
    /// basis v_k = f^k v_0 / k!.
    pub fn sl2_irrep(g: &SimpleLieAlgebra, m: u64) -> Self {
        assert_eq!(g.rank, 1, "sl2 irrep constructor needs A1");
        let n = (m + 1) as usize;
        let mut t = vec![vec![Rat::zero(); n]; n];
        let mut e = vec![vec![Rat::zero(); n]; n];
        let mut f = vec![vec![Rat::zero(); n]; n];
        for k in 0..n {
            t[k][k] = rat_int(m as i64 - 2 * k as i64);
            if k + 1 < n {
                f[k + 1][k] = rat_int(k as i64 + 1);
                e[k][k + 1] = rat_int(m as i64 - k as i64);
            }
        }
        GModule {
            dim: n,
            action: vec![t, e, f],
        }
    }

    pub fn direct_sum(&self, other: &GModule) -> GModule {
        let d = self.dim + other.dim;
        let zero_block = || vec![vec![Rat::zero(); d]; d];
        let nact = self.action.len().max(other.action.len());
        let mut action = Vec::new();
        for i in 0..nact {
            let mut m = zero_block();
            if i < self.action.len() {
                for a in 0..self.dim {
                    for b in 0..self.dim {
                        m[a][b] = self.action[i][a][b].clone();
                    }
                }
            }
            if i < other.action.len() {
                for a in 0..other.dim {
                    for b in 0..other.dim {
                        m[self.dim + a][self.dim + b] = other.action[i][a][b].clone();
                    }
                }
            }
            action.push(m);
        }
        GModule { dim: d, action }
    }

    pub fn act(&self, i: usize, v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        if i >= self.action.len() {
            return out; // trivial action
        }
        for (r, row) in self.action[i].iter().enumerate() {
            let mut s = Rat::zero();
            for (cidx, c) in row.iter().enumerate() {
                if !c.is_zero() && !v[cidx].is_zero() {
                    s += c * &v[cidx];
                }
            }
            out[r] = s;
        }
        out
    }

    pub fn act_comb(&self, comb: &[(usize, Rat)], v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, c) in comb {
            let a = self.act(*i, v);
            for (o, x) in out.iter_mut().zip(a) {
                *o += c * &x;
            }
        }
        out
    }

    /// Matrix of the Casimir element on this module.
    pub fn casimir_matrix(&self, g: &SimpleLieAlgebra) -> Vec<Vec<Rat>> {
        let mut out = vec![vec![Rat::zero(); self.dim]; self.dim];
        for (i, dual) in g.casimir_pairs() {
            for col in 0..self.dim {
                let mut v = vec![Rat::zero(); self.dim];
                v[col] = Rat::one();
                // u_i . (u^i . v)
                let w = {
                    let comb: Vec<(usize, Rat)> = dual
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(j, c)| (j, c.clone()))
                        .collect();
                    self.act_comb(&comb, &v)
                };
                let w = self.act(i, &w);
                for r in 0..self.dim {
                    out[r][col] += w[r].clone();
                }
            }
        }
        out
    }
}

/// Exact Casimir eigenvalue <lambda, lambda> + 2 <lambda, rho> for a dominant
/// integral weight in fundamental coordinates.
pub fn casimir_eigenvalue(g: &SimpleLieAlgebra, lambda: &[u64]) -> Rat {
    let lam = g.weight_to_root_coords(lambda);
    let rho = g.rho();
    g.weight_pairing(&lam, &lam) + rat(2, 1) * g.weight_pairing(&lam, &rho)
}

/// Solve f(x) = x . m for all x in g, given the images of the basis elements.
/// Errors if f is not a derivation. Free components of the solution are set
/// to zero, so the answer is canonical.
pub fn whitehead_solve(
    g: &SimpleLieAlgebra,
    module: &GModule,
    f: &[Vec<Rat>],
) -> Result<Vec<Rat>> {
    let dim = g.dim();
    assert_eq!(f.len(), dim);
    // Derivation check on all basis pairs: f([x,y]) = x f(y) - y f(x).
    for i in 0..dim {
        for j in 0..dim {
            let mut lhs = vec![Rat::zero(); module.dim];
            for (k, c) in g.bracket(i, j) {
                for (l, x) in lhs.iter_mut().zip(&f[*k]) {
                    *l += c * x;
                }
            }
            let xf = module.act(i, &f[j]);
            let yf = module.act(j, &f[i]);
            let rhs: Vec<Rat> = xf.into_iter().zip(yf).map(|(a, b)| a - b).collect();
            if lhs != rhs {
                return Err(Error::NotADerivation {
                    x: format!("basis {i}"),
                    y: format!("basis {j}"),
                });
            }
        }
    }
    // Stack x . m = f(x) over all basis x.
    let mut mat = ExactMatrix::new(dim * module.dim, module.dim);
    let mut rhs = vec![RatFunc::zero(); dim * module.dim];
    for i in 0..dim {
        for r in 0..module.dim {
            for c in 0..module.dim {
                if i < module.action.len() && !module.action[i][r][c].is_zero() {
                    mat.set(
                        i * module.dim + r,
                        c,
                        RatFunc::from_rat(module.action[i][r][c].clone()),
                    )?;
                }
            }
            rhs[i * module.dim + r] = RatFunc::from_rat(f[i][r].clone());
        }
    }
    let sol = mat
        .solve(&rhs)
        .ok_or_else(|| Error::InconsistentSystem("Whitehead solve".into()))?;
    Ok(sol.into_iter().map(|v| v.as_rat().unwrap()).collect())
}
