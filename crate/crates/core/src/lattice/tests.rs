use super::*;
use crate::modes::composite_mode;

fn a1_voa(cutoff: u32) -> LatticeModule {
    LatticeModule::voa(Rc::new(EvenLattice::a1()), cutoff).unwrap()
}

fn a1_coset(cutoff: u32) -> LatticeModule {
    LatticeModule::module(Rc::new(EvenLattice::a1()), vec![rat(1, 2)], cutoff).unwrap()
}

fn ground(k: i32) -> BasisKey {
    BasisKey::Fock {
        heis: vec![],
        point: vec![k],
    }
}

fn gvec(k: i32) -> Vector {
    Vector::single(ground(k), RatFunc::one())
}

#[test]
fn enumerate_a1_examples() {
    let lat = EvenLattice::a1();
    let coset = DualCoset::new(lat.clone(), vec![rat(0, 1)]).unwrap();
    let pts = enumerate_norm(&coset, &rat(2, 1));
    assert_eq!(pts, vec![vec![rat(-1, 1)], vec![rat(0, 1)], vec![rat(1, 1)]]);

    let half = DualCoset::new(lat.clone(), vec![rat(1, 2)]).unwrap();
    let pts = enumerate_norm(&half, &rat(1, 2));
    assert_eq!(pts, vec![vec![rat(-1, 2)], vec![rat(1, 2)]]);

    assert!(enumerate_norm(&half, &rat(1, 4)).is_empty());
}

#[test]
fn lattice_validation() {
    assert!(EvenLattice::new(vec![vec![2, 0], vec![0, 3]]).is_err()); // odd diagonal
    assert!(EvenLattice::new(vec![vec![-2]]).is_err()); // not positive definite
    assert!(EvenLattice::new(vec![vec![2, 1], vec![0, 2]]).is_err()); // not symmetric
    let lat = EvenLattice::a1();
    assert!(DualCoset::new(lat, vec![rat(1, 3)]).is_err()); // outside dual
}

#[test]
fn epsilon_identities() {
    let m = a1_voa(4);
    let eps = m.epsilon();
    let z = vec![rat(0, 1)];
    let a = vec![rat(1, 1)];
    let na = vec![rat(-1, 1)];
    assert_eq!(eps.eval(&a, &z).unwrap(), 1);
    assert_eq!(eps.eval(&a, &na).unwrap(), 1);
    // eps(x,y) eps(y,x) = (-1)^<x,y> on all pairs of norm <= 8.
    let lat = EvenLattice::a1();
    let coset = DualCoset::new(lat.clone(), vec![rat(0, 1)]).unwrap();
    for x in enumerate_norm(&coset, &rat(8, 1)) {
        for y in enumerate_norm(&coset, &rat(8, 1)) {
            let prod = eps.eval(&x, &y).unwrap() * eps.eval(&y, &x).unwrap();
            let pairing = lat.pairing(&x, &y);
            let want = if pairing.numer().is_even() { 1 } else { -1 };
            assert_eq!(prod, want);
        }
    }
}

#[test]
fn heisenberg_modes() {
    let m = a1_voa(4);
    // h(0) iota(e_b) = <h, b> iota(e_b): a1(0) on e_alpha gives 2.
    let out = m.act_heis(0, 0, &ground(1)).unwrap();
    assert_eq!(out, gvec(1).scale(&RatFunc::int(2)));
    // h(1) h(-1) 1 = <a,a> 1 = 2.
    let up = m.act_heis(0, -1, &ground(0)).unwrap();
    let (k, _) = up.terms().next().unwrap();
    let down = m.act_heis(0, 1, k).unwrap();
    assert_eq!(down, gvec(0).scale(&RatFunc::int(2)));
    // Positive modes kill ground states.
    assert!(m.act_heis(0, 2, &ground(1)).unwrap().is_zero());
}

#[test]
fn vertex_lowest_mode_products() {
    let m = a1_voa(6);
    // (iota(e_a))_1 iota(e_-a) = 1 (the vacuum).
    let out = m.act_vertex(&[1], 1, &ground(-1)).unwrap();
    assert_eq!(out, gvec(0));
    // (iota(e_a))_0 iota(e_-a) = a(-1) 1.
    let out = m.act_vertex(&[1], 0, &ground(-1)).unwrap();
    assert_eq!(
        out,
        Vector::single(
            BasisKey::Fock {
                heis: vec![(1, 0)],
                point: vec![0]
            },
            RatFunc::one()
        )
    );
    // Lowest-mode rule at beta = alpha: mode -<a,a>-1 = -3 raises to e_2a.
    let out = m.act_vertex(&[1], -3, &ground(1)).unwrap();
    assert_eq!(out, gvec(2));
}

#[test]
fn generator_lemma_reachability() {
    // Iterated lowest-mode products of iota(e_{+-a}) reach every point of
    // norm <= 8 with coefficient +-1.
    let m = a1_voa(10);
    for target in [-2i32, -1, 1, 2] {
        let step = if target > 0 { 1 } else { -1 };
        let mut cur = gvec(step);
        let mut k = step;
        while k != target {
            // apply iota(e_step) at its lowest mode on the current point:
            // n = -<step a, k a> - 1.
            let n = -(2 * (step as i64) * (k as i64)) - 1;
            let mut next = Vector::zero();
            for (key, c) in cur.terms() {
                next.add_scaled(&m.act_vertex(&[step], n, key).unwrap(), c);
            }
            cur = next;
            k += step;
        }
        assert_eq!(cur.len(), 1);
        let (key, coeff) = cur.terms().next().unwrap();
        assert_eq!(*key, ground(target));
        assert!(coeff.is_one() || (-coeff).is_one());
    }
}

#[test]
fn graded_dims() {
    let m = a1_voa(6);
    assert_eq!(m.graded_dim(0), 1);
    assert_eq!(m.graded_dim(1), 3); // a(-1)1, iota(e_{+-a})
    assert_eq!(m.graded_dim(2), 4);
    assert_eq!(m.graded_dim(3), 7);
    let w = a1_coset(6);
    assert!(w.lowest_weight() == RatFunc::rat(1, 4));
    assert_eq!(w.graded_dim(0), 2); // the two norm-1/2 points
    assert_eq!(w.graded_dim(1), 2); // a(-1) on each; no norm-5/2 points exist
    assert_eq!(w.graded_dim(2), 6); // heis degree 2 plus the norm-9/2 points
}

#[test]
fn heisenberg_vertex_commutator() {
    // [h(m), (iota(e_a))_n] = <h, a> (iota(e_a))_{m+n} on low-level keys.
    let m = a1_voa(8);
    for key in [ground(0), ground(1), ground(-1)] {
        for mm in -2i64..=2 {
            if mm == 0 {
                continue;
            }
            for n in -3i64..=2 {
                let hv = {
                    let inner = m.act_vertex(&[1], n, &key).unwrap();
                    let mut out = Vector::zero();
                    for (k, c) in inner.terms() {
                        out.add_scaled(&m.act_heis(0, mm, k).unwrap(), c);
                    }
                    out
                };
                let vh = {
                    let inner = m.act_heis(0, mm, &key).unwrap();
                    let mut out = Vector::zero();
                    for (k, c) in inner.terms() {
                        out.add_scaled(&m.act_vertex(&[1], n, k).unwrap(), c);
                    }
                    out
                };
                let rhs = m
                    .act_vertex(&[1], mm + n, &key)
                    .unwrap()
                    .scale(&RatFunc::int(2)); // <a, a> = 2
                assert_eq!(hv.sub(&vh), rhs, "failed at m={mm}, n={n} on {key}");
            }
        }
    }
}

#[test]
fn weight_bookkeeping_vertex_modes() {
    let m = a1_voa(8);
    for key in m.level_basis(2) {
        let w = m.key_level(&key) as i64;
        for n in -3i64..=3 {
            let out = m.act_vertex(&[1], n, &key).unwrap();
            for (k, _) in out.terms() {
                assert_eq!(m.key_level(k) as i64, w + 1 - n - 1);
            }
        }
    }
}

#[test]
fn conformal_vector_reproduces_virasoro_modes() {
    // omega = (1/4) a(-1)^2 1 for the A1 lattice; its composite modes agree
    // with the built-in L(m) fast paths.
    let m = a1_voa(6);
    let omega_key = BasisKey::Fock {
        heis: vec![(1, 0), (1, 0)],
        point: vec![0],
    };
    let quarter = RatFunc::rat(1, 4);
    let targets: Vec<Vector> = vec![
        gvec(1),
        gvec(-1),
        Vector::single(
            BasisKey::Fock {
                heis: vec![(1, 0)],
                point: vec![0],
            },
            RatFunc::one(),
        ),
        Vector::single(
            BasisKey::Fock {
                heis: vec![(2, 0), (1, 0)],
                point: vec![1],
            },
            RatFunc::one(),
        ),
    ];
    for v in &targets {
        for lm in -1i64..=2 {
            let composite = composite_mode(&m, &omega_key, lm + 1, v)
                .unwrap()
                .scale(&quarter);
            let direct = {
                let mut out = Vector::zero();
                for (k, c) in v.terms() {
                    out.add_scaled(&m.raw_act(&RawGen::L, lm, k).unwrap(), c);
                }
                out
            };
            assert_eq!(composite, direct, "L({lm}) mismatch on {v}");
        }
    }
}

#[test]
fn central_charge_of_a1_lattice_is_one() {
    // L(2)L(-2)1 = (c/2) 1 with c = rank = 1.
    let m = a1_voa(6);
    let omega_key = BasisKey::Fock {
        heis: vec![(1, 0), (1, 0)],
        point: vec![0],
    };
    let vac = gvec(0);
    let omega = composite_mode(&m, &omega_key, -1, &vac)
        .unwrap()
        .scale(&RatFunc::rat(1, 4));
    let mut out = Vector::zero();
    for (k, c) in omega.terms() {
        out.add_scaled(&m.raw_act(&RawGen::L, 2, k).unwrap(), c);
    }
    assert_eq!(out, vac.scale(&RatFunc::rat(1, 2)));
}
