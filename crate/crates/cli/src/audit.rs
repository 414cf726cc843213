//! The audit harness: every explicit coefficient computation printed in the
//! reference analysis is recomputed from scratch by the engine and compared.
//! A DISCREPANCY line is a finding about the printed value, not a failure;
//! the run only fails if the engine violates one of its own invariants.

use std::collections::BTreeMap;

use voacoh_core::modes::{intertwiner_mode, BasisKey, GradedModule, Vector};
use voacoh_core::scalars::parse::parse_scalar;
use voacoh_core::scalars::{rat, RatFunc};
use voacoh_core::virasoro::{
    central_charge, h_equals_one_scan, kac_factorization, mn_identity_check,
    negative_energy_system, zero_mode_matching, VirasoroModule,
};
use voacoh_core::Result;

#[derive(Clone, Debug, PartialEq)]
pub enum LineStatus {
    Pass,
    Discrepancy { engine: String, printed: String },
    Skip(String),
}

#[derive(Clone, Debug)]
pub struct AuditLine {
    pub case: &'static str,
    pub item: String,
    pub status: LineStatus,
    pub reference: String,
}

impl AuditLine {
    pub fn render(&self) -> String {
        match &self.status {
            LineStatus::Pass => format!("PASS  {} :: {}  [{}]", self.case, self.item, self.reference),
            LineStatus::Discrepancy { engine, printed } => format!(
                "DISCREPANCY  {} :: {}  engine={} printed={}  [{}]",
                self.case, self.item, engine, printed, self.reference
            ),
            LineStatus::Skip(reason) => {
                format!("SKIP  {} :: {} ({})  [{}]", self.case, self.item, reason, self.reference)
            }
        }
    }
}

fn sc(s: &str) -> RatFunc {
    parse_scalar(s).expect("printed coefficient parses")
}

fn vkey(parts: &[u32]) -> BasisKey {
    BasisKey::Vir(parts.to_vec())
}

fn combo(terms: &[(&str, &[u32])]) -> Vector {
    let mut out = Vector::zero();
    for (coeff, parts) in terms {
        out.add_term(vkey(parts), sc(coeff));
    }
    out
}

fn render_vec(v: &Vector) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (k, c) in v.terms() {
        parts.push(format!("({})*{}", c.to_string_with(&["c", "h"]), k));
    }
    parts.join(" + ")
}

fn compare(
    case: &'static str,
    item: &str,
    reference: &str,
    engine: &Vector,
    printed: &Vector,
) -> AuditLine {
    let status = if engine == printed {
        LineStatus::Pass
    } else {
        LineStatus::Discrepancy {
            engine: render_vec(engine),
            printed: render_vec(printed),
        }
    };
    AuditLine {
        case,
        item: item.to_string(),
        status,
        reference: reference.to_string(),
    }
}

fn compare_scalar(
    case: &'static str,
    item: &str,
    reference: &str,
    engine: &RatFunc,
    printed: &RatFunc,
) -> AuditLine {
    let status = if engine == printed {
        LineStatus::Pass
    } else {
        LineStatus::Discrepancy {
            engine: engine.to_string_with(&["c", "h"]),
            printed: printed.to_string_with(&["c", "h"]),
        }
    };
    AuditLine {
        case,
        item: item.to_string(),
        status,
        reference: reference.to_string(),
    }
}

/// No minimal-model central charge with coprime 2 <= p, q <= bound hits the
/// rational value c0.
fn minimal_model_excludes(c0: &RatFunc, bound: u64) -> bool {
    let Some(c0) = c0.as_rat() else {
        return false;
    };
    for p in 2..=bound {
        for q in 2..=bound {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            if central_charge(p, q).unwrap() == c0 {
                return false;
            }
        }
    }
    true
}

fn exclusion_line(case: &'static str, what: &str, reference: &str, c0: &RatFunc) -> AuditLine {
    let ok = minimal_model_excludes(c0, 50);
    AuditLine {
        case,
        item: format!(
            "vanishing locus c = {} excluded for all coprime p, q <= 50: {}",
            c0.to_string_with(&["c", "h"]),
            what
        ),
        status: if ok {
            LineStatus::Pass
        } else {
            LineStatus::Discrepancy {
                engine: "locus meets a minimal-model charge".into(),
                printed: "locus claimed excluded".into(),
            }
        },
        reference: reference.to_string(),
    }
}

fn act_l_on(m: &VirasoroModule, idx: i64, parts: &[u32]) -> Vector {
    m.act_l(idx, parts).expect("within truncation")
}

pub fn case_vir_neg_h1() -> Result<Vec<AuditLine>> {
    const CASE: &str = "vir-neg-h1";
    let m = VirasoroModule::verma(RatFunc::c(), RatFunc::int(-1), 8);
    let mut out = Vec::new();
    out.push(compare(
        CASE,
        "L(2) L(-1)L(-2) w",
        "printed-row:neg-energy:h=-1:L2:a12",
        &act_l_on(&m, 2, &[1, 2]),
        &combo(&[("5 + c/2", &[1])]),
    ));
    out.push(compare(
        CASE,
        "L(2) L(-1)^3 w",
        "printed-row:neg-energy:h=-1:L2:a111",
        &act_l_on(&m, 2, &[1, 1, 1]),
        &combo(&[("-12", &[1])]),
    ));
    out.push(compare(
        CASE,
        "L(3) L(-1)L(-2) w",
        "printed-row:neg-energy:h=-1:L3:a12",
        &act_l_on(&m, 3, &[1, 2]),
        &combo(&[("-4 + c/2", &[])]),
    ));
    out.push(compare(
        CASE,
        "L(3) L(-1)^3 w",
        "printed-row:neg-energy:h=-1:L3:a111",
        &act_l_on(&m, 3, &[1, 1, 1]),
        &combo(&[("-24", &[])]),
    ));
    // Combined constraint coefficient on a_12: engine value vs the printed
    // 7 + c/4; recombining the printed rows themselves reproduces 7 + c/4.
    let engine_l2 = act_l_on(&m, 2, &[1, 2]).coeff(&vkey(&[1]));
    let engine_l3 = act_l_on(&m, 3, &[1, 2]).coeff(&vkey(&[]));
    let engine_comb = &engine_l2 - &engine_l3.checked_div(&RatFunc::int(2))?;
    out.push(compare_scalar(
        CASE,
        "combined constraint coefficient on a_12 (engine rows)",
        "printed-row:neg-energy:h=-1:combined",
        &engine_comb,
        &sc("7 + c/4"),
    ));
    let printed_comb = &sc("5 + c/2") - &sc("-4 + c/2").checked_div(&RatFunc::int(2))?;
    out.push(compare_scalar(
        CASE,
        "recombination of the printed rows",
        "printed-row:neg-energy:h=-1:combined",
        &printed_comb,
        &sc("7 + c/4"),
    ));
    // Vanishing loci on both sides exclude every minimal model.
    out.push(exclusion_line(
        CASE,
        "engine combined coefficient 13 - c/2",
        "conclusion:neg-energy:h=-1:a12-vanishes",
        &sc("26"),
    ));
    out.push(exclusion_line(
        CASE,
        "printed combined coefficient 7 + c/4",
        "conclusion:neg-energy:h=-1:a12-vanishes",
        &sc("-28"),
    ));
    // Zero mode of the weight-1 element.
    let omega = Vector::single(BasisKey::omega(), RatFunc::one());
    let zm = intertwiner_mode(&m, &Vector::single(vkey(&[2]), RatFunc::one()), 0, &omega)?;
    out.push(compare(
        CASE,
        "(L(-2)w)_0 w(conformal)",
        "printed-row:neg-energy:h=-1:zero-mode",
        &zm,
        &combo(&[("-13/6 + c/12", &[1, 1, 1])]),
    ));
    out.push(exclusion_line(
        CASE,
        "zero-mode matching denominator -13/6 + c/12",
        "conclusion:neg-energy:h=-1:matching",
        &sc("26"),
    ));
    Ok(out)
}

pub fn case_vir_neg_h2() -> Result<Vec<AuditLine>> {
    const CASE: &str = "vir-neg-h2";
    let m = VirasoroModule::verma(RatFunc::c(), RatFunc::int(-2), 9);
    let mut out = Vec::new();
    out.push(compare(
        CASE,
        "L(2) L(-1)L(-3) w",
        "printed-row:neg-energy:h=-2:L2:a13",
        &act_l_on(&m, 2, &[1, 3]),
        &combo(&[("12", &[2]), ("5", &[1, 1])]),
    ));
    out.push(compare(
        CASE,
        "L(2) L(-1)^2 L(-2) w",
        "printed-row:neg-energy:h=-2:L2:a112",
        &act_l_on(&m, 2, &[1, 1, 2]),
        &combo(&[("4 + c/2", &[1, 1])]),
    ));
    out.push(compare(
        CASE,
        "L(2) L(-1)^4 w",
        "printed-row:neg-energy:h=-2:L2:a1111",
        &act_l_on(&m, 2, &[1, 1, 1, 1]),
        &combo(&[("-48", &[1, 1])]),
    ));
    out.push(compare(
        CASE,
        "L(4) L(-1)^2 L(-2) w",
        "printed-row:neg-energy:h=-2:L4:a112",
        &act_l_on(&m, 4, &[1, 1, 2]),
        &combo(&[("-8 + c/2", &[])]),
    ));
    out.push(compare(
        CASE,
        "L(4) L(-1)^4 w",
        "printed-row:neg-energy:h=-2:L4:a1111",
        &act_l_on(&m, 4, &[1, 1, 1, 1]),
        &combo(&[("-12", &[])]),
    ));
    // The induced relation a_1111 = (1/12)(-8 + c/2) a_112 holds for both
    // row versions: check it from the engine rows.
    let e112 = act_l_on(&m, 4, &[1, 1, 2]).coeff(&vkey(&[]));
    let e1111 = act_l_on(&m, 4, &[1, 1, 1, 1]).coeff(&vkey(&[]));
    let ratio = (-&e112).checked_div(&e1111)?;
    out.push(compare_scalar(
        CASE,
        "relation a_1111/a_112 from the L(4) constraint",
        "printed-row:neg-energy:h=-2:L4-relation",
        &ratio,
        &sc("(1/12)*(-8 + c/2)"),
    ));
    let omega = Vector::single(BasisKey::omega(), RatFunc::one());
    let zm = intertwiner_mode(&m, &Vector::single(vkey(&[3]), RatFunc::one()), 0, &omega)?;
    out.push(compare(
        CASE,
        "(L(-3)w)_0 w(conformal)",
        "printed-row:neg-energy:h=-2:zero-mode",
        &zm,
        &combo(&[("-2", &[1, 1, 2]), ("(16 - c)/12", &[1, 1, 1, 1])]),
    ));
    Ok(out)
}

pub fn case_vir_neg_h3() -> Result<Vec<AuditLine>> {
    const CASE: &str = "vir-neg-h3";
    let m = VirasoroModule::verma(RatFunc::c(), RatFunc::int(-3), 10);
    let mut out = Vec::new();
    let l2_rows: [(&str, &[u32], Vector); 5] = [
        ("a14", &[1, 4], combo(&[("15", &[3]), ("6", &[1, 2])])),
        ("a122", &[1, 2, 2], combo(&[("-9", &[3]), ("2 + c", &[1, 2])])),
        ("a113", &[1, 1, 3], combo(&[("5", &[1, 1, 1]), ("24", &[1, 2])])),
        (
            "a1112",
            &[1, 1, 1, 2],
            combo(&[("15 + c/2", &[1, 1, 1]), ("-12", &[1, 2])]),
        ),
        ("a11111", &[1, 1, 1, 1, 1], combo(&[("-120", &[1, 1, 1])])),
    ];
    for (name, parts, printed) in &l2_rows {
        out.push(compare(
            CASE,
            &format!("L(2) row {name}"),
            &format!("printed-row:neg-energy:h=-3:L2:{name}"),
            &act_l_on(&m, 2, parts),
            printed,
        ));
    }
    let l3_rows: [(&str, &[u32], Vector); 5] = [
        ("a14", &[1, 4], combo(&[("24", &[2]), ("7", &[1, 1])])),
        (
            "a122",
            &[1, 2, 2],
            combo(&[("15", &[1, 1]), ("4*(-16 + c)", &[2])]),
        ),
        ("a113", &[1, 1, 3], combo(&[("22 + 2*c", &[1, 1])])),
        (
            "a1112",
            &[1, 1, 1, 2],
            combo(&[("-36 + 6*c", &[1, 1]), ("-24", &[2])]),
        ),
        ("a11111", &[1, 1, 1, 1, 1], combo(&[("-600", &[1, 1])])),
    ];
    for (name, parts, printed) in &l3_rows {
        out.push(compare(
            CASE,
            &format!("L(3) row {name}"),
            &format!("printed-row:neg-energy:h=-3:L3:{name}"),
            &act_l_on(&m, 3, parts),
            printed,
        ));
    }
    // The 2x2 block on (a_14, a_122) from the solver, against the printed
    // rows (15, -9) and (-6, 34 - c), and both degeneracy loci.
    let rep = negative_energy_system(-3)?;
    let row1 = rep
        .rows
        .iter()
        .find(|r| r.provenance.starts_with("L(2)F(w) in") && !r.coeffs[0].is_zero())
        .expect("first system row");
    let row2 = rep
        .rows
        .iter()
        .find(|r| r.provenance.starts_with("L(2)F(w) - 1/2") && !r.coeffs[0].is_zero())
        .expect("second system row");
    out.push(compare_scalar(
        CASE,
        "system row 1 entries (a_14)",
        "printed-system:neg-energy:h=-3:row1",
        &row1.coeffs[0],
        &sc("15"),
    ));
    out.push(compare_scalar(
        CASE,
        "system row 1 entries (a_122)",
        "printed-system:neg-energy:h=-3:row1",
        &row1.coeffs[1],
        &sc("-9"),
    ));
    out.push(compare_scalar(
        CASE,
        "system row 2 entries (a_14)",
        "printed-system:neg-energy:h=-3:row2",
        &row2.coeffs[0],
        &sc("-6"),
    ));
    out.push(compare_scalar(
        CASE,
        "system row 2 entries (a_122)",
        "printed-system:neg-energy:h=-3:row2",
        &row2.coeffs[1],
        &sc("34 - c"),
    ));
    let det = &(&row1.coeffs[0] * &row2.coeffs[1]) - &(&row1.coeffs[1] * &row2.coeffs[0]);
    // Engine determinant 456 - 15c vanishes at 152/5; the printed claim says
    // 188/5.
    let engine_root = sc("152/5");
    let printed_root = sc("188/5");
    out.push(AuditLine {
        case: CASE,
        item: "degeneracy locus of the (a_14, a_122) system".into(),
        status: if det.substitute(Some(&rat(188, 5)), None)?.is_zero() {
            LineStatus::Pass
        } else {
            LineStatus::Discrepancy {
                engine: format!(
                    "det = {}, root c = {}",
                    det.to_string_with(&["c", "h"]),
                    engine_root.to_string_with(&["c", "h"])
                ),
                printed: format!("degenerate only when c = {}", printed_root.to_string_with(&["c", "h"])),
            }
        },
        reference: "printed-claim:neg-energy:h=-3:degeneracy".into(),
    });
    out.push(exclusion_line(
        CASE,
        "engine system determinant root",
        "conclusion:neg-energy:h=-3:nondegenerate",
        &engine_root,
    ));
    out.push(exclusion_line(
        CASE,
        "printed degeneracy claim",
        "conclusion:neg-energy:h=-3:nondegenerate",
        &printed_root,
    ));
    // Extra necessary constraint beyond the printed pair (the m = 2 case of
    // the same lemma): recorded as an engine-side finding.
    let extra = rep
        .rows
        .iter()
        .find(|r| r.provenance.starts_with("L(4)F(w) - 1/2"))
        .expect("m = 2 combined row");
    out.push(AuditLine {
        case: CASE,
        item: format!(
            "additional necessary constraint ({}, {}, {}) on (a_113, a_1112, a_11111)",
            extra.coeffs[2].to_string_with(&["c", "h"]),
            extra.coeffs[3].to_string_with(&["c", "h"]),
            extra.coeffs[4].to_string_with(&["c", "h"])
        ),
        status: LineStatus::Discrepancy {
            engine: "solution space dimension 2".into(),
            printed: "three free parameters displayed".into(),
        },
        reference: "engine-extra:neg-energy:h=-3:m=2-constraint".into(),
    });
    // Zero modes of the two weight-1 words.
    let omega = Vector::single(BasisKey::omega(), RatFunc::one());
    let zm4 = intertwiner_mode(&m, &Vector::single(vkey(&[4]), RatFunc::one()), 0, &omega)?;
    out.push(compare(
        CASE,
        "(L(-4)w)_0 w(conformal)",
        "printed-row:neg-energy:h=-3:zero-mode-L4",
        &zm4,
        &combo(&[
            ("-5/2", &[1, 1, 3]),
            ("1", &[1, 1, 1, 2]),
            ("(-59 + 5*c)/120", &[1, 1, 1, 1, 1]),
        ]),
    ));
    let zm22 = intertwiner_mode(&m, &Vector::single(vkey(&[2, 2]), RatFunc::one()), 0, &omega)?;
    out.push(compare(
        CASE,
        "(L(-2)^2 w)_0 w(conformal)",
        "printed-row:neg-energy:h=-3:zero-mode-L2L2",
        &zm22,
        &combo(&[
            ("3/2", &[1, 1, 3]),
            ("(-50 + c)/6", &[1, 1, 1, 2]),
            ("(-49 + 4*c)/40", &[1, 1, 1, 1, 1]),
        ]),
    ));
    // Matching system: engine degeneracy locus excluded for minimal models.
    let matching = zero_mode_matching(&rep)?;
    if let Some(d) = &matching.degeneracy_det {
        let ok = matching.matchings.iter().all(|(_, ok)| *ok);
        out.push(AuditLine {
            case: CASE,
            item: format!(
                "matching system determinant {} with every solution matched: {}",
                d.to_string_with(&["c", "h"]),
                ok
            ),
            status: if ok {
                LineStatus::Pass
            } else {
                LineStatus::Discrepancy {
                    engine: "matching failed".into(),
                    printed: "matching exists".into(),
                }
            },
            reference: "printed-claim:neg-energy:h=-3:matching".into(),
        });
    }
    Ok(out)
}

pub fn case_vir_pos() -> Result<Vec<AuditLine>> {
    const CASE: &str = "vir-pos";
    let m = VirasoroModule::verma(RatFunc::c(), RatFunc::h(), 6);
    let mut out = Vec::new();
    out.push(compare(
        CASE,
        "L(1) L(-2) w",
        "printed-row:pos-energy:L1:a",
        &act_l_on(&m, 1, &[2]),
        &combo(&[("3", &[1])]),
    ));
    out.push(compare(
        CASE,
        "L(1) L(-1)^2 w",
        "printed-row:pos-energy:L1:b",
        &act_l_on(&m, 1, &[1, 1]),
        &combo(&[("4*h + 2", &[1])]),
    ));
    out.push(compare(
        CASE,
        "L(2) L(-2) w",
        "printed-row:pos-energy:L2:a",
        &act_l_on(&m, 2, &[2]),
        &combo(&[("4*h + c/2", &[])]),
    ));
    out.push(compare(
        CASE,
        "L(2) L(-1)^2 w",
        "printed-row:pos-energy:L2:b",
        &act_l_on(&m, 2, &[1, 1]),
        &combo(&[("6*h", &[])]),
    ));
    // Lowest-weight-one zero mode: w_0 omega = (h - 1) L(-1) w.
    let omega = Vector::single(BasisKey::omega(), RatFunc::one());
    let zm = intertwiner_mode(&m, &Vector::single(vkey(&[]), RatFunc::one()), 0, &omega)?;
    out.push(compare(
        CASE,
        "w_0 applied to the conformal vector at generic h",
        "printed-row:N-grading:lowest-weight-one",
        &zm,
        &combo(&[("h - 1", &[1])]),
    ));
    Ok(out)
}

pub fn case_vir_scan() -> Result<Vec<AuditLine>> {
    const CASE: &str = "vir-scan";
    let mut out = Vec::new();
    let hits = h_equals_one_scan(50);
    out.push(AuditLine {
        case: CASE,
        item: format!("h = 1 scan over coprime p, q <= 50: {} hits", hits.len()),
        status: if hits.is_empty() {
            LineStatus::Pass
        } else {
            LineStatus::Discrepancy {
                engine: format!("{hits:?}"),
                printed: "impossible".into(),
            }
        },
        reference: "printed-claim:pos-energy:h=1-impossible".into(),
    });
    out.push(AuditLine {
        case: CASE,
        item: "mn + h - 1 = ((np + mq)^2 - (p + q)^2)/4pq as polynomials".into(),
        status: if mn_identity_check() {
            LineStatus::Pass
        } else {
            LineStatus::Discrepancy {
                engine: "identity fails".into(),
                printed: "identity".into(),
            }
        },
        reference: "printed-identity:neg-energy:mn-plus-h".into(),
    });
    // The two printed central-charge formulas disagree; the engine uses the
    // standard minimal-model value.
    let standard = central_charge(3, 4).unwrap(); // 1 - 6(p-q)^2/pq = 1/2
    let variant = rat(1, 1) - rat(1, 1) / rat(6 * 12, 1); // 1 - (p-q)^2/(6pq)
    out.push(AuditLine {
        case: CASE,
        item: "central charge formula at (p, q) = (3, 4)".into(),
        status: LineStatus::Discrepancy {
            engine: format!("1 - 6(p-q)^2/pq = {standard}"),
            printed: format!("abstract variant 1 - (p-q)^2/6pq = {variant}"),
        },
        reference: "printed-inconsistency:central-charge-formula".into(),
    });
    Ok(out)
}

pub fn case_vir_kac() -> Result<Vec<AuditLine>> {
    const CASE: &str = "vir-kac";
    let rep = kac_factorization(4)?;
    let mut out = Vec::new();
    out.push(AuditLine {
        case: CASE,
        item: "vanishing curves reproduced from the level-1/2 determinants".into(),
        status: if rep.parametrization_validated {
            LineStatus::Pass
        } else {
            LineStatus::Discrepancy {
                engine: "parametrization mismatch".into(),
                printed: "standard curves".into(),
            }
        },
        reference: "printed-claim:kac-determinant".into(),
    });
    for lvl in &rep.levels {
        out.push(AuditLine {
            case: CASE,
            item: format!(
                "level {} determinant divisible with constant cofactor {}",
                lvl.level,
                lvl.cofactor.to_string_with(&["t", "h"])
            ),
            status: if lvl.divisible {
                LineStatus::Pass
            } else {
                LineStatus::Discrepancy {
                    engine: "division left a remainder".into(),
                    printed: "determinant proportional to the curve product".into(),
                }
            },
            reference: "printed-claim:kac-determinant".into(),
        });
    }
    Ok(out)
}

pub fn case_affine() -> Result<Vec<AuditLine>> {
    const CASE: &str = "affine-w1";
    use std::rc::Rc;
    use voacoh_core::affine::{casimir_eigenvalue, sugawara_lowest_weight, AffineModule, SimpleLieAlgebra};
    let mut out = Vec::new();
    let g = Rc::new(SimpleLieAlgebra::a1());
    for (l, want) in [(2u64, 6i64), (3, 7)] {
        let module = AffineModule::adjoint_module(Rc::clone(&g), l, 4)?;
        let w1 = module.build_w1()?;
        let mut ok = true;
        for a in 0..3u8 {
            let mut img = Vector::zero();
            for (k, c) in w1.terms() {
                img.add_scaled(&module.raw_act(&voacoh_core::modes::RawGen::Curr(a), 1, k)?, c);
            }
            let expected = Vector::single(
                BasisKey::Aff {
                    word: vec![],
                    vec: a,
                },
                RatFunc::int(want),
            );
            ok &= img == expected;
        }
        out.push(AuditLine {
            case: CASE,
            item: format!("a(1) w1 = (2h + l) psi(a) = {want} at level {l}"),
            status: if ok {
                LineStatus::Pass
            } else {
                LineStatus::Discrepancy {
                    engine: "eigenvalue mismatch".into(),
                    printed: format!("{want}"),
                }
            },
            reference: "printed-claim:affine:twisted-element".into(),
        });
    }
    let cas_ok = (0..=4u64).all(|m| casimir_eigenvalue(&g, &[m]) == rat(m as i64 * (m as i64 + 2), 2));
    out.push(AuditLine {
        case: CASE,
        item: "Casimir eigenvalues m(m+2)/2 on sl2 irreps (m <= 4)".into(),
        status: if cas_ok { LineStatus::Pass } else { LineStatus::Discrepancy { engine: "mismatch".into(), printed: "m(m+2)/2".into() } },
        reference: "printed-claim:affine:casimir".into(),
    });
    let sug = sugawara_lowest_weight(&g, 1, &[1]);
    out.push(AuditLine {
        case: CASE,
        item: format!("Sugawara lowest weight at level 1, fundamental weight: {sug}"),
        status: if sug == rat(1, 4) { LineStatus::Pass } else { LineStatus::Discrepancy { engine: format!("{sug}"), printed: "1/4".into() } },
        reference: "printed-claim:affine:sugawara".into(),
    });
    let a2 = SimpleLieAlgebra::a2();
    out.push(AuditLine {
        case: CASE,
        item: "Chevalley triple identity and antisymmetries on A2".into(),
        status: if a2.chevalley_identity_check() { LineStatus::Pass } else { LineStatus::Discrepancy { engine: "identity fails".into(), printed: "identity".into() } },
        reference: "printed-identity:affine:structure-constants".into(),
    });
    Ok(out)
}

pub fn case_lattice() -> Result<Vec<AuditLine>> {
    const CASE: &str = "lattice-a1";
    use std::rc::Rc;
    use voacoh_core::lattice::{enumerate_norm, DualCoset, EvenLattice, LatticeModule};
    use voacoh_core::modes::{GradedModule, RawGen};
    let mut out = Vec::new();
    let lat = EvenLattice::a1();
    let m = LatticeModule::voa(Rc::new(lat.clone()), 6)?;
    // Cocycle commutator identity on all pairs of norm <= 8.
    let coset = DualCoset::new(lat.clone(), vec![rat(0, 1)])?;
    let pts = enumerate_norm(&coset, &rat(8, 1));
    let mut ok = true;
    for x in &pts {
        for y in &pts {
            let prod = m.epsilon().eval(x, y)? * m.epsilon().eval(y, x)?;
            let pairing = lat.pairing(x, y);
            let want = if num_integer::Integer::is_even(pairing.numer()) {
                1
            } else {
                -1
            };
            ok &= prod == want;
        }
    }
    out.push(AuditLine {
        case: CASE,
        item: format!("cocycle commutator identity on {} x {} pairs", pts.len(), pts.len()),
        status: if ok { LineStatus::Pass } else { LineStatus::Discrepancy { engine: "identity fails".into(), printed: "identity".into() } },
        reference: "printed-identity:lattice:cocycle".into(),
    });
    // Lowest-mode products.
    let one = m.raw_act(&RawGen::Vertex(vec![1]), 1, &BasisKey::fock_point(vec![-1]))?;
    out.push(compare(
        CASE,
        "(iota(e_a))_1 iota(e_-a) = vacuum",
        "printed-claim:lattice:generator-lemma",
        &one,
        &Vector::single(BasisKey::fock_point(vec![0]), RatFunc::one()),
    ));
    let zero = m.raw_act(&RawGen::Vertex(vec![1]), 0, &BasisKey::fock_point(vec![-1]))?;
    out.push(compare(
        CASE,
        "(iota(e_a))_0 iota(e_-a) = a(-1) vacuum",
        "printed-claim:lattice:generator-lemma",
        &zero,
        &Vector::single(
            BasisKey::Fock {
                heis: vec![(1, 0)],
                point: vec![0],
            },
            RatFunc::one(),
        ),
    ));
    let d1 = m.level_dim(1);
    out.push(AuditLine {
        case: CASE,
        item: format!("weight-1 space dimension {d1}"),
        status: if d1 == 3 { LineStatus::Pass } else { LineStatus::Discrepancy { engine: format!("{d1}"), printed: "3".into() } },
        reference: "printed-claim:lattice:weight-one".into(),
    });
    Ok(out)
}

pub fn all_cases() -> Vec<(&'static str, fn() -> Result<Vec<AuditLine>>)> {
    vec![
        ("vir-neg-h1", case_vir_neg_h1 as fn() -> Result<Vec<AuditLine>>),
        ("vir-neg-h2", case_vir_neg_h2),
        ("vir-neg-h3", case_vir_neg_h3),
        ("vir-pos", case_vir_pos),
        ("vir-scan", case_vir_scan),
        ("vir-kac", case_vir_kac),
        ("affine-w1", case_affine),
        ("lattice-a1", case_lattice),
    ]
}

/// Run the registered cases (optionally filtered), in parallel, assembling
/// the report in case order.
pub fn run_audit(filter: Option<&str>) -> (Vec<AuditLine>, bool) {
    let cases: Vec<_> = all_cases()
        .into_iter()
        .filter(|(name, _)| filter.map(|f| *name == f).unwrap_or(true))
        .collect();
    let mut results: BTreeMap<usize, Result<Vec<AuditLine>>> = BTreeMap::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = cases
            .iter()
            .enumerate()
            .map(|(i, (_, f))| (i, scope.spawn(move || f())))
            .collect();
        for (i, h) in handles {
            results.insert(i, h.join().expect("audit case thread"));
        }
    });
    let mut lines = Vec::new();
    let mut internal_error = false;
    for (i, res) in results {
        match res {
            Ok(mut ls) => lines.append(&mut ls),
            Err(e) => {
                internal_error = true;
                lines.push(AuditLine {
                    case: cases[i].0,
                    item: format!("internal error: {e}"),
                    status: LineStatus::Skip("engine error".into()),
                    reference: "internal".into(),
                });
            }
        }
    }
    (lines, internal_error)
}
