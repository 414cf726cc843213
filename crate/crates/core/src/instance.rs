//! Instance specifications: the JSON schemas accepted by the command-line
//! driver, validated and turned into module objects plus generator sets.

use std::collections::HashMap;
use std::rc::Rc;

use serde::Deserialize;

use crate::affine::{AffineModule, SimpleLieAlgebra};
use crate::error::{Error, Result};
use crate::lattice::{EvenLattice, LatticeModule};
use crate::modes::{BasisKey, GradedModule};
use crate::scalars::{rat_from_str, Rat, RatFunc};
use crate::virasoro::VirasoroModule;

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "algebra", rename_all = "lowercase")]
pub enum FlavorSpec {
    Virasoro {
        c: String,
        h: String,
        kind: String,
        #[serde(default)]
        depth: Option<u32>,
    },
    Affine {
        #[serde(rename = "type")]
        kind: AffineType,
        level: u64,
        lambda: Vec<u64>,
        #[serde(default)]
        depth: Option<u32>,
    },
    Lattice {
        gram: Vec<Vec<i64>>,
        gamma: Vec<String>,
        #[serde(default)]
        depth: Option<u32>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum AffineType {
    Named(String),
    Custom {
        structure_constants: CustomAlgebra,
    },
}

#[derive(Clone, Debug, Deserialize)]
pub struct CustomAlgebra {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub simple_gram: Vec<Vec<String>>,
    /// Keys "i,j" (root indices) mapping to the constant c_{ij}.
    pub constants: HashMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GradingSpec {
    Named(String),
    Shifted { shift: String },
}

impl Default for GradingSpec {
    fn default() -> Self {
        GradingSpec::Named("L0".into())
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct InstanceSpec {
    pub algebra: FlavorSpec,
    /// The module W; defaults to the algebra itself (W = V).
    #[serde(default)]
    pub module: Option<FlavorSpec>,
    #[serde(default)]
    pub grading: GradingSpec,
    #[serde(default)]
    pub depth: Option<u32>,
    /// "equal" or "counterexample": the expected certificate outcome.
    #[serde(default)]
    pub expect: Option<String>,
}

pub struct BuiltInstance {
    pub v: Rc<dyn GradedModule>,
    pub w: Rc<dyn GradedModule>,
    pub generators: Vec<BasisKey>,
    pub depth: u32,
    pub description: serde_json::Value,
}

fn parse_rat_or_symbol(s: &str, symbol: RatFunc) -> Result<RatFunc> {
    match s.trim() {
        "c" | "h" => Ok(symbol),
        other => Ok(RatFunc::from_rat(rat_from_str(other)?)),
    }
}

fn resolve_shift(grading: &GradingSpec, lowest: &RatFunc) -> Result<Rat> {
    match grading {
        GradingSpec::Named(name) => match name.as_str() {
            "L0" => Ok(Rat::from_integer(0.into())),
            "canonical" => lowest.as_rat().ok_or_else(|| {
                Error::BadSpec("canonical grading needs a numeric lowest weight".into())
            }),
            other => Err(Error::BadSpec(format!("unknown grading {other:?}"))),
        },
        GradingSpec::Shifted { shift } => rat_from_str(shift),
    }
}

impl InstanceSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::BadSpec(format!("spec parse error: {e}")))
    }

    /// Validate and realize the instance. The module cutoffs are padded so
    /// every degree up to the requested depth is realized.
    pub fn build(&self, depth_override: Option<u32>) -> Result<BuiltInstance> {
        let depth = depth_override
            .or(self.depth)
            .or(flavor_depth(&self.algebra))
            .unwrap_or(6);
        match (&self.algebra, self.module.as_ref().unwrap_or(&self.algebra)) {
            (
                FlavorSpec::Virasoro { c, h, kind, .. },
                FlavorSpec::Virasoro {
                    c: wc,
                    h: wh,
                    kind: wkind,
                    ..
                },
            ) => {
                let c = parse_rat_or_symbol(c, RatFunc::c())?;
                if parse_rat_or_symbol(h, RatFunc::h())? != RatFunc::zero() {
                    return Err(Error::BadSpec("the Virasoro VOA needs h = 0".into()));
                }
                if kind != "simple" {
                    return Err(Error::BadSpec(
                        "the algebra must be the simple vacuum VOA (kind = simple)".into(),
                    ));
                }
                let wc = parse_rat_or_symbol(wc, RatFunc::c())?;
                if wc != c {
                    return Err(Error::BadSpec(
                        "module and algebra central charges differ".into(),
                    ));
                }
                let wh = parse_rat_or_symbol(wh, RatFunc::h())?;
                let v: Rc<dyn GradedModule> = match c.as_rat() {
                    Some(cr) => Rc::new(VirasoroModule::simple(cr, Rat::from_integer(0.into()), depth)),
                    None => Rc::new(VirasoroModule::vacuum_voa(c.clone(), depth)),
                };
                let shift = resolve_shift(&self.grading, &wh)?;
                // Pad the module cutoff so degree = depth is realized.
                let w_cutoff = w_cutoff_for(&wh, &shift, depth)?;
                let w: Rc<dyn GradedModule> = match wkind.as_str() {
                    "verma" => Rc::new(
                        VirasoroModule::verma(wc.clone(), wh.clone(), w_cutoff)
                            .with_shift(shift.clone()),
                    ),
                    "simple" => {
                        let (Some(cr), Some(hr)) = (wc.as_rat(), wh.as_rat()) else {
                            return Err(Error::BadSpec(
                                "simple quotients need numeric parameters".into(),
                            ));
                        };
                        Rc::new(VirasoroModule::simple(cr, hr, w_cutoff).with_shift(shift.clone()))
                    }
                    other => return Err(Error::BadSpec(format!("unknown kind {other:?}"))),
                };
                Ok(BuiltInstance {
                    v,
                    w,
                    generators: vec![BasisKey::omega()],
                    depth,
                    description: serde_json::json!({
                        "algebra": "virasoro",
                        "c": c.to_string_with(&["c", "h"]),
                        "module_h": wh.to_string_with(&["c", "h"]),
                        "module_kind": wkind,
                        "shift": crate::scalars::rat_to_string(&shift),
                    }),
                })
            }
            (
                FlavorSpec::Lattice { gram, gamma, .. },
                FlavorSpec::Lattice {
                    gram: wgram,
                    gamma: wgamma,
                    ..
                },
            ) => {
                if gram != wgram {
                    return Err(Error::BadSpec("module over a different lattice".into()));
                }
                if gamma.iter().any(|g| g.trim() != "0") {
                    return Err(Error::BadSpec("the lattice VOA itself needs gamma = 0".into()));
                }
                let lattice = Rc::new(EvenLattice::new(gram.clone())?);
                let wgamma: Vec<Rat> = wgamma
                    .iter()
                    .map(|s| rat_from_str(s))
                    .collect::<Result<_>>()?;
                let v = Rc::new(LatticeModule::voa(Rc::clone(&lattice), depth)?);
                let probe = LatticeModule::module(Rc::clone(&lattice), wgamma.clone(), 1)?;
                let lowest = probe.lowest_weight();
                let shift = resolve_shift(&self.grading, &lowest)?;
                let w_cutoff = w_cutoff_for(&lowest, &shift, depth)?;
                let w = Rc::new(
                    LatticeModule::module(Rc::clone(&lattice), wgamma.clone(), w_cutoff)?
                        .with_shift(shift.clone()),
                );
                let mut generators = Vec::new();
                for i in 0..lattice.rank {
                    generators.push(BasisKey::Fock {
                        heis: vec![(1, i as u8)],
                        point: vec![0; lattice.rank],
                    });
                }
                for i in 0..lattice.rank {
                    let mut p = vec![0i32; lattice.rank];
                    p[i] = 1;
                    generators.push(BasisKey::fock_point(p.clone()));
                    p[i] = -1;
                    generators.push(BasisKey::fock_point(p));
                }
                let gamma_str: Vec<String> =
                    wgamma.iter().map(crate::scalars::rat_to_string).collect();
                Ok(BuiltInstance {
                    v,
                    w,
                    generators,
                    depth,
                    description: serde_json::json!({
                        "algebra": "lattice",
                        "gram": gram,
                        "module_gamma": gamma_str,
                        "shift": crate::scalars::rat_to_string(&shift),
                    }),
                })
            }
            (
                FlavorSpec::Affine {
                    kind,
                    level,
                    lambda,
                    ..
                },
                FlavorSpec::Affine {
                    kind: _wkind,
                    level: wlevel,
                    lambda: wlambda,
                    ..
                },
            ) => {
                if lambda.iter().any(|&x| x != 0) {
                    return Err(Error::BadSpec("the affine VOA needs lambda = 0".into()));
                }
                if level != wlevel {
                    return Err(Error::BadSpec("module at a different level".into()));
                }
                let g = build_algebra(kind)?;
                let v = Rc::new(AffineModule::new(Rc::clone(&g), *level, lambda.clone(), depth)?);
                let probe = AffineModule::new(Rc::clone(&g), *level, wlambda.clone(), 1)?;
                let lowest = probe.lowest_weight();
                let shift = resolve_shift(&self.grading, &lowest)?;
                let w_cutoff = w_cutoff_for(&lowest, &shift, depth)?;
                let w = Rc::new(
                    AffineModule::new(Rc::clone(&g), *level, wlambda.clone(), w_cutoff)?
                        .with_shift(shift.clone()),
                );
                let generators: Vec<BasisKey> = (0..g.dim())
                    .map(|a| BasisKey::Aff {
                        word: vec![(1, a as u8)],
                        vec: 0,
                    })
                    .collect();
                Ok(BuiltInstance {
                    v,
                    w,
                    generators,
                    depth,
                    description: serde_json::json!({
                        "algebra": "affine",
                        "name": g.name,
                        "level": level,
                        "module_lambda": wlambda,
                        "shift": crate::scalars::rat_to_string(&shift),
                    }),
                })
            }
            _ => Err(Error::BadSpec(
                "algebra and module flavors must agree".into(),
            )),
        }
    }
}

fn flavor_depth(f: &FlavorSpec) -> Option<u32> {
    match f {
        FlavorSpec::Virasoro { depth, .. }
        | FlavorSpec::Affine { depth, .. }
        | FlavorSpec::Lattice { depth, .. } => *depth,
    }
}

fn w_cutoff_for(lowest: &RatFunc, shift: &Rat, depth: u32) -> Result<u32> {
    // Highest level touched by an integer degree <= depth.
    let Some(h) = lowest.as_rat() else {
        // Symbolic lowest weight never meets integer degrees; keep `depth`.
        return Ok(depth);
    };
    let top = crate::scalars::rat_int(depth as i64) + shift.clone() - h;
    let level = top.floor().numer().clone();
    let level = u32::try_from(level.max(0.into())).unwrap_or(depth);
    Ok(level.max(depth))
}

fn build_algebra(kind: &AffineType) -> Result<Rc<SimpleLieAlgebra>> {
    match kind {
        AffineType::Named(name) => match name.as_str() {
            "A1" => Ok(Rc::new(SimpleLieAlgebra::a1())),
            "A2" => Ok(Rc::new(SimpleLieAlgebra::a2())),
            other => Err(Error::BadSpec(format!("unknown algebra type {other:?}"))),
        },
        AffineType::Custom {
            structure_constants,
        } => {
            let gram: Vec<Vec<Rat>> = structure_constants
                .simple_gram
                .iter()
                .map(|row| row.iter().map(|s| rat_from_str(s)).collect::<Result<_>>())
                .collect::<Result<_>>()?;
            let mut constants = HashMap::new();
            for (k, v) in &structure_constants.constants {
                let parts: Vec<&str> = k.split(',').collect();
                if parts.len() != 2 {
                    return Err(Error::BadSpec(format!("bad constant key {k:?}")));
                }
                let i: usize = parts[0]
                    .trim()
                    .parse()
                    .map_err(|_| Error::BadSpec(format!("bad index in {k:?}")))?;
                let j: usize = parts[1]
                    .trim()
                    .parse()
                    .map_err(|_| Error::BadSpec(format!("bad index in {k:?}")))?;
                constants.insert((i, j), rat_from_str(v)?);
            }
            Ok(Rc::new(SimpleLieAlgebra::from_structure_constants(
                "custom",
                structure_constants.rank,
                structure_constants.roots.clone(),
                gram,
                &constants,
            )?))
        }
    }
}

/// Render a vector as the JSON map {"basis_key": "coeff"} with module-aware
/// key strings.
pub fn vector_to_json(m: &dyn GradedModule, v: &crate::modes::Vector) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (k, c) in v.terms() {
        map.insert(
            m.key_string(k),
            serde_json::Value::String(c.to_string_with(&["c", "h"])),
        );
    }
    serde_json::Value::Object(map)
}

/// Assemble the certification report document.
pub fn cohomology_report_json(
    built: &BuiltInstance,
    outcome: &crate::cohomology::CohomologyOutcome,
) -> serde_json::Value {
    let witnesses: Vec<serde_json::Value> = outcome
        .solution_witnesses
        .iter()
        .enumerate()
        .map(|(i, images)| {
            let imgs: Vec<serde_json::Value> = images
                .iter()
                .map(|v| vector_to_json(built.w.as_ref(), v))
                .collect();
            serde_json::json!({
                "kind": if Some(i) == outcome.counterexample { "counterexample" } else { "solution" },
                "generators": built
                    .generators
                    .iter()
                    .map(|g| built.v.key_string(g))
                    .collect::<Vec<_>>(),
                "images": imgs,
            })
        })
        .collect();
    serde_json::json!({
        "instance": built.description,
        "depth": outcome.depth,
        "dim_solutions": outcome.dim_solutions,
        "dim_zero_mode": outcome.dim_zero_mode,
        "zero_mode_upper_bound": outcome.zsp_bound,
        "status": outcome.status.as_str(),
        "witnesses": witnesses,
        "paper_refs": [
            "zero-mode-derivation-space",
            "derivation-constraint-solver",
            "one-sided-certification",
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_builds_virasoro_instance() {
        let text = r#"{
            "algebra": {"algebra": "virasoro", "c": "1/2", "h": "0", "kind": "simple"},
            "module": {"algebra": "virasoro", "c": "1/2", "h": "1/2", "kind": "simple"},
            "grading": "canonical",
            "depth": 4
        }"#;
        let spec = InstanceSpec::from_json(text).unwrap();
        let built = spec.build(None).unwrap();
        assert_eq!(built.depth, 4);
        assert_eq!(built.generators.len(), 1);
    }

    #[test]
    fn parses_lattice_instance() {
        let text = r#"{
            "algebra": {"algebra": "lattice", "gram": [[2]], "gamma": ["0"]},
            "module": {"algebra": "lattice", "gram": [[2]], "gamma": ["1/2"]},
            "grading": {"shift": "1/4"},
            "depth": 3
        }"#;
        let built = InstanceSpec::from_json(text).unwrap().build(None).unwrap();
        assert_eq!(built.generators.len(), 3);
    }

    #[test]
    fn rejects_bad_gram() {
        let text = r#"{
            "algebra": {"algebra": "lattice", "gram": [[3]], "gamma": ["0"]},
            "depth": 3
        }"#;
        assert!(InstanceSpec::from_json(text).unwrap().build(None).is_err());
    }

    #[test]
    fn rejects_mismatched_flavors() {
        let text = r#"{
            "algebra": {"algebra": "virasoro", "c": "1/2", "h": "0", "kind": "simple"},
            "module": {"algebra": "lattice", "gram": [[2]], "gamma": ["0"]}
        }"#;
        assert!(InstanceSpec::from_json(text).unwrap().build(None).is_err());
    }
}
