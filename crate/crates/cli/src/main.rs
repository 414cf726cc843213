//! Command-line driver: certification runs from instance spec files, the
//! printed-value audit, and ad-hoc exact calculators.
//!
//! Exit codes: 0 success (certified, or the expected counterexample),
//! 1 unexpected counterexample, 2 inconclusive, 3 usage or spec error.

mod audit;

use std::path::PathBuf;
use std::process::ExitCode;
use std::rc::Rc;

use clap::{Args, Parser, Subcommand};

use voacoh_core::cohomology::{certify, Status};
use voacoh_core::instance::{cohomology_report_json, InstanceSpec};
use voacoh_core::lattice::{EvenLattice, LatticeModule};
use voacoh_core::modes::{BasisKey, GradedModule, Vector};
use voacoh_core::scalars::parse::parse_scalar;
use voacoh_core::scalars::RatFunc;
use voacoh_core::virasoro::{kac_determinant, VirasoroModule};
use voacoh_core::zhu::{bracket_residue, o_space, star_vw, star_wv, required_levels, ZhuOptions};

#[derive(Parser)]
#[command(name = "voacoh", version, about = "Exact workbench for graded-module first-cohomology certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify H^1 = Z^1 on an instance described by a spec file.
    H1(H1Args),
    /// Recompute every printed coefficient and report PASS/DISCREPANCY lines.
    Audit(AuditArgs),
    /// Apply a Virasoro mode to a word (exact, symbolic c and h allowed).
    Act(ActArgs),
    /// Print a contravariant Gram matrix.
    Gram(GramArgs),
    /// Print a Kac determinant.
    Kac(KacArgs),
    /// Run one of the Zhu-algebra checks.
    Zhu(ZhuArgs),
}

#[derive(Args)]
struct H1Args {
    /// Instance spec file (JSON).
    #[arg(long)]
    spec: PathBuf,
    /// Truncation depth override.
    #[arg(long)]
    depth: Option<u32>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Expected outcome: "equal" or "counterexample".
    #[arg(long)]
    expect: Option<String>,
    /// Always emit JSON (default already is JSON for this command).
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AuditArgs {
    /// Restrict to one case id.
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit the report as JSON instead of text lines.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ActArgs {
    #[arg(long, default_value = "virasoro")]
    algebra: String,
    /// Central charge: a rational or the symbol c.
    #[arg(long, default_value = "c", allow_hyphen_values = true)]
    c: String,
    /// Lowest weight: a rational or the symbol h.
    #[arg(long, default_value = "h", allow_hyphen_values = true)]
    h: String,
    /// Operator, e.g. L2 or L-1.
    #[arg(long, allow_hyphen_values = true)]
    op: String,
    /// Word applied to the lowest-weight vector, e.g. "L-1 L-2".
    #[arg(long, allow_hyphen_values = true)]
    vec: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GramArgs {
    #[arg(long)]
    level: u32,
    #[arg(long, default_value = "c", allow_hyphen_values = true)]
    c: String,
    #[arg(long, default_value = "h", allow_hyphen_values = true)]
    h: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct KacArgs {
    #[arg(long)]
    level: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ZhuArgs {
    /// Check to run: bracket | slice | omega.
    #[arg(long)]
    check: String,
    #[arg(long, default_value_t = 4)]
    cutoff: u32,
    /// Zhu level N.
    #[arg(long, default_value_t = 0)]
    n: u32,
    /// Algebra: ising | lattice-a1.
    #[arg(long, default_value = "ising")]
    algebra: String,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Help and version requests are success; everything else is a
            // usage error (exit 3).
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> voacoh_core::Result<ExitCode> {
    match cli.command {
        Command::H1(args) => cmd_h1(args),
        Command::Audit(args) => cmd_audit(args),
        Command::Act(args) => cmd_act(args),
        Command::Gram(args) => cmd_gram(args),
        Command::Kac(args) => cmd_kac(args),
        Command::Zhu(args) => cmd_zhu(args),
    }
}

fn env_depth() -> Option<u32> {
    std::env::var("VOACOH_DEPTH").ok()?.parse().ok()
}

fn emit(out: &Option<PathBuf>, text: &str) -> voacoh_core::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| voacoh_core::Error::BadSpec(format!("cannot write {path:?}: {e}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_h1(args: H1Args) -> voacoh_core::Result<ExitCode> {
    let text = std::fs::read_to_string(&args.spec)
        .map_err(|e| voacoh_core::Error::BadSpec(format!("cannot read {:?}: {e}", args.spec)))?;
    let spec = InstanceSpec::from_json(&text)?;
    let built = spec.build(args.depth.or_else(env_depth))?;
    let outcome = certify(
        built.v.as_ref(),
        built.w.as_ref(),
        &built.generators,
        built.depth,
    )?;
    let report = cohomology_report_json(&built, &outcome);
    emit(&args.out, &serde_json::to_string_pretty(&report).unwrap())?;
    let expected = args.expect.or_else(|| spec.expect.clone());
    let code = match outcome.status {
        Status::CertifiedEqual => match expected.as_deref() {
            None | Some("equal") => ExitCode::SUCCESS,
            Some(_) => ExitCode::from(1),
        },
        Status::Counterexample => match expected.as_deref() {
            Some("counterexample") => ExitCode::SUCCESS,
            _ => ExitCode::from(1),
        },
        Status::Inconclusive => ExitCode::from(2),
    };
    Ok(code)
}

fn cmd_audit(args: AuditArgs) -> voacoh_core::Result<ExitCode> {
    let (lines, internal_error) = audit::run_audit(args.case.as_deref());
    if args.case.is_some() && lines.is_empty() {
        return Err(voacoh_core::Error::BadSpec(format!(
            "no audit case named {:?}; known cases: {}",
            args.case.unwrap(),
            audit::all_cases()
                .iter()
                .map(|(n, _)| *n)
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    let text = if args.json {
        let items: Vec<serde_json::Value> = lines
            .iter()
            .map(|l| {
                let (status, engine, printed) = match &l.status {
                    audit::LineStatus::Pass => ("PASS", None, None),
                    audit::LineStatus::Discrepancy { engine, printed } => {
                        ("DISCREPANCY", Some(engine.clone()), Some(printed.clone()))
                    }
                    audit::LineStatus::Skip(_) => ("SKIP", None, None),
                };
                serde_json::json!({
                    "case": l.case,
                    "item": l.item,
                    "status": status,
                    "engine": engine,
                    "printed": printed,
                    "reference": l.reference,
                })
            })
            .collect();
        let findings = lines
            .iter()
            .filter(|l| matches!(l.status, audit::LineStatus::Discrepancy { .. }))
            .count();
        serde_json::to_string_pretty(&serde_json::json!({
            "lines": items,
            "findings": findings,
        }))
        .unwrap()
    } else {
        lines
            .iter()
            .map(|l| l.render())
            .collect::<Vec<_>>()
            .join("\n")
    };
    emit(&args.out, &text)?;
    Ok(if internal_error {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn parse_word(s: &str) -> voacoh_core::Result<Vec<i64>> {
    s.split_whitespace()
        .map(|tok| {
            let t = tok.trim_start_matches('L');
            t.parse::<i64>()
                .map_err(|_| voacoh_core::Error::BadSpec(format!("bad mode token {tok:?}")))
        })
        .collect()
}

fn cmd_act(args: ActArgs) -> voacoh_core::Result<ExitCode> {
    if args.algebra != "virasoro" {
        return Err(voacoh_core::Error::BadSpec(
            "the act calculator currently drives the Virasoro flavor".into(),
        ));
    }
    let c = parse_symbol_or(&args.c, RatFunc::c())?;
    let h = parse_symbol_or(&args.h, RatFunc::h())?;
    let modes = parse_word(&args.op)?;
    if modes.len() != 1 {
        return Err(voacoh_core::Error::BadSpec("op must be a single mode".into()));
    }
    let word = parse_word(&args.vec)?;
    if word.iter().any(|&m| m >= 0) {
        return Err(voacoh_core::Error::BadSpec(
            "the word must consist of creation modes like L-1".into(),
        ));
    }
    let depth: u32 = word.iter().map(|&m| (-m) as u32).sum::<u32>() + 4;
    let m = VirasoroModule::verma(c, h, depth + 4);
    // Apply the word right to left onto the lowest-weight vector.
    let mut v = Vector::single(BasisKey::Vir(vec![]), RatFunc::one());
    for &mode in word.iter().rev() {
        v = apply_l(&m, mode, &v)?;
    }
    let out = apply_l(&m, modes[0], &v)?;
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&voacoh_core::instance::vector_to_json(&m, &out)).unwrap()
        );
    } else {
        println!("{}", render_module_vector(&m, &out));
    }
    Ok(ExitCode::SUCCESS)
}

fn apply_l(m: &VirasoroModule, mode: i64, v: &Vector) -> voacoh_core::Result<Vector> {
    let mut out = Vector::zero();
    for (k, c) in v.terms() {
        let BasisKey::Vir(parts) = k else { unreachable!() };
        out.add_scaled(&m.act_l(mode, parts)?, c);
    }
    Ok(out)
}

fn render_module_vector(m: &dyn GradedModule, v: &Vector) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.terms()
        .map(|(k, c)| format!("({})*{}", c.to_string_with(&["c", "h"]), m.key_string(k)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn parse_symbol_or(s: &str, symbol: RatFunc) -> voacoh_core::Result<RatFunc> {
    match s.trim() {
        "c" | "h" => Ok(symbol),
        other => parse_scalar(other),
    }
}

fn cmd_gram(args: GramArgs) -> voacoh_core::Result<ExitCode> {
    let c = parse_symbol_or(&args.c, RatFunc::c())?;
    let h = parse_symbol_or(&args.h, RatFunc::h())?;
    let m = VirasoroModule::verma(c, h, args.level + 2);
    let g = m.gram(args.level)?;
    if args.json {
        let rows: Vec<Vec<String>> = (0..g.rows())
            .map(|i| {
                (0..g.cols())
                    .map(|j| g.get(i, j).to_string_with(&["c", "h"]))
                    .collect()
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "level": args.level,
                "basis": m.level_basis(args.level).iter().map(|k| m.key_string(k)).collect::<Vec<_>>(),
                "entries": rows,
            }))
            .unwrap()
        );
    } else {
        let basis = m.level_basis(args.level);
        for (i, k) in basis.iter().enumerate() {
            let row: Vec<String> = (0..g.cols())
                .map(|j| g.get(i, j).to_string_with(&["c", "h"]))
                .collect();
            println!("{:<18} | {}", m.key_string(k), row.join("  "));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_kac(args: KacArgs) -> voacoh_core::Result<ExitCode> {
    let det = kac_determinant(args.level, &RatFunc::c(), &RatFunc::h())?;
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "level": args.level,
                "determinant": det.to_string_with(&["c", "h"]),
            }))
            .unwrap()
        );
    } else {
        println!("{}", det.to_string_with(&["c", "h"]));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_zhu(args: ZhuArgs) -> voacoh_core::Result<ExitCode> {
    let opts = ZhuOptions {
        n_level: args.n,
        cutoff: args.cutoff,
    };
    let levels = required_levels(&opts);
    let (alg, module): (Rc<dyn GradedModule>, Rc<dyn GradedModule>) = match args.algebra.as_str() {
        "ising" => {
            let a = Rc::new(VirasoroModule::simple(
                voacoh_core::scalars::rat(1, 2),
                voacoh_core::scalars::rat(0, 1),
                levels,
            ));
            (a.clone(), a)
        }
        "lattice-a1" => {
            let a = Rc::new(LatticeModule::voa(Rc::new(EvenLattice::a1()), levels)?);
            (a.clone(), a)
        }
        other => {
            return Err(voacoh_core::Error::BadSpec(format!(
                "unknown algebra {other:?} (ising | lattice-a1)"
            )))
        }
    };
    let o = o_space(alg.as_ref(), module.as_ref(), &opts)?;
    let mut checks: Vec<serde_json::Value> = Vec::new();
    let mut all_ok = true;
    match args.check.as_str() {
        "bracket" => {
            let bound = args.cutoff.saturating_sub(1).min(3);
            for wu in 0..=bound {
                for u in alg.level_basis(wu) {
                    for lw in 0..=bound - wu {
                        for w in module.level_basis(lw) {
                            let wv = Vector::single(w.clone(), RatFunc::one());
                            let vw = star_vw(module.as_ref(), alg.as_ref(), &u, &wv, args.n)?;
                            let wvst =
                                star_wv(module.as_ref(), alg.as_ref(), &w, lw, &u, args.n)?;
                            let res = bracket_residue(module.as_ref(), &u, wu as i64, &wv)?;
                            let mut total = vw;
                            total.add_scaled(&wvst, &RatFunc::int(-1));
                            total.add_scaled(&res, &RatFunc::one());
                            let ok = o.contains(&total)?;
                            all_ok &= ok;
                            checks.push(serde_json::json!({
                                "pair": [alg.key_string(&u), module.key_string(&w)],
                                "ok": ok,
                            }));
                        }
                    }
                }
            }
        }
        "slice" => {
            for l in 0..=args.cutoff {
                let d = o.level_slice_dim(module.as_ref(), l);
                checks.push(serde_json::json!({"level": l, "o_slice_dim": d}));
            }
        }
        "omega" => {
            if args.algebra != "ising" {
                return Err(voacoh_core::Error::BadSpec(
                    "the omega membership check runs on the Virasoro flavor".into(),
                ));
            }
            let w = Vector::single(BasisKey::omega(), RatFunc::one());
            let inside = o.contains(&w)?;
            all_ok &= !inside;
            checks.push(serde_json::json!({"omega_in_o_span": inside}));
        }
        other => {
            return Err(voacoh_core::Error::BadSpec(format!(
                "unknown check {other:?} (bracket | slice | omega)"
            )))
        }
    }
    let slice_dims: Vec<usize> = (0..=args.cutoff)
        .map(|l| o.level_slice_dim(module.as_ref(), l))
        .collect();
    let bounds: Vec<usize> = (0..=args.cutoff)
        .map(|l| o.quotient_upper_bound(module.as_ref(), l))
        .collect();
    let doc = serde_json::json!({
        "N": args.n,
        "cutoff": args.cutoff,
        "o_dim_by_weight": slice_dims,
        "quotient_upper_bounds": bounds,
        "checks": checks,
    });
    if args.json {
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!("check {}: {}", args.check, if all_ok { "PASS" } else { "FAIL" });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
