//! JSON report assembly. Only the `results` object is covered by the
//! results digest; timing lives outside it.

use std::fmt::Write as _;
use std::time::Duration;

use bohrnet::contexts::ContextConfig;
use bohrnet::descent::{AdjointOutcome, CoverAnalysis, DescentReport, TheoremReport};
use bohrnet::net::{EinsteinVerdict, LocalityWitness, Net, RegionPair, Verdict};
use bohrnet::spacetime::{Point, SliceSet};
use bohrnet::spectra::{KsReport, KsVerdict};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Digest of the canonical serialization (keys sorted, no whitespace).
pub fn results_digest(results: &Value) -> String {
    sha256_hex(serde_json::to_string(results).expect("values serialize").as_bytes())
}

pub fn envelope(input_digest: String, results: Value, elapsed: Duration) -> Value {
    json!({
        "tool": { "name": "bohrnet", "version": env!("CARGO_PKG_VERSION") },
        "input_digest": input_digest,
        "results_digest": results_digest(&results),
        "results": results,
        "timing": { "elapsed_ms": elapsed.as_millis() as u64 },
    })
}

fn points(ps: &[Point]) -> Value {
    Value::Array(ps.iter().map(|p| json!([p.t, p.x])).collect())
}

fn region_pair(r: &RegionPair) -> Value {
    json!([points(&r.first), points(&r.second)])
}

fn sites(s: SliceSet) -> Value {
    json!(s.sites().collect::<Vec<_>>())
}

fn locality(v: &Verdict<LocalityWitness>) -> Value {
    json!({
        "holds": v.holds,
        "checked": v.checked,
        "witness": v.witness.as_ref().map(|w| json!({
            "regions": region_pair(&w.regions),
            "elements": [w.first, w.second],
        })),
    })
}

fn einstein(e: &EinsteinVerdict) -> Value {
    json!({
        "holds": e.holds(),
        "precondition_met": e.precondition.holds,
        "checked": e.factorization.as_ref().map(|f| f.checked),
        "witness": e.factorization.as_ref().and_then(|f| f.witness.as_ref()).map(|w| json!({
            "regions": region_pair(&w.regions),
            "dimensions": [w.first_dim, w.second_dim],
            "join_dimension": w.join_dim,
        })),
    })
}

fn descent_report(r: &DescentReport) -> Value {
    let adjoint = match &r.adjoint {
        AdjointOutcome::Found { law_pairs, law_violations, monotone, agrees_with_join } => json!({
            "exists": true,
            "law_pairs": law_pairs,
            "law_violations": law_violations,
            "monotone": monotone,
            "agrees_with_join": agrees_with_join,
        }),
        AdjointOutcome::Missing { witness } => json!({ "exists": false, "witness": witness }),
        AdjointOutcome::Undefined { witness } => json!({ "exists": false, "undefined_at": witness }),
    };
    json!({
        "cover": r.cover.pieces.iter().map(|&p| sites(p)).collect::<Vec<_>>(),
        "union_contexts": r.union_contexts,
        "pullback_size": r.pullback_size,
        "f_well_defined": r.f_well_defined,
        "f_monotone": r.f_monotone,
        "left_adjoint": adjoint,
        "fully_faithful": r.fully_faithful.as_ref().map(|v| json!({
            "holds": v.holds,
            "witness": v.witness.as_ref().map(|w| json!({ "x": w.x, "f_of_l_x": w.f_of_l })),
        })),
        "intersection_identities": r.intersection_identities,
        "local": r.local,
        "surjection": r.surjection(),
        "reason": r.reason(),
        "three_piece_local": r.three_piece_local,
        "certificate": "poset-level",
    })
}

#[allow(clippy::too_many_arguments)]
pub fn check_results(
    net: &Net,
    config: &ContextConfig,
    cover_cap: usize,
    isotony: &Verdict<RegionPair>,
    causal: &Verdict<LocalityWitness>,
    slice: &Verdict<(SliceSet, SliceSet, String, String)>,
    einstein_v: &EinsteinVerdict,
    functorial: bool,
    theorem: &TheoremReport,
) -> Value {
    let add = &theorem.additivity;
    let strong = &theorem.strong_locality;
    json!({
        "net": {
            "family": net.family().name(),
            "slice_sites": net.window().sites(),
            "slice_radius": net.window().radius(),
            "complete_regions": net.regions().len(),
            "ambient_dimension": net.ambient_dim(),
            "generators": net.generators().iter().map(|g| g.label()).collect::<Vec<_>>(),
        },
        "config": {
            "include_trivial_context": config.include_trivial_context,
            "cover_cap": cover_cap,
        },
        "isotony": {
            "holds": isotony.holds,
            "checked": isotony.checked,
            "witness": isotony.witness.as_ref().map(region_pair),
        },
        "causal_locality": locality(causal),
        "slice_locality": {
            "holds": slice.holds,
            "checked": slice.checked,
            "witness": slice.witness.as_ref().map(|(u, v, a, b)| json!({
                "opens": [sites(*u), sites(*v)],
                "elements": [a, b],
            })),
        },
        "additivity": {
            "holds": add.holds,
            "checked": add.checked,
            "witness": add.witness.as_ref().map(|w| json!({
                "left": [w.left.0, w.left.1],
                "right": [w.right.0, w.right.1],
                "whole_dimension": w.whole_dim,
                "join_dimension": w.join_dim,
            })),
        },
        "strong_locality": {
            "holds": strong.holds(),
            "causal_locality_holds": strong.causal.holds,
            "checked": strong.intersections.checked,
            "witness": strong.intersections.witness.as_ref().map(|w| json!({
                "regions": region_pair(&w.regions),
                "contexts": [w.first, w.second],
            })),
        },
        "einstein_causality": einstein(einstein_v),
        "bohrified_net": { "functorial": functorial },
        "descent": {
            "covers": theorem.descent.len(),
            "truncated": theorem.covers_truncated,
            "all_local": theorem.all_local(),
            "reports": theorem.descent.iter().map(descent_report).collect::<Vec<_>>(),
        },
        "theorem": {
            "additive": add.holds,
            "strongly_local": strong.holds(),
            "descent_local": theorem.all_local(),
            "verdict": theorem.verdict.as_str(),
        },
    })
}

pub fn ks_results(ks: &KsReport, cap: u64) -> Value {
    json!({
        "dim": ks.dim,
        "projections": ks.projections,
        "contexts": ks.contexts,
        "maximal_contexts": ks.maximal_contexts,
        "global_sections": ks.sections.count,
        "exact": ks.sections.exact,
        "section_cap": cap,
        "verdict": match ks.verdict {
            KsVerdict::Contextual => "contextual",
            KsVerdict::NonContextual => "non-contextual",
        },
        "low_dimension": ks.low_dimension,
    })
}

/// Human-readable trace of one cover.
pub fn explain_text(a: &CoverAnalysis) -> String {
    let mut out = String::new();
    let u = &a.union_poset;
    let pb = &a.pullback;
    let _ = writeln!(out, "cover {}  (union {})", a.cover, a.cover.union());
    let _ = writeln!(out, "\ncontexts of the union algebra:");
    for (i, c) in u.contexts().iter().enumerate() {
        let _ = writeln!(out, "  c{i:<3} {}  dim {}", c.name(), c.dimension());
    }
    for (k, p) in pb.pieces().iter().enumerate() {
        let _ = writeln!(out, "\ncontexts of piece {} (sites {}):", k, a.cover.pieces[k]);
        for c in p.contexts() {
            let _ = writeln!(out, "  {}", c.name());
        }
    }
    let _ = writeln!(out, "\npullback poset:");
    for x in 0..pb.len() {
        let _ = writeln!(out, "  x{x:<3} {}", pb.name(x));
    }
    let _ = writeln!(out, "\nf:");
    for (c, fx) in a.f.iter().enumerate() {
        match fx {
            Some(x) => {
                let _ = writeln!(out, "  c{c:<3} -> x{x}");
            }
            None => {
                let _ = writeln!(out, "  c{c:<3} -> undefined");
            }
        }
    }
    match &a.left_adjoint {
        None => {
            let _ = writeln!(out, "\nL: none ({})", a.report.reason());
            match &a.report.adjoint {
                AdjointOutcome::Missing { witness } => {
                    let _ = writeln!(out, "  no least c with x <= f(c) for x = {witness}");
                }
                AdjointOutcome::Undefined { witness } => {
                    let _ = writeln!(out, "  f is undefined at {witness}");
                }
                AdjointOutcome::Found { .. } => {}
            }
        }
        Some(l) => {
            let _ = writeln!(out, "\nL and f(L(x)):");
            for (x, &c) in l.iter().enumerate() {
                let back = a.f[c].expect("f is defined when L exists");
                let mark = if back == x { "" } else { "   <-- f(L(x)) != x" };
                let _ = writeln!(out, "  x{x:<3} -> c{c:<3} -> x{back}{mark}");
            }
            let _ = writeln!(out, "\nadjunction matrix (rows x, columns c; '+' both hold, '.' neither, '!' mismatch):");
            for (x, &lx) in l.iter().enumerate() {
                let row: String = (0..u.len())
                    .map(|c| {
                        let left = u.leq(lx, c);
                        let right = a.f[c].is_some_and(|fc| pb.leq(x, fc));
                        match (left, right) {
                            (true, true) => '+',
                            (false, false) => '.',
                            _ => '!',
                        }
                    })
                    .collect();
                let _ = writeln!(out, "  x{x:<3} {row}");
            }
        }
    }
    let _ = writeln!(out, "\nverdict: {}", if a.report.local { "local" } else { "not local" });
    let _ = writeln!(out, "reason: {}", a.report.reason());
    if let Some(t) = a.report.three_piece_local {
        let _ = writeln!(out, "three-piece decomposition: {}", if t { "local" } else { "not local" });
    }
    out
}
