use anyhow::{bail, Result};
use serde_json::{json, Value};
use wcob_core::constructions::{check_four_block_homotopy, ConstructionKind};
use wcob_core::invariants::*;
use wcob_core::simplicial::TruncatedSimplicialSet;

use crate::context::Context;
use crate::report::{Report, Table};

const PRIMES: [u64; 3] = [2, 3, 1_000_000_007];

pub fn enumerate(cx: &Context) -> Result<Report> {
    let w = cx.instance()?;
    let kind = cx.config.kind()?;
    let x = cx.construction(kind, &w, cx.config.degree)?;
    let counts = x.counts();
    let mut table = Table::new(&["degree", "simplices"]);
    for (n, c) in counts.iter().enumerate() {
        table.push(vec![n.to_string(), c.to_string()]);
    }
    let result = json!({
        "construction": kind.name(),
        "instance": w.descriptor().to_string(),
        "semi_simplicial": x.is_semi(),
        "counts": counts,
    });
    Ok(Report::new("enumerate", &cx.config, None, result, table))
}

fn homology_rows(table: &mut Table, label: &str, h: &HomologyResult) {
    for g in &h.groups {
        table.push(vec![
            label.to_string(),
            g.degree.to_string(),
            g.betti.to_string(),
            g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
            describe_group(g),
        ]);
    }
}

fn presentation_json(d: &TruncatedSimplicialSet) -> Result<Value> {
    let p = pi1_presentation(d, 0)?;
    let ab = p.abelianization();
    Ok(json!({
        "basepoint": p.basepoint,
        "generators": p.generators,
        "relators": p.relator_strings(),
        "abelianization": ab,
        "abelianization_text": describe_group(&ab),
    }))
}

/// Homology of `diag N_• w X_•` through `--degree`, with components, the
/// fundamental group presentation, and with `total` the total complex.
pub fn homology_report(cx: &Context, total: bool) -> Result<Report> {
    let (k, depth) = (cx.config.degree, cx.config.trunc);
    if depth < k + 1 {
        bail!("homology through degree {k} needs --trunc at least {}", k + 1);
    }
    let w = cx.instance()?;
    let kind = cx.config.kind()?;
    let x = cx.construction(kind, &w, depth)?;
    let b = nerve_bisimplicial(&x, depth, depth)?;
    let d = b.diagonal()?;
    let h = homology(&d, k)?;
    let mut table = Table::new(&["complex", "degree", "betti", "torsion", "group"]);
    homology_rows(&mut table, "diagonal", &h);
    let mut result = json!({
        "construction": kind.name(),
        "instance": w.descriptor().to_string(),
        "diagonal_counts": (0..=d.depth()).map(|n| d.count(n)).collect::<Vec<_>>(),
        "components": pi0(&d)?.count,
        "homology": h,
    });
    if k >= 1 {
        result["pi1"] = presentation_json(&d)?;
    }
    let mut passed = None;
    if total {
        let t = total_homology(&b.bisimplicial, k)?;
        let agree = compare_stability(&h, &t);
        homology_rows(&mut table, "total", &t);
        passed = Some(agree.stable());
        result["total"] = json!({ "homology": t, "agreement": agree });
    }
    Ok(Report::new("homology", &cx.config, passed, result, table))
}

/// Builds both models and the comparison maps and checks them.
pub fn compare_tau(cx: &Context) -> Result<Report> {
    let (k, p) = (cx.config.degree, cx.config.trunc);
    if p < k + 1 {
        bail!("comparison through degree {k} needs --trunc at least {}", k + 1);
    }
    let w = cx.instance()?;
    if w.zero().is_none() {
        bail!("compare-tau needs a pointed instance, {} is not", w.descriptor());
    }
    let deep = 2 * k + 1;
    let s = cx.construction(ConstructionKind::S, &w, deep.max(p))?;
    let big = cx.construction(ConstructionKind::CobBig, &w, deep.max(p))?;
    let cob = cx.construction(ConstructionKind::Cob, &w, p)?;

    let s_deep = nerve_bisimplicial(&s, p, deep.max(p))?;
    let tau_alpha = check_tau_alpha(&s, &s_deep, &big, p, k)?;
    let four_block = (0..=k).map(|n| check_four_block_homotopy(&big, n)).collect::<wcob_core::Result<Vec<_>>>()?;

    let (sn, bn, cn) = (nerve_bisimplicial(&s, p, p)?, nerve_bisimplicial(&big, p, p)?, nerve_bisimplicial(&cob, p, p)?);
    let (ds, db, dc) = (sn.diagonal()?, bn.diagonal()?, cn.diagonal()?);
    let (hs, hb, hc) = (homology(&ds, k)?, homology(&db, k)?, homology(&dc, k)?);
    let tau = tau_diagonal(&big, &bn, &s, &sn)?;
    let cone = mapping_cone_acyclic(&tau, &db, &ds, k)?;
    let mut field = Vec::new();
    for q in 0..=k {
        for prime in PRIMES {
            field.push(induced_on_homology(&tau, &db, &ds, q, prime)?);
        }
    }

    let verdicts = [
        ("tau_alpha_is_last_vertex", tau_alpha.passed()),
        ("four_block_endpoints", four_block.iter().all(|r| r.passed())),
        ("cone_acyclic", cone.acyclic),
        ("field_isomorphisms", field.iter().all(InducedHomology::is_iso)),
        ("models_agree", hs == hc && hs == hb),
    ];
    let mut table = Table::new(&["check", "passed"]);
    for (name, ok) in verdicts {
        table.push(vec![name.to_string(), ok.to_string()]);
    }
    for (label, h) in [("s", &hs), ("cob", &hc), ("cob-big", &hb)] {
        for g in &h.groups {
            table.push(vec![format!("H{} {label}", g.degree), describe_group(g)]);
        }
    }
    let mut result = json!({
        "instance": w.descriptor().to_string(),
        "verdicts": verdicts.iter().map(|(n, ok)| json!({"check": n, "passed": ok})).collect::<Vec<_>>(),
        "tau_alpha": tau_alpha,
        "four_block": four_block,
        "homology": { "s": hs, "cob": hc, "cob-big": hb },
        "cone": cone,
        "field": field,
    });
    if k >= 1 {
        result["pi1"] = json!({ "s": presentation_json(&ds)?, "cob": presentation_json(&dc)? });
    }
    let passed = verdicts.iter().all(|(_, ok)| *ok);
    Ok(Report::new("compare-tau", &cx.config, Some(passed), result, table))
}
