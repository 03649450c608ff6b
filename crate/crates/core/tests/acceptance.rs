//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with the
//! measured time against its budget. Exits non-zero on any failure.

use std::time::{Duration, Instant};

use wcob_core::constructions::*;
use wcob_core::fincat::*;
use wcob_core::invariants::*;
use wcob_core::simplicial::*;
use wcob_core::wald::*;
use wcob_core::Result;

const LIMIT: usize = DEFAULT_DIAGRAM_LIMIT;
const SEED: u64 = 0x5eed;

fn build(kind: ConstructionKind, w: &WaldhausenInstance, depth: usize) -> Result<DegreewiseCategoryObject<'_>> {
    DegreewiseCategoryObject::build(kind, w, depth, LIMIT)
}

/// Collects the failed checks of one criterion.
#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn subdivision_bridge(o: &mut Outcome) -> Result<()> {
    let tw1 = twisted_arrow_category(&poset_category(1)).category;
    let cases = [
        ("[1]", poset_category(1)),
        ("[2]", poset_category(2)),
        ("[3]", poset_category(3)),
        ("tw[1]", tw1),
        ("Z/2", cyclic_two()),
    ];
    for (name, c) in cases {
        let r = check_subdivision_bridge(&c, 4)?;
        o.expect(r.passed(), format!("{name}: {r:?}"));
    }
    o.note("5 categories to level 4");
    Ok(())
}

fn last_vertex(o: &mut Outcome) -> Result<()> {
    let cases = [
        ("Δ²", standard_simplex(2, 9)),
        ("Δ³", standard_simplex(3, 9)),
        ("∂Δ²", simplex_boundary(2, 9)),
        ("∂Δ³", simplex_boundary(3, 9)),
    ];
    for (name, x) in cases {
        let sd = edgewise_subdivision_to(&x, 4)?;
        let l = last_vertex_map(&x, 4)?;
        let cone = mapping_cone_acyclic(&l, &sd, &x, 2)?;
        o.expect(cone.acyclic, format!("cone of L on {name}: {:?}", cone.homology));
        let (a, b) = (euler_characteristic(&sd)?, euler_characteristic(&x.truncate(4)?)?);
        o.expect(a == b, format!("χ(Sd {name}) = {a}, χ({name}) = {b}"));
    }
    Ok(())
}

fn axioms(o: &mut Outcome) -> Result<()> {
    let instances = [
        WaldhausenInstance::finset_inj(2),
        WaldhausenInstance::finpointed(2)?,
        WaldhausenInstance::finset_all(2)?,
    ];
    for w in &instances {
        let r = check_axioms(w, DEFAULT_GLUING_BUDGET, SEED);
        o.expect(r.passed(), format!("{}: {r:?}", r.instance));
    }
    let broken = check_axioms(&WaldhausenInstance::broken_gluing(2), DEFAULT_GLUING_BUDGET, SEED);
    o.expect(
        !broken.passed() && broken.gluing.result.witness.is_some(),
        "corrupted instance passes or gives no witness",
    );
    Ok(())
}

fn structural_identities(o: &mut Outcome) -> Result<()> {
    let pointed = WaldhausenInstance::finpointed(2)?;
    let inj = WaldhausenInstance::finset_inj(1);
    for w in [&pointed, &inj] {
        let name = w.descriptor().to_string();
        let cob = build(ConstructionKind::Cob, w, 0)?;
        let level = cob.level(0);
        let r = is_equivalence(level, w.category(), |a| level.object(a).objects[0] as usize, |c| c[0]);
        o.expect(r.equivalence && level.object_count() == w.object_count(), format!("{name}: Cob_0 vs C"));
        for kind in ConstructionKind::ALL {
            if kind.needs_zero() && w.zero().is_none() {
                continue;
            }
            let x = build(kind, w, 3)?;
            let ids = x.check_identities()?;
            o.expect(ids.passed(), format!("{name} {kind}: {:?}", ids.violations.first()));
            let closure = x.check_operator_closure();
            o.expect(closure.passed(), format!("{name} {kind}: operator closure {:?}", closure.failures.first()));
        }
    }
    let s = build(ConstructionKind::S, &pointed, 1)?;
    o.expect(s.count(0) == 1, "S_0 is not a point");
    let f0 = filtered_category(&pointed, 0, LIMIT)?;
    let r = s_to_filtered(&s, &f0, 1)?;
    o.expect(
        r.equivalence_report(s.level(1), &f0).equivalence && f0.object_count() == pointed.object_count(),
        "S_1 vs C",
    );
    Ok(())
}

fn segal(o: &mut Outcome) -> Result<()> {
    for w in [WaldhausenInstance::finpointed(2)?, WaldhausenInstance::finset_inj(1)] {
        let cob = build(ConstructionKind::Cob, &w, 3)?;
        for n in [2, 3] {
            let r = check_segal(&cob, n)?;
            o.expect(r.passed(), format!("{} n={n}: {:?}", r.instance, r.missing_in_bound));
            o.note(format!(
                "{} n={n}: strict {} ({} out of bound)",
                r.instance, r.strict.equivalence, r.missing_out_of_bound
            ));
        }
    }
    Ok(())
}

fn layer_homotopy(o: &mut Outcome) -> Result<()> {
    let w = WaldhausenInstance::finpointed(2)?;
    let po = build(ConstructionKind::CobPo, &w, 2)?;
    let r = check_layer_homotopy(&po)?;
    o.expect(r.passed(), format!("{r:?}"));
    Ok(())
}

/// Generate-and-filter counts of `S_2` and `F_1`, written against the
/// instance predicates directly.
fn oracle_counts(w: &WaldhausenInstance) -> Result<(usize, usize)> {
    let cat = w.category();
    let zero = w.zero().expect("pointed");
    let ar = arrow_poset(2);
    let node = |i: usize, j: usize| ar.index_of(&[i, j]).unwrap();
    let arrow = |f: &Functor, a: usize, b: usize| {
        let c = ar.to_category();
        f.morphisms[c.homs(a as u32, b as u32)[0] as usize]
    };
    let s2 = enumerate_functors(&ar.to_category(), cat, |_| true, EnumerationLimit::default())?
        .into_iter()
        .filter(|f| {
            (0..3).all(|i| f.objects[node(i, i)] == zero)
                && w.is_cofibration(arrow(f, node(0, 1), node(0, 2)))
                && w.is_pushout(
                    arrow(f, node(0, 1), node(0, 2)),
                    arrow(f, node(0, 1), node(1, 1)),
                    arrow(f, node(1, 1), node(1, 2)),
                    arrow(f, node(0, 2), node(1, 2)),
                )
        })
        .count();
    let one = ordinal_poset(1).to_category();
    let f1 = enumerate_functors(&one, cat, |_| true, EnumerationLimit::default())?
        .into_iter()
        .filter(|f| w.is_cofibration(f.morphisms[one.homs(0, 1)[0] as usize]))
        .count();
    Ok((s2, f1))
}

fn equivalences(o: &mut Outcome) -> Result<()> {
    let w = WaldhausenInstance::finpointed(2)?;
    let cob = build(ConstructionKind::Cob, &w, 2)?;
    let big = build(ConstructionKind::CobBig, &w, 2)?;
    for n in 0..=2 {
        let r = restrict_big_to_cob(&big, &cob, n)?.equivalence_report(big.level(n), cob.level(n));
        o.expect(r.equivalence, format!("Cob^big_{n} -> Cob_{n}: {:?}", r.hom_failure));
    }
    let s = build(ConstructionKind::S, &w, 3)?;
    for n in 1..=3 {
        let f = filtered_category(&w, n - 1, LIMIT)?;
        let r = s_to_filtered(&s, &f, n)?.equivalence_report(s.level(n), &f);
        o.expect(r.equivalence, format!("S_{n} -> F_{}", n - 1));
    }
    let (s2, f1) = oracle_counts(&w)?;
    let f1_built = filtered_category(&w, 1, LIMIT)?.object_count();
    o.expect(
        s.count(2) == 3 && f1_built == 3 && s2 == 3 && f1 == 3,
        format!("|S_2| = {}, |F_1| = {f1_built}, oracle {s2}/{f1}", s.count(2)),
    );
    Ok(())
}

fn proof_objects(o: &mut Outcome) -> Result<()> {
    let w = WaldhausenInstance::finpointed(2)?;
    let s = build(ConstructionKind::S, &w, 3)?;
    let big = build(ConstructionKind::CobBig, &w, 3)?;
    let sn = nerve_bisimplicial(&s, 2, 3)?;
    let r = check_tau_alpha(&s, &sn, &big, 2, 1)?;
    o.expect(r.passed() && r.checked.len() == 6, format!("τ∘α vs last vertex: {r:?}"));
    for n in [0, 1] {
        let r = check_four_block_homotopy(&big, n)?;
        o.expect(r.passed() && r.checked == big.count(2 * n + 1), format!("four-block n={n}: {r:?}"));
    }
    Ok(())
}

fn first_homology(x: &TruncatedSimplicialSet, o: &mut Outcome, label: &str) -> Result<HomologyGroup> {
    let p = pi1_presentation(x, 0)?;
    let ab = p.abelianization();
    o.expect(pi0(x)?.count == 1, format!("{label}: not connected"));
    o.expect(ab.is_integers(), format!("{label}: abelianized π₁ = {}", describe_group(&ab)));
    Ok(ab)
}

fn k0_agreement(o: &mut Outcome) -> Result<()> {
    let w2 = WaldhausenInstance::finpointed(2)?;
    let s = build(ConstructionKind::S, &w2, 2)?;
    let cob = build(ConstructionKind::Cob, &w2, 2)?;
    let big = build(ConstructionKind::CobBig, &w2, 2)?;
    let (sn, cn, bn) = (nerve_bisimplicial(&s, 2, 2)?, nerve_bisimplicial(&cob, 2, 2)?, nerve_bisimplicial(&big, 2, 2)?);
    let (ds, dc, db) = (sn.diagonal()?, cn.diagonal()?, bn.diagonal()?);
    for (label, d) in [("S", &ds), ("Cob", &dc)] {
        let ab = first_homology(d, o, &format!("{label} bound 2"))?;
        let h = homology(d, 1)?;
        o.expect(h.degree(1) == &ab, format!("{label}: H₁ {:?} vs abelianized π₁ {ab:?}", h.degree(1)));
    }
    let tau = tau_diagonal(&big, &bn, &s, &sn)?;
    let cone = mapping_cone_acyclic(&tau, &db, &ds, 1)?;
    o.expect(cone.acyclic, format!("cone of τ: {:?}", cone.homology));
    for q in 0..=1 {
        for p in [2, 3, 1_000_000_007] {
            let r = induced_on_homology(&tau, &db, &ds, q, p)?;
            o.expect(r.is_iso(), format!("τ_* on H_{q}(−; F_{p}): {r:?}"));
        }
    }
    let w3 = WaldhausenInstance::finpointed(3)?;
    let s3 = build(ConstructionKind::S, &w3, 2)?;
    let cob3 = build(ConstructionKind::Cob, &w3, 2)?;
    for (label, x, small) in [("S", &s3, &ds), ("Cob", &cob3, &dc)] {
        let d = nerve_bisimplicial(x, 2, 2)?.diagonal()?;
        let ab = first_homology(&d, o, &format!("{label} bound 3"))?;
        let before = pi1_presentation(small, 0)?.abelianization();
        o.expect(ab == before, format!("{label}: unstable from bound 2 to 3"));
    }
    o.note("H₁ = Z for both models at bounds 2 and 3");
    Ok(())
}

fn relative_isos(o: &mut Outcome) -> Result<()> {
    let small = WaldhausenInstance::finset_inj(2);
    let big = WaldhausenInstance::finset_inj(3);
    let id = inclusion_functor(&small, &big)?;
    let shift = shift_functor(&small, &big, 1)?;
    let phi = shift_transformation(&small, &big, 1)?;
    let r = verify_relative_iso(&small, &big, &id, &shift, &phi)?;
    o.expect(r.passed() && !r.verified.is_empty(), format!("shift: failure at {:?}", r.failure));
    let cob = build(ConstructionKind::Cob, &small, 2)?;
    let lands = check_induced_lands(&cob, &big, &id, &shift, &phi)?;
    o.expect(lands.passed(), format!("induced map: {:?}", lands.witness));
    Ok(())
}

fn symmetric(o: &mut Outcome) -> Result<()> {
    for w in [WaldhausenInstance::finset_all(2)?, WaldhausenInstance::finpointed(2)?, WaldhausenInstance::finset_inj(2)] {
        let sym = build(ConstructionKind::CobSym, &w, 3)?;
        let r = check_symmetric_cofibrations(&sym)?;
        o.expect(r.passed(), format!("{}: {:?}", w.descriptor(), r.witness));
    }
    let r = check_cospan_replacement(&WaldhausenInstance::finset_all(2)?, &WaldhausenInstance::finset_all(6)?, LIMIT)?;
    o.expect(r.passed(), format!("replacement: {r:?}"));
    o.note(format!("{} cospans replaced", r.cospans));
    Ok(())
}

type Check = fn(&mut Outcome) -> Result<()>;

fn main() {
    let criteria: [(&str, Check, u64); 11] = [
        ("subdivision bridge", subdivision_bridge, 10),
        ("last-vertex evidence", last_vertex, 30),
        ("waldhausen axioms", axioms, 120),
        ("structural identities", structural_identities, 120),
        ("segal condition", segal, 600),
        ("layer homotopy", layer_homotopy, 600),
        ("equivalences of categories", equivalences, 600),
        ("comparison proof objects", proof_objects, 600),
        ("first homology agreement", k0_agreement, 1800),
        ("relative isomorphisms", relative_isos, 600),
        ("symmetric cospans", symmetric, 600),
    ];
    let mut failed = 0;
    for (k, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut o = Outcome::default();
        if let Err(e) = check(&mut o) {
            o.failures.push(format!("error: {e}"));
        }
        let elapsed = start.elapsed();
        o.expect(elapsed <= Duration::from_secs(budget), format!("took {elapsed:.1?}, budget {budget} s"));
        let verdict = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {name} ({elapsed:.2?} of {budget} s)", k + 1);
        for n in &o.notes {
            println!("    {n}");
        }
        for f in &o.failures {
            println!("    failed: {f}");
        }
        failed += usize::from(!o.failures.is_empty());
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
