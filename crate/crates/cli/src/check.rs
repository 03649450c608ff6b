use anyhow::Result;
use serde::Serialize;
use serde_json::{json, Value};
use wcob_core::constructions::*;
use wcob_core::fincat::{is_equivalence, Category};
use wcob_core::wald::*;

use crate::context::Context;
use crate::report::{Report, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Waldhausen axioms of the instance.
    Axioms,
    /// Spine functors of the cobordism construction.
    Segal,
    /// Simplicial identities and operator closure of `--construction`.
    Identities,
    /// Comparison functors that must be equivalences of categories.
    Equivalences,
    /// The layer homotopy on the pushout-closed construction.
    Homotopy,
    /// The shift transformation as a relative isomorphism.
    Relative,
    /// Cofibrancy of symmetric cospans and the cospan replacement.
    Symmetric,
    All,
}

impl Suite {
    const EACH: [Suite; 7] = [
        Suite::Axioms,
        Suite::Segal,
        Suite::Identities,
        Suite::Equivalences,
        Suite::Homotopy,
        Suite::Relative,
        Suite::Symmetric,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Segal => "segal",
            Suite::Identities => "identities",
            Suite::Equivalences => "equivalences",
            Suite::Homotopy => "homotopy",
            Suite::Relative => "relative",
            Suite::Symmetric => "symmetric",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
    pub detail: Value,
}

#[derive(Default)]
struct Outcome {
    checks: Vec<CheckResult>,
    skipped: Vec<String>,
}

impl Outcome {
    fn push(&mut self, suite: Suite, name: impl Into<String>, passed: bool, witness: Option<String>, detail: impl Serialize) {
        self.checks.push(CheckResult {
            suite: suite.name(),
            name: name.into(),
            passed,
            witness: if passed { None } else { witness },
            detail: serde_json::to_value(detail).expect("reports serialize"),
        });
    }
}

pub fn check(cx: &Context, suite: Suite) -> Result<Report> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let outcomes: Vec<Result<Outcome>> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites.iter().map(|&s| scope.spawn(move || run(cx, s))).collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    });
    let mut all = Outcome::default();
    for o in outcomes {
        let o = o?;
        all.checks.extend(o.checks);
        all.skipped.extend(o.skipped);
    }
    let passed = all.checks.iter().all(|c| c.passed);
    let mut table = Table::new(&["suite", "check", "passed", "witness"]);
    for c in &all.checks {
        table.push(vec![
            c.suite.to_string(),
            c.name.clone(),
            c.passed.to_string(),
            c.witness.clone().unwrap_or_default(),
        ]);
    }
    let result = json!({ "suite": suite.name(), "checks": all.checks, "skipped": all.skipped });
    Ok(Report::new("check", &cx.config, Some(passed), result, table))
}

fn run(cx: &Context, suite: Suite) -> Result<Outcome> {
    let mut o = Outcome::default();
    let w = cx.instance()?;
    let degree = cx.config.degree;
    match suite {
        Suite::Axioms => axioms(cx, &w, &mut o),
        Suite::Segal => {
            let cob = cx.construction(ConstructionKind::Cob, &w, degree)?;
            for n in 1..=degree {
                let r = check_segal(&cob, n)?;
                let witness = format!("hom failure {:?}, chains missing in bound {:?}", r.strict.hom_failure, r.missing_in_bound);
                o.push(suite, format!("spine degree {n}"), r.passed(), Some(witness), &r);
            }
        }
        Suite::Identities => identities(cx, &w, &mut o)?,
        Suite::Equivalences => equivalences(cx, &w, &mut o)?,
        Suite::Homotopy => {
            if w.zero().is_none() {
                o.skipped.push(format!("homotopy: {} has no zero object", w.descriptor()));
            } else {
                let po = cx.construction(ConstructionKind::CobPo, &w, degree)?;
                let r = check_layer_homotopy(&po)?;
                o.push(suite, "layer homotopy", r.passed(), r.witness.clone(), &r);
            }
        }
        Suite::Relative => relative(cx, &w, &mut o)?,
        Suite::Symmetric => symmetric(cx, &w, &mut o)?,
        Suite::All => unreachable!("expanded by the caller"),
    }
    Ok(o)
}

fn axioms(cx: &Context, w: &WaldhausenInstance, o: &mut Outcome) {
    let r = check_axioms(w, cx.config.gluing_budget, cx.config.seed);
    for (name, clause) in [
        ("isomorphisms are cofibrations", &r.isomorphisms),
        ("cofibrations compose", &r.composition),
        ("pushouts of cofibrations", &r.pushouts),
    ] {
        o.push(Suite::Axioms, name, clause.passed(), clause.witness.clone(), clause);
    }
    let g = &r.gluing;
    o.push(Suite::Axioms, "gluing lemma", g.result.passed(), g.result.witness.clone(), g);
}

fn identities(cx: &Context, w: &WaldhausenInstance, o: &mut Outcome) -> Result<()> {
    let kind = cx.config.kind()?;
    if kind.needs_zero() && w.zero().is_none() {
        o.skipped.push(format!("identities: {kind} needs a zero object, {} has none", w.descriptor()));
        return Ok(());
    }
    let x = cx.construction(kind, w, cx.config.degree)?;
    let ids = x.check_identities()?;
    let witness = ids.violations.first().map(|v| format!("{v:?}"));
    o.push(Suite::Identities, format!("{kind} simplicial identities"), ids.passed(), witness, json!({ "counts": x.counts() }));
    let closure = x.check_operator_closure();
    o.push(
        Suite::Identities,
        format!("{kind} operator closure"),
        closure.passed(),
        closure.failures.first().cloned(),
        json!({ "checked": closure.checked, "failures": closure.failures.len() }),
    );
    match kind {
        ConstructionKind::Cob | ConstructionKind::CobSym => {
            let level = x.level(0);
            let r = is_equivalence(level, w.category(), |a| level.object(a).objects[0] as usize, |c| c[0]);
            let ok = r.equivalence && level.object_count() == w.object_count();
            o.push(Suite::Identities, format!("{kind} degree 0 is the category"), ok, Some(format!("{r:?}")), &r);
        }
        ConstructionKind::S => {
            o.push(Suite::Identities, "S degree 0 is a point", x.count(0) == 1, Some(format!("{} objects", x.count(0))), x.count(0));
            if cx.config.degree >= 1 {
                let f0 = filtered_category(w, 0, cx.config.budget)?;
                let r = s_to_filtered(&x, &f0, 1)?.equivalence_report(x.level(1), &f0);
                o.push(Suite::Identities, "S degree 1 is the category", r.equivalence, Some(format!("{:?}", r.hom_failure)), &r);
            }
        }
        _ => {}
    }
    Ok(())
}

fn equivalences(cx: &Context, w: &WaldhausenInstance, o: &mut Outcome) -> Result<()> {
    let degree = cx.config.degree;
    if w.zero().is_none() {
        o.skipped.push(format!("equivalences: need a zero object, {} has none", w.descriptor()));
        return Ok(());
    }
    let cob = cx.construction(ConstructionKind::Cob, w, degree)?;
    let big = cx.construction(ConstructionKind::CobBig, w, degree)?;
    for n in 0..=degree {
        let r = restrict_big_to_cob(&big, &cob, n)?.equivalence_report(big.level(n), cob.level(n));
        let witness = format!("hom failure {:?}, missing {:?}", r.hom_failure, r.missing_objects);
        o.push(Suite::Equivalences, format!("big to cob degree {n}"), r.equivalence, Some(witness), summary(&r));
    }
    let s = cx.construction(ConstructionKind::S, w, degree)?;
    for n in 1..=degree {
        let f = filtered_category(w, n - 1, cx.config.budget)?;
        let r = s_to_filtered(&s, &f, n)?.equivalence_report(s.level(n), &f);
        let witness = format!("hom failure {:?}, missing {:?}", r.hom_failure, r.missing_objects);
        o.push(Suite::Equivalences, format!("S to filtered degree {n}"), r.equivalence, Some(witness), summary(&r));
    }
    Ok(())
}

fn summary(r: &wcob_core::fincat::EquivalenceReport) -> Value {
    json!({
        "equivalence": r.equivalence,
        "fully_faithful": r.fully_faithful,
        "essentially_surjective": r.essentially_surjective,
        "source_objects": r.source_objects,
        "target_objects": r.target_objects,
    })
}

fn relative(cx: &Context, w: &WaldhausenInstance, o: &mut Outcome) -> Result<()> {
    if w.is_pointed() || w.kind() == InstanceKind::BrokenGluing {
        o.skipped.push(format!("relative: the shift is defined on unpointed finite sets, not {}", w.descriptor()));
        return Ok(());
    }
    let d = w.descriptor();
    let big = WaldhausenInstance::from_descriptor(InstanceDescriptor { bound: d.bound + 1, ..d })?;
    let id = inclusion_functor(w, &big)?;
    let shift = shift_functor(w, &big, 1)?;
    let phi = shift_transformation(w, &big, 1)?;
    let r = verify_relative_iso(w, &big, &id, &shift, &phi)?;
    let witness = r.failure.map(|f| format!("cofibration {f}"));
    o.push(
        Suite::Relative,
        format!("shift into {}", big.descriptor()),
        r.passed() && !r.verified.is_empty(),
        witness,
        json!({ "verified": r.verified.len() }),
    );
    let cob = cx.construction(ConstructionKind::Cob, w, cx.config.degree)?;
    let lands = check_induced_lands(&cob, &big, &id, &shift, &phi)?;
    o.push(Suite::Relative, "induced map lands in pushout cospans", lands.passed(), lands.witness.clone(), &lands);
    Ok(())
}

fn symmetric(cx: &Context, w: &WaldhausenInstance, o: &mut Outcome) -> Result<()> {
    let sym = cx.construction(ConstructionKind::CobSym, w, cx.config.degree)?;
    let r = check_symmetric_cofibrations(&sym)?;
    o.push(Suite::Symmetric, "restrictions are cofibrations", r.passed(), r.witness.clone(), &r);
    if !w.has_factorization() {
        o.skipped.push(format!("symmetric: {} has no factorization for the replacement", w.descriptor()));
        return Ok(());
    }
    let d = w.descriptor();
    let big = WaldhausenInstance::from_descriptor(InstanceDescriptor { bound: 3 * d.bound, ..d })?;
    let r = check_cospan_replacement(w, &big, cx.config.budget)?;
    o.push(Suite::Symmetric, format!("cospan replacement in {}", big.descriptor()), r.passed(), r.witness.clone(), &r);
    Ok(())
}
