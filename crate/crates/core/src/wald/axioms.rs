use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::instance::WaldhausenInstance;
use crate::error::Error;
use crate::fincat::{MorId, ObjId};

/// How the gluing lemma is quantified by [`check_axioms`].
pub const GLUING_FORMULATION: &str = "for every commutative diagram B <- A >-> C over B' <- A' >-> C' \
with cofibrations A >-> C, A' >-> C' and weak equivalences A -> A', B -> B', C -> C', the induced map \
of canonical pushouts B u_A C -> B' u_A' C' is a weak equivalence; diagrams whose pushouts exceed the \
size bound are skipped and counted";

/// Default number of gluing diagrams checked exhaustively before sampling.
pub const DEFAULT_GLUING_BUDGET: usize = 100_000;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseResult {
    pub checked: usize,
    pub skipped_out_of_bound: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

impl ClauseResult {
    fn fail(&mut self, witness: impl FnOnce() -> String) {
        self.failures += 1;
        if self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingResult {
    pub candidates: u64,
    pub exhaustive: bool,
    pub seed: u64,
    pub result: ClauseResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub instance: String,
    pub gluing_formulation: String,
    pub isomorphisms: ClauseResult,
    pub composition: ClauseResult,
    pub pushouts: ClauseResult,
    pub gluing: GluingResult,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.isomorphisms.passed() && self.composition.passed() && self.pushouts.passed() && self.gluing.result.passed()
    }
}

/// A span `B <- A >-> C` with the weak equivalences out of its three corners.
struct GluingSource {
    c: MorId,
    f: MorId,
    weq_a: Vec<MorId>,
    weq_b: Vec<MorId>,
    weq_c: Vec<MorId>,
}

impl GluingSource {
    fn weight(&self) -> u64 {
        (self.weq_a.len() * self.weq_b.len() * self.weq_c.len()) as u64
    }
}

fn weqs_out_of(w: &WaldhausenInstance, a: ObjId) -> Vec<MorId> {
    w.category()
        .outgoing(a)
        .iter()
        .copied()
        .filter(|&f| w.is_weq(f))
        .collect()
}

fn cofibrations(w: &WaldhausenInstance) -> impl Iterator<Item = MorId> + '_ {
    (0..w.category().morphism_count() as MorId).filter(|&f| w.is_cofibration(f))
}

/// Checks axioms (1) to (3) of an unpointed Waldhausen category.
///
/// (1) and (2) are exhaustive. Pushouts beyond the size bound are skipped and
/// counted. The gluing lemma is exhaustive when the number of candidate
/// diagrams is at most `budget`, otherwise `budget` candidates are drawn with
/// a ChaCha generator seeded by `seed`.
pub fn check_axioms(w: &WaldhausenInstance, budget: usize, seed: u64) -> AxiomReport {
    let cat = w.category();
    let m = cat.morphism_count() as MorId;

    let mut isomorphisms = ClauseResult::default();
    for f in 0..m {
        if w.is_iso(f) {
            isomorphisms.checked += 1;
            if !w.is_cofibration(f) || !w.is_weq(f) {
                isomorphisms.fail(|| format!("isomorphism {:?} is not in both classes", w.function(f)));
            }
        }
    }

    let mut composition = ClauseResult::default();
    for f in 0..m {
        for &g in cat.outgoing(cat.target(f)) {
            let gf = cat.comp(g, f);
            if w.is_cofibration(f) && w.is_cofibration(g) {
                composition.checked += 1;
                if !w.is_cofibration(gf) {
                    composition.fail(|| format!("cofibrations {f}, {g} compose to a non-cofibration"));
                }
            }
            if w.is_weq(f) && w.is_weq(g) {
                composition.checked += 1;
                if !w.is_weq(gf) {
                    composition.fail(|| format!("weak equivalences {f}, {g} compose to a non-weak-equivalence"));
                }
            }
        }
    }

    let mut pushouts = ClauseResult::default();
    for c in cofibrations(w) {
        for &f in cat.outgoing(cat.source(c)) {
            match w.pushout(c, f) {
                Err(Error::SizeBound { .. }) => pushouts.skipped_out_of_bound += 1,
                Err(e) => pushouts.fail(|| e.to_string()),
                Ok(p) => {
                    pushouts.checked += 1;
                    if !w.is_pushout(c, f, p.from_x, p.from_d) {
                        pushouts.fail(|| format!("oracle output for ({c}, {f}) is not a pushout"));
                    } else if !w.is_cofibration(p.from_x) {
                        pushouts.fail(|| format!("cobase change of cofibration {c} along {f} is not a cofibration"));
                    }
                }
            }
        }
    }

    let sources: Vec<GluingSource> = cofibrations(w)
        .flat_map(|c| {
            let a = cat.source(c);
            cat.outgoing(a).iter().map(move |&f| (c, f))
        })
        .map(|(c, f)| GluingSource {
            c,
            f,
            weq_a: weqs_out_of(w, cat.source(c)),
            weq_b: weqs_out_of(w, cat.target(f)),
            weq_c: weqs_out_of(w, cat.target(c)),
        })
        .collect();
    let candidates: u64 = sources.iter().map(GluingSource::weight).sum();
    let exhaustive = candidates <= budget as u64;
    let mut gluing = ClauseResult::default();
    if exhaustive {
        for s in &sources {
            for &a in &s.weq_a {
                for &b in &s.weq_b {
                    for &cc in &s.weq_c {
                        check_gluing_candidate(w, s, a, b, cc, &mut gluing);
                    }
                }
            }
        }
    } else {
        let mut cumulative = Vec::with_capacity(sources.len());
        let mut total = 0u64;
        for s in &sources {
            total += s.weight();
            cumulative.push(total);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..budget {
            let r = rng.gen_range(0..total);
            let k = cumulative.partition_point(|&c| c <= r);
            let s = &sources[k];
            let mut rest = r - if k == 0 { 0 } else { cumulative[k - 1] };
            let nc = s.weq_c.len() as u64;
            let nb = s.weq_b.len() as u64;
            let cc = s.weq_c[(rest % nc) as usize];
            rest /= nc;
            let b = s.weq_b[(rest % nb) as usize];
            rest /= nb;
            let a = s.weq_a[rest as usize];
            check_gluing_candidate(w, s, a, b, cc, &mut gluing);
        }
    }

    AxiomReport {
        instance: w.descriptor().to_string(),
        gluing_formulation: GLUING_FORMULATION.to_string(),
        isomorphisms,
        composition,
        pushouts,
        gluing: GluingResult {
            candidates,
            exhaustive,
            seed,
            result: gluing,
        },
    }
}

/// Completes one choice of vertical weak equivalences to all commuting
/// second spans and checks the induced map of pushouts.
fn check_gluing_candidate(
    w: &WaldhausenInstance,
    s: &GluingSource,
    a: MorId,
    b: MorId,
    cc: MorId,
    out: &mut ClauseResult,
) {
    let cat = w.category();
    let (a2, b2, c2) = (cat.target(a), cat.target(b), cat.target(cc));
    let first = match w.pushout(s.c, s.f) {
        Ok(p) => p,
        Err(_) => {
            out.skipped_out_of_bound += 1;
            return;
        }
    };
    let want_c = cat.comp(cc, s.c);
    let want_f = cat.comp(b, s.f);
    for &c_2 in cat.homs(a2, c2) {
        if !w.is_cofibration(c_2) || cat.comp(c_2, a) != want_c {
            continue;
        }
        for &f_2 in cat.homs(a2, b2) {
            if cat.comp(f_2, a) != want_f {
                continue;
            }
            let second = match w.pushout(c_2, f_2) {
                Ok(p) => p,
                Err(_) => {
                    out.skipped_out_of_bound += 1;
                    continue;
                }
            };
            out.checked += 1;
            let induced = w.mediating(
                first.from_x,
                first.from_d,
                cat.comp(second.from_x, b),
                cat.comp(second.from_d, cc),
            );
            let ok = induced.is_some_and(|m| w.is_weq(m));
            if !ok {
                out.fail(|| {
                    format!(
                        "span ({:?} <- {:?} >-> {:?}), second span ({:?}, {:?}), verticals ({:?}, {:?}, {:?}): induced map {:?} is not a weak equivalence",
                        w.function(s.f),
                        w.size(cat.source(s.c)),
                        w.function(s.c),
                        w.function(f_2),
                        w.function(c_2),
                        w.function(a),
                        w.function(b),
                        w.function(cc),
                        induced.map(|m| w.function(m)),
                    )
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instances_pass() {
        for w in [
            WaldhausenInstance::finset_inj(2),
            WaldhausenInstance::finpointed(2).unwrap(),
            WaldhausenInstance::finset_all(2).unwrap(),
        ] {
            let r = check_axioms(&w, DEFAULT_GLUING_BUDGET, 7);
            assert!(r.passed(), "{r:?}");
            assert!(r.gluing.exhaustive);
            assert!(r.pushouts.checked > 0);
        }
    }

    #[test]
    fn broken_instance_fails_gluing_with_witness() {
        let r = check_axioms(&WaldhausenInstance::broken_gluing(2), DEFAULT_GLUING_BUDGET, 7);
        assert!(r.isomorphisms.passed() && r.composition.passed() && r.pushouts.passed());
        assert!(!r.gluing.result.passed());
        assert!(r.gluing.result.witness.is_some());
    }

    #[test]
    fn sampling_is_seeded() {
        let w = WaldhausenInstance::finset_inj(2);
        let a = check_axioms(&w, 10, 3);
        let b = check_axioms(&w, 10, 3);
        assert!(!a.gluing.exhaustive);
        assert_eq!(a, b);
    }
}
