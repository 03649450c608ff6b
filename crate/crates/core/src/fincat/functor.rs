use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::category::{FiniteCategory, MorId, ObjId};
use crate::error::{Error, Result};

/// A functor between explicit finite categories.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Functor {
    pub objects: Vec<ObjId>,
    pub morphisms: Vec<MorId>,
}

impl Functor {
    pub fn identity(c: &FiniteCategory) -> Self {
        Self {
            objects: (0..c.object_count() as ObjId).collect(),
            morphisms: (0..c.morphism_count() as MorId).collect(),
        }
    }

    pub fn constant(source: &FiniteCategory, target: &FiniteCategory, object: ObjId) -> Self {
        Self {
            objects: vec![object; source.object_count()],
            morphisms: vec![target.id(object); source.morphism_count()],
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Functor) -> Functor {
        Functor {
            objects: first.objects.iter().map(|&a| self.objects[a as usize]).collect(),
            morphisms: first.morphisms.iter().map(|&f| self.morphisms[f as usize]).collect(),
        }
    }

    pub fn check(&self, source: &FiniteCategory, target: &FiniteCategory) -> std::result::Result<(), String> {
        if self.objects.len() != source.object_count() || self.morphisms.len() != source.morphism_count() {
            return Err("functor tables have the wrong length".into());
        }
        for a in 0..source.object_count() as ObjId {
            if self.morphisms[source.id(a) as usize] != target.id(self.objects[a as usize]) {
                return Err(format!("identity of object {a} is not preserved"));
            }
        }
        for f in 0..source.morphism_count() as MorId {
            let image = self.morphisms[f as usize];
            if target.source(image) != self.objects[source.source(f) as usize]
                || target.target(image) != self.objects[source.target(f) as usize]
            {
                return Err(format!("morphism {f} is sent between the wrong objects"));
            }
            for &g in source.outgoing(source.target(f)) {
                let lhs = self.morphisms[source.comp(g, f) as usize];
                let rhs = target.comp(self.morphisms[g as usize], image);
                if lhs != rhs {
                    return Err(format!("composite {g}∘{f} is not preserved"));
                }
            }
        }
        Ok(())
    }

    pub fn to_canonical_json(&self) -> Value {
        json!({ "morphisms": self.morphisms, "objects": self.objects })
    }
}

/// A natural transformation between parallel functors, one component per
/// source object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NaturalTransformation {
    pub components: Vec<MorId>,
}

impl NaturalTransformation {
    pub fn check(
        &self,
        source: &FiniteCategory,
        target: &FiniteCategory,
        from: &Functor,
        to: &Functor,
    ) -> std::result::Result<(), String> {
        for a in 0..source.object_count() {
            let c = self.components[a];
            if target.source(c) != from.objects[a] || target.target(c) != to.objects[a] {
                return Err(format!("component at {a} has wrong endpoints"));
            }
        }
        for f in 0..source.morphism_count() as MorId {
            let (a, b) = (source.source(f) as usize, source.target(f) as usize);
            let lhs = target.comp(to.morphisms[f as usize], self.components[a]);
            let rhs = target.comp(self.components[b], from.morphisms[f as usize]);
            if lhs != rhs {
                return Err(format!("naturality square for morphism {f} fails"));
            }
        }
        Ok(())
    }
}

/// Ceiling on enumeration output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationLimit {
    pub max_results: usize,
}

impl Default for EnumerationLimit {
    fn default() -> Self {
        Self {
            max_results: 1_000_000,
        }
    }
}

enum Step {
    Object(usize),
    Morphism(usize),
}

/// All functors `source -> target` accepted by `filter`, by backtracking over
/// object images in index order and then over the morphisms that become
/// determined. Output order is lexicographic in (object images, morphism
/// images) along that order, independent of any scheduling.
pub fn enumerate_functors(
    source: &FiniteCategory,
    target: &FiniteCategory,
    filter: impl Fn(&Functor) -> bool,
    limit: EnumerationLimit,
) -> Result<Vec<Functor>> {
    let n = source.object_count();
    let m = source.morphism_count();
    // Decision order: each object, then the morphisms whose later endpoint it is.
    let mut steps = Vec::new();
    let mut step_of_morphism = vec![0usize; m];
    for a in 0..n {
        steps.push(Step::Object(a));
        for f in 0..m {
            let (s, t) = (source.source(f as MorId) as usize, source.target(f as MorId) as usize);
            if s.max(t) == a {
                step_of_morphism[f] = steps.len();
                steps.push(Step::Morphism(f));
            }
        }
    }
    // Composition constraints g∘f = h, attached to the step that completes them.
    let mut checks: Vec<Vec<(MorId, MorId, MorId)>> = vec![Vec::new(); steps.len()];
    for f in 0..m as MorId {
        for &g in source.outgoing(source.target(f)) {
            let h = source.comp(g, f);
            let last = step_of_morphism[f as usize]
                .max(step_of_morphism[g as usize])
                .max(step_of_morphism[h as usize]);
            checks[last].push((g, f, h));
        }
    }

    struct State<'a> {
        source: &'a FiniteCategory,
        target: &'a FiniteCategory,
        steps: &'a [Step],
        checks: &'a [Vec<(MorId, MorId, MorId)>],
        current: Functor,
        out: Vec<Functor>,
        limit: usize,
    }

    fn rec(st: &mut State<'_>, k: usize, filter: &dyn Fn(&Functor) -> bool) -> Result<()> {
        if k == st.steps.len() {
            if filter(&st.current) {
                if st.out.len() >= st.limit {
                    return Err(Error::Resource {
                        context: "enumerating functors".into(),
                        reached: st.out.len() + 1,
                        limit: st.limit,
                    });
                }
                st.out.push(st.current.clone());
            }
            return Ok(());
        }
        match st.steps[k] {
            Step::Object(a) => {
                for x in 0..st.target.object_count() as ObjId {
                    st.current.objects[a] = x;
                    rec(st, k + 1, filter)?;
                }
            }
            Step::Morphism(f) => {
                let fm = f as MorId;
                let s = st.current.objects[st.source.source(fm) as usize];
                let t = st.current.objects[st.source.target(fm) as usize];
                let candidates: Vec<MorId> = if st.source.is_identity(fm) {
                    vec![st.target.id(s)]
                } else {
                    st.target.homs(s, t).to_vec()
                };
                for image in candidates {
                    st.current.morphisms[f] = image;
                    let ok = st.checks[k].iter().all(|&(g, f2, h)| {
                        let c = &st.current.morphisms;
                        st.target.comp(c[g as usize], c[f2 as usize]) == c[h as usize]
                    });
                    if ok {
                        rec(st, k + 1, filter)?;
                    }
                }
            }
        }
        Ok(())
    }

    let mut st = State {
        source,
        target,
        steps: &steps,
        checks: &checks,
        current: Functor {
            objects: vec![0; n],
            morphisms: vec![0; m],
        },
        out: Vec::new(),
        limit: limit.max_results,
    };
    if target.object_count() == 0 && n > 0 {
        return Ok(Vec::new());
    }
    rec(&mut st, 0, &filter)?;
    Ok(st.out)
}

/// All natural transformations `from => to` between parallel functors.
pub fn enumerate_natural_transformations(
    source: &FiniteCategory,
    target: &FiniteCategory,
    from: &Functor,
    to: &Functor,
) -> Vec<NaturalTransformation> {
    let n = source.object_count();
    // Naturality squares, checked once both endpoint components are chosen.
    let mut squares: Vec<Vec<MorId>> = vec![Vec::new(); n];
    for f in 0..source.morphism_count() as MorId {
        let last = source.source(f).max(source.target(f)) as usize;
        squares[last].push(f);
    }
    let mut out = Vec::new();
    let mut comps = vec![0 as MorId; n];
    fn rec(
        a: usize,
        source: &FiniteCategory,
        target: &FiniteCategory,
        from: &Functor,
        to: &Functor,
        squares: &[Vec<MorId>],
        comps: &mut Vec<MorId>,
        out: &mut Vec<NaturalTransformation>,
    ) {
        if a == comps.len() {
            out.push(NaturalTransformation {
                components: comps.clone(),
            });
            return;
        }
        for &c in target.homs(from.objects[a], to.objects[a]) {
            comps[a] = c;
            let ok = squares[a].iter().all(|&f| {
                let (s, t) = (source.source(f) as usize, source.target(f) as usize);
                target.comp(to.morphisms[f as usize], comps[s])
                    == target.comp(comps[t], from.morphisms[f as usize])
            });
            if ok {
                rec(a + 1, source, target, from, to, squares, comps, out);
            }
        }
    }
    rec(0, source, target, from, to, &squares, &mut comps, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::category::cyclic_two;
    use crate::fincat::poset::{poset_category, twisted_poset};

    fn all(s: &FiniteCategory, t: &FiniteCategory) -> Vec<Functor> {
        enumerate_functors(s, t, |_| true, EnumerationLimit::default()).unwrap()
    }

    #[test]
    fn functor_counts() {
        let one = poset_category(1);
        assert_eq!(all(&one, &one).len(), 3);
        assert_eq!(all(&twisted_poset(1).to_category(), &one).len(), 5);
        let z2 = cyclic_two();
        assert_eq!(all(&poset_category(0), &z2).len(), z2.object_count());
        // Endofunctors of Z/2 are group endomorphisms: two of them.
        assert_eq!(all(&z2, &z2).len(), 2);
    }

    #[test]
    fn enumerated_functors_are_valid_and_distinct() {
        let s = twisted_poset(1).to_category();
        let t = poset_category(2);
        let fs = all(&s, &t);
        for f in &fs {
            f.check(&s, &t).unwrap();
        }
        let mut sorted = fs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), fs.len());
    }

    #[test]
    fn ceiling_is_enforced() {
        let one = poset_category(1);
        let err = enumerate_functors(&one, &one, |_| true, EnumerationLimit { max_results: 2 }).unwrap_err();
        assert!(matches!(err, Error::Resource { limit: 2, .. }));
    }

    #[test]
    fn transformations_of_identity_on_interval() {
        let one = poset_category(1);
        let id = Functor::identity(&one);
        assert_eq!(enumerate_natural_transformations(&one, &one, &id, &id).len(), 1);
    }

    #[test]
    fn transformations_between_constants_are_homs() {
        let two = poset_category(2);
        let one = poset_category(1);
        for x in 0..3 {
            for y in 0..3 {
                let f = Functor::constant(&one, &two, x);
                let g = Functor::constant(&one, &two, y);
                let n = enumerate_natural_transformations(&one, &two, &f, &g).len();
                assert_eq!(n, two.homs(x, y).len());
            }
        }
    }
}
