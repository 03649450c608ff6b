use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::category::Category;

/// Outcome of deciding whether a functor is an equivalence of categories.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub equivalence: bool,
    pub fully_faithful: bool,
    pub essentially_surjective: bool,
    pub source_objects: usize,
    pub target_objects: usize,
    /// First hom-pair `(a, b)` on which the functor is not bijective.
    pub hom_failure: Option<HomFailure>,
    /// Target objects not isomorphic to any image object.
    pub missing_objects: Vec<usize>,
    /// For each target object, a source object whose image is isomorphic to it.
    pub iso_witnesses: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomFailure {
    pub source: usize,
    pub target: usize,
    pub source_hom: usize,
    pub target_hom: usize,
    pub injective: bool,
}

fn is_iso<C: Category>(c: &C, f: &C::Mor, a: usize, b: usize) -> bool {
    let (ia, ib) = (c.identity(a), c.identity(b));
    c.hom(b, a)
        .iter()
        .any(|g| c.compose(g, f) == ia && c.compose(f, g) == ib)
}

/// Whether some isomorphism `a -> b` exists.
pub fn isomorphic<C: Category>(c: &C, a: usize, b: usize) -> bool {
    a == b || c.hom(a, b).iter().any(|f| is_iso(c, f, a, b))
}

/// Decides whether the functor given by `obj` and `mor` is an equivalence:
/// bijective on every hom-set and essentially surjective.
pub fn is_equivalence<S: Category, T: Category>(
    source: &S,
    target: &T,
    obj: impl Fn(usize) -> usize,
    mor: impl Fn(&S::Mor) -> T::Mor,
) -> EquivalenceReport {
    let n = source.object_count();
    let images: Vec<usize> = (0..n).map(&obj).collect();
    let mut report = EquivalenceReport {
        source_objects: n,
        target_objects: target.object_count(),
        fully_faithful: true,
        ..Default::default()
    };
    'outer: for a in 0..n {
        for b in 0..n {
            let hs = source.hom(a, b);
            let ht = target.hom(images[a], images[b]);
            let mapped: HashSet<T::Mor> = hs.iter().map(&mor).collect();
            let injective = mapped.len() == hs.len();
            if !injective || hs.len() != ht.len() {
                report.fully_faithful = false;
                report.hom_failure = Some(HomFailure {
                    source: a,
                    target: b,
                    source_hom: hs.len(),
                    target_hom: ht.len(),
                    injective,
                });
                break 'outer;
            }
        }
    }
    let mut image_set: Vec<usize> = images.clone();
    image_set.sort_unstable();
    image_set.dedup();
    for y in 0..target.object_count() {
        let witness = if let Some(x) = images.iter().position(|&i| i == y) {
            Some(x)
        } else {
            image_set
                .iter()
                .find(|&&i| isomorphic(target, i, y))
                .and_then(|&i| images.iter().position(|&j| j == i))
        };
        if witness.is_none() {
            report.missing_objects.push(y);
        }
        report.iso_witnesses.push(witness);
    }
    report.essentially_surjective = report.missing_objects.is_empty();
    report.equivalence = report.fully_faithful && report.essentially_surjective;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::category::{FiniteCategory, MorId};
    use crate::fincat::functor::{enumerate_functors, enumerate_natural_transformations, EnumerationLimit, Functor};
    use crate::fincat::poset::poset_category;

    fn check(s: &FiniteCategory, t: &FiniteCategory, f: &Functor) -> bool {
        is_equivalence(s, t, |a| f.objects[a] as usize, |&g: &MorId| f.morphisms[g as usize]).equivalence
    }

    fn natural_iso_exists(c: &FiniteCategory, f: &Functor, g: &Functor) -> bool {
        enumerate_natural_transformations(c, c, f, g)
            .iter()
            .any(|t| t.components.iter().all(|&m| c.is_iso(m)))
    }

    /// Brute force: search for a quasi-inverse together with natural isomorphisms.
    fn has_quasi_inverse(s: &FiniteCategory, t: &FiniteCategory, f: &Functor) -> bool {
        let gs = enumerate_functors(t, s, |_| true, EnumerationLimit::default()).unwrap();
        let (ids, idt) = (Functor::identity(s), Functor::identity(t));
        gs.iter()
            .any(|g| natural_iso_exists(s, &g.compose(f), &ids) && natural_iso_exists(t, &f.compose(g), &idt))
    }

    /// The codiscrete category on two objects, equivalent to a point.
    fn codiscrete_two() -> FiniteCategory {
        // Morphism a·2 + b is the unique arrow a -> b.
        FiniteCategory::from_fn(
            vec!["x".into(), "y".into()],
            vec![0, 0, 1, 1],
            vec![0, 1, 0, 1],
            vec![0, 3],
            |g, f| (f / 2) * 2 + g % 2,
        )
    }

    #[test]
    fn identity_is_equivalence() {
        let c = poset_category(2);
        assert!(check(&c, &c, &Functor::identity(&c)));
    }

    #[test]
    fn skeleton_inclusion_is_equivalence() {
        let point = poset_category(0);
        let two = codiscrete_two();
        let incl = Functor::constant(&point, &two, 1);
        assert!(check(&point, &two, &incl));
        let report = is_equivalence(&point, &two, |_| 1, |_: &MorId| two.id(1));
        assert_eq!(report.iso_witnesses, vec![Some(0), Some(0)]);
    }

    #[test]
    fn non_equivalences_report_witnesses() {
        let one = poset_category(1);
        let point = poset_category(0);
        let r = is_equivalence(&point, &one, |_| 0, |_: &MorId| one.id(0));
        assert!(r.fully_faithful && !r.essentially_surjective);
        assert_eq!(r.missing_objects, vec![1]);
        let collapse = is_equivalence(&one, &point, |_| 0, |_: &MorId| 0);
        assert!(!collapse.fully_faithful);
        assert!(collapse.hom_failure.is_some());
    }

    #[test]
    fn agrees_with_quasi_inverse_search() {
        let cats = [poset_category(0), poset_category(1), codiscrete_two(), crate::fincat::category::cyclic_two()];
        for s in &cats {
            for t in &cats {
                for f in enumerate_functors(s, t, |_| true, EnumerationLimit::default()).unwrap() {
                    assert_eq!(check(s, t, &f), has_quasi_inverse(s, t, &f), "{f:?}");
                }
            }
        }
    }
}
