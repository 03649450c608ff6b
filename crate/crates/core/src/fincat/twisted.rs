use std::collections::HashMap;

use super::category::{FiniteCategory, MorId, ObjId};

/// A morphism of the twisted arrow category: from the arrow `u : c -> d` to
/// `b ∘ u ∘ a`, given by `a : c' -> c` and `b : d -> d'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwistedMorphism {
    pub from: MorId,
    pub pre: MorId,
    pub post: MorId,
}

/// The twisted arrow category together with the decoding of its morphisms.
#[derive(Clone, Debug)]
pub struct TwistedArrowCategory {
    pub category: FiniteCategory,
    pub morphisms: Vec<TwistedMorphism>,
    index: HashMap<TwistedMorphism, MorId>,
}

impl TwistedArrowCategory {
    /// Id of the twisted morphism out of `from` given by `(pre, post)`.
    pub fn morphism(&self, from: MorId, pre: MorId, post: MorId) -> Option<MorId> {
        self.index.get(&TwistedMorphism { from, pre, post }).copied()
    }
}

/// Objects are the arrows of `c` (object `k` is morphism `k`); composition
/// stacks squares: `(a', b') ∘ (a, b) = (a ∘ a', b' ∘ b)`.
pub fn twisted_arrow_category(c: &FiniteCategory) -> TwistedArrowCategory {
    let mut morphisms = Vec::new();
    let mut sources = Vec::new();
    let mut targets = Vec::new();
    let mut index = HashMap::new();
    let objects = c.morphism_count() as MorId;
    for u in 0..objects {
        let (src, tgt) = (c.source(u), c.target(u));
        for a_src in 0..c.object_count() as ObjId {
            for &a in c.homs(a_src, src) {
                for &b in c.outgoing(tgt) {
                    let m = TwistedMorphism { from: u, pre: a, post: b };
                    let image = c.comp(b, c.comp(u, a));
                    index.insert(m, morphisms.len() as MorId);
                    morphisms.push(m);
                    sources.push(u);
                    targets.push(image);
                }
            }
        }
    }
    let identities: Vec<MorId> = (0..objects)
        .map(|u| {
            let m = TwistedMorphism {
                from: u,
                pre: c.id(c.source(u)),
                post: c.id(c.target(u)),
            };
            index[&m]
        })
        .collect();
    let names = (0..objects)
        .map(|u| format!("{}→{}", c.object_name(c.source(u)), c.object_name(c.target(u))))
        .collect();
    let mut composites = HashMap::new();
    for (f_id, f) in morphisms.iter().enumerate() {
        let mid = targets[f_id];
        for (g_id, g) in morphisms.iter().enumerate() {
            if g.from != mid {
                continue;
            }
            let h = TwistedMorphism {
                from: f.from,
                pre: c.comp(f.pre, g.pre),
                post: c.comp(g.post, f.post),
            };
            composites.insert((g_id as MorId, f_id as MorId), index[&h]);
        }
    }
    let category = FiniteCategory::from_composites(names, sources, targets, identities, composites);
    TwistedArrowCategory {
        category,
        morphisms,
        index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::category::cyclic_two;
    use crate::fincat::poset::poset_category;

    #[test]
    fn twisted_of_interval() {
        let tw = twisted_arrow_category(&poset_category(1));
        assert_eq!(tw.category.object_count(), 3);
        assert_eq!(tw.category.morphism_count(), 5);
        tw.category.check_laws().unwrap();
    }

    #[test]
    fn twisted_of_point() {
        let tw = twisted_arrow_category(&poset_category(0));
        assert_eq!(tw.category.object_count(), 1);
        assert_eq!(tw.category.morphism_count(), 1);
    }

    #[test]
    fn twisted_of_cyclic_group_by_enumeration() {
        let c = cyclic_two();
        let tw = twisted_arrow_category(&c);
        tw.category.check_laws().unwrap();
        // Oracle: every (u, a, b) with a, b ∈ Z/2 is a morphism out of u.
        let mut expected = 0;
        for _u in 0..2 {
            for _a in 0..2 {
                for _b in 0..2 {
                    expected += 1;
                }
            }
        }
        assert_eq!(tw.category.object_count(), 2);
        assert_eq!(tw.category.morphism_count(), expected);
    }
}
