use std::collections::HashMap;

use crate::constructions::{Components, DegreewiseCategoryObject, Restriction};
use crate::error::{Error, Result};
use crate::fincat::{nerve, nerve_map, FiniteCategory, Functor, MorId, Nerve};
use crate::simplicial::{BisimplicialSetTruncated, OrdinalMap, SimplicialMap, TruncatedSimplicialSet};

/// One degree of a construction with only weak equivalences, realized as
/// an explicit category together with its nerve.
pub struct WeqLevel {
    pub category: FiniteCategory,
    pub components: Vec<Components>,
    /// Morphism ids by (source, target, components): components alone do
    /// not determine the endpoints.
    lookup: HashMap<(u32, u32, Components), MorId>,
    pub nerve: Nerve,
}

impl WeqLevel {
    fn new(x: &DegreewiseCategoryObject<'_>, q: usize, p_depth: usize) -> Self {
        let (category, components) = x.level(q).weq_subcategory().materialize();
        let lookup = components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let m = i as MorId;
                ((category.source(m), category.target(m), c.clone()), m)
            })
            .collect();
        let nerve = nerve(&category, p_depth);
        Self {
            category,
            components,
            lookup,
            nerve,
        }
    }

    /// The explicit functor `self -> target` of a restriction.
    pub fn realize(&self, r: &Restriction, target: &WeqLevel) -> Result<Functor> {
        let morphisms = self
            .components
            .iter()
            .enumerate()
            .map(|(m, c)| {
                let (a, b) = (self.category.source(m as MorId), self.category.target(m as MorId));
                let key = (r.objects[a as usize] as u32, r.objects[b as usize] as u32, r.morphism(c));
                target
                    .lookup
                    .get(&key)
                    .copied()
                    .ok_or_else(|| Error::OperatorClosure("restriction of a weak equivalence is not one".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Functor {
            objects: r.objects.iter().map(|&o| o as u32).collect(),
            morphisms,
        })
    }

    /// `N` of a restriction functor.
    pub fn nerve_of(&self, r: &Restriction, target: &WeqLevel) -> Result<SimplicialMap> {
        Ok(nerve_map(&self.realize(r, target)?, &self.nerve, &target.nerve))
    }
}

/// `(p, q) ↦ N_p(w X_q)` with its realized levels.
pub struct NerveBisimplicial {
    pub bisimplicial: BisimplicialSetTruncated,
    pub levels: Vec<WeqLevel>,
}

impl NerveBisimplicial {
    pub fn p_depth(&self) -> usize {
        self.bisimplicial.p_depth()
    }

    pub fn q_depth(&self) -> usize {
        self.bisimplicial.q_depth()
    }

    pub fn diagonal(&self) -> Result<TruncatedSimplicialSet> {
        self.bisimplicial.diagonal()
    }
}

/// The bisimplicial set `N_• w X_•` truncated at nerve depth `p_depth` and
/// construction depth `q_depth`, with both actions verified.
pub fn nerve_bisimplicial(x: &DegreewiseCategoryObject<'_>, p_depth: usize, q_depth: usize) -> Result<NerveBisimplicial> {
    if q_depth > x.depth() {
        return Err(Error::Truncation {
            required: q_depth,
            available: x.depth(),
        });
    }
    let levels: Vec<WeqLevel> = (0..=q_depth).map(|q| WeqLevel::new(x, q, p_depth)).collect();
    let mut h_faces = vec![Vec::new()];
    for q in 1..=q_depth {
        let maps = (0..=q)
            .map(|i| levels[q].nerve_of(&x.operator(&OrdinalMap::coface(q, i))?, &levels[q - 1]))
            .collect::<Result<Vec<_>>>()?;
        h_faces.push(maps);
    }
    let h_degeneracies = if x.is_semi() {
        None
    } else {
        Some(
            (0..q_depth)
                .map(|q| {
                    (0..=q)
                        .map(|i| levels[q].nerve_of(&x.operator(&OrdinalMap::codegeneracy(q, i))?, &levels[q + 1]))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?,
        )
    };
    let columns = levels.iter().map(|l| l.nerve.sset.clone()).collect();
    let bisimplicial = BisimplicialSetTruncated::from_columns(columns, h_faces, h_degeneracies)?;
    bisimplicial.check().map_err(Error::OperatorClosure)?;
    Ok(NerveBisimplicial { bisimplicial, levels })
}

/// Column maps `N w X_q -> N w Y_q` of degreewise restrictions `maps[q]`.
pub fn nerve_bisimplicial_map(
    maps: &[Restriction],
    source: &NerveBisimplicial,
    target: &NerveBisimplicial,
) -> Result<Vec<SimplicialMap>> {
    if maps.len() > source.levels.len().min(target.levels.len()) {
        return Err(Error::Truncation {
            required: maps.len() - 1,
            available: source.q_depth().min(target.q_depth()),
        });
    }
    maps.iter()
        .enumerate()
        .map(|(q, r)| source.levels[q].nerve_of(r, &target.levels[q]))
        .collect()
}

/// The map of diagonals: component `k` is column map `k` in level `k`.
pub fn diagonal_map(columns: &[SimplicialMap]) -> SimplicialMap {
    let depth = (0..columns.len())
        .take_while(|&k| columns[k].depth() >= k)
        .last()
        .unwrap_or(0);
    SimplicialMap::new((0..=depth).map(|k| columns[k].components()[k].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{ConstructionKind, DEFAULT_DIAGRAM_LIMIT};
    use crate::simplicial::check_simplicial_identities;
    use crate::wald::WaldhausenInstance;

    fn build<'a>(kind: ConstructionKind, w: &'a WaldhausenInstance, depth: usize) -> DegreewiseCategoryObject<'a> {
        DegreewiseCategoryObject::build(kind, w, depth, DEFAULT_DIAGRAM_LIMIT).unwrap()
    }

    #[test]
    fn bottom_corner_counts() {
        let w = WaldhausenInstance::finpointed(2).unwrap();
        let s = nerve_bisimplicial(&build(ConstructionKind::S, &w, 2), 2, 2).unwrap();
        assert_eq!(s.bisimplicial.count(0, 0), 1);
        let cob = nerve_bisimplicial(&build(ConstructionKind::Cob, &w, 1), 1, 1).unwrap();
        assert_eq!(cob.bisimplicial.count(0, 0), w.category().object_count());
    }

    #[test]
    fn diagonal_satisfies_identities() {
        let w = WaldhausenInstance::finpointed(2).unwrap();
        let s = nerve_bisimplicial(&build(ConstructionKind::S, &w, 2), 2, 2).unwrap();
        let d = s.diagonal().unwrap();
        assert_eq!(d.count(0), 1);
        assert!(check_simplicial_identities(&d).passed());
    }

    #[test]
    fn identity_columns_give_identity_diagonal() {
        let w = WaldhausenInstance::finpointed(2).unwrap();
        let x = build(ConstructionKind::S, &w, 2);
        let b = nerve_bisimplicial(&x, 2, 2).unwrap();
        let ids: Vec<Restriction> = (0..=2).map(|q| x.operator(&OrdinalMap::identity(q)).unwrap()).collect();
        let cols = nerve_bisimplicial_map(&ids, &b, &b).unwrap();
        let d = b.diagonal().unwrap();
        assert_eq!(diagonal_map(&cols), SimplicialMap::identity(&d));
    }

    #[test]
    fn too_deep_is_refused() {
        let w = WaldhausenInstance::finpointed(2).unwrap();
        assert!(matches!(
            nerve_bisimplicial(&build(ConstructionKind::S, &w, 1), 1, 2),
            Err(Error::Truncation { .. })
        ));
    }
}
