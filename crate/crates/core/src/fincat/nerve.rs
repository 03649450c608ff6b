use std::collections::HashMap;

use super::category::{FiniteCategory, MorId, ObjId};
use super::functor::Functor;
use super::twisted::TwistedArrowCategory;
use crate::error::{Error, Result};
use crate::simplicial::{edgewise_subdivision_to, SimplicialMap, TruncatedSimplicialSet};

/// The nerve of a finite category truncated at `depth`, together with the
/// decoding of its simplices.
///
/// A 0-simplex is stored as `[object]`; a `k`-simplex for `k >= 1` as its
/// string of `k` composable morphisms `f_1, …, f_k` (with `f_i` ending where
/// `f_{i+1}` starts). Strings are numbered in lexicographic order.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub sset: TruncatedSimplicialSet,
    strings: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
}

impl Nerve {
    pub fn string(&self, level: usize, x: usize) -> &[u32] {
        &self.strings[level][x]
    }

    pub fn strings(&self, level: usize) -> &[Vec<u32>] {
        &self.strings[level]
    }

    pub fn index_of(&self, level: usize, string: &[u32]) -> Option<usize> {
        self.index[level].get(string).copied()
    }

    /// Vertex `v` (`0 ≤ v ≤ level`) of a simplex.
    pub fn vertex(&self, c: &FiniteCategory, level: usize, x: usize) -> Vec<ObjId> {
        let s = &self.strings[level][x];
        if level == 0 {
            return vec![s[0]];
        }
        let mut v = vec![c.source(s[0])];
        v.extend(s.iter().map(|&f| c.target(f)));
        v
    }
}

fn strings_up_to(c: &FiniteCategory, depth: usize) -> Vec<Vec<Vec<u32>>> {
    let mut levels = vec![(0..c.object_count() as u32).map(|a| vec![a]).collect::<Vec<_>>()];
    if depth >= 1 {
        let mut ones: Vec<Vec<u32>> = (0..c.morphism_count() as u32).map(|f| vec![f]).collect();
        ones.sort();
        levels.push(ones);
    }
    for k in 2..=depth {
        let mut next = Vec::new();
        for s in &levels[k - 1] {
            let end = c.target(*s.last().unwrap());
            for &g in c.outgoing(end) {
                let mut t = s.clone();
                t.push(g);
                next.push(t);
            }
        }
        next.sort();
        levels.push(next);
    }
    levels
}

fn face_string(c: &FiniteCategory, s: &[u32], i: usize) -> Vec<u32> {
    let k = s.len();
    if k == 1 {
        // The two faces of an arrow are its endpoints.
        return vec![if i == 0 { c.target(s[0]) } else { c.source(s[0]) }];
    }
    let mut t = Vec::with_capacity(k - 1);
    for (p, &f) in s.iter().enumerate() {
        if i == 0 && p == 0 || i == k && p == k - 1 {
            continue;
        }
        if i > 0 && i < k && p == i {
            let last = t.pop().unwrap();
            t.push(c.comp(f, last));
        } else {
            t.push(f);
        }
    }
    t
}

fn degeneracy_string(c: &FiniteCategory, level: usize, s: &[u32], i: usize) -> Vec<u32> {
    if level == 0 {
        return vec![c.id(s[0])];
    }
    let object = if i == 0 { c.source(s[0]) } else { c.target(s[i - 1]) };
    let mut t = s.to_vec();
    t.insert(i, c.id(object));
    t
}

/// `N C` truncated at `depth`.
pub fn nerve(c: &FiniteCategory, depth: usize) -> Nerve {
    let strings = strings_up_to(c, depth);
    let index: Vec<HashMap<Vec<u32>, usize>> = strings
        .iter()
        .map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let counts = strings.iter().map(Vec::len).collect();
    let mut faces = vec![Vec::new()];
    for k in 1..=depth {
        faces.push(
            (0..=k)
                .map(|i| {
                    strings[k]
                        .iter()
                        .map(|s| index[k - 1][&face_string(c, s, i)] as u32)
                        .collect()
                })
                .collect(),
        );
    }
    let degeneracies = (0..depth)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    strings[k]
                        .iter()
                        .map(|s| index[k + 1][&degeneracy_string(c, k, s, i)] as u32)
                        .collect()
                })
                .collect()
        })
        .collect();
    let sset = TruncatedSimplicialSet::from_tables(counts, faces, Some(degeneracies))
        .expect("nerve tables are well formed");
    Nerve {
        sset,
        strings,
        index,
    }
}

/// `N F : N C -> N D` on the common truncation.
pub fn nerve_map(f: &Functor, source: &Nerve, target: &Nerve) -> SimplicialMap {
    let depth = source.sset.depth().min(target.sset.depth());
    let components = (0..=depth)
        .map(|k| {
            source.strings[k]
                .iter()
                .map(|s| {
                    let image: Vec<u32> = if k == 0 {
                        vec![f.objects[s[0] as usize]]
                    } else {
                        s.iter().map(|&g| f.morphisms[g as usize]).collect()
                    };
                    target.index[k][&image] as u32
                })
                .collect()
        })
        .collect();
    SimplicialMap::new(components)
}

/// The levelwise bijection `(Sd N C)_k -> N_k(tw C)`.
///
/// A `(2k+1)`-string `f_1, …, f_{2k+1}` of `C` goes to the `k`-string of
/// `tw C` whose object `i` is the composite from vertex `k−i` to vertex
/// `k+1+i`, and whose arrow from object `i−1` to object `i` is the square
/// given by `(f_{k−i+1}, f_{k+1+i})`.
pub fn subdivision_to_twisted(
    c: &FiniteCategory,
    nerve_c: &Nerve,
    tw: &TwistedArrowCategory,
    nerve_tw: &Nerve,
    depth: usize,
) -> Result<SimplicialMap> {
    if nerve_c.sset.depth() < 2 * depth + 1 {
        return Err(Error::Truncation {
            required: 2 * depth + 1,
            available: nerve_c.sset.depth(),
        });
    }
    if nerve_tw.sset.depth() < depth {
        return Err(Error::Truncation {
            required: depth,
            available: nerve_tw.sset.depth(),
        });
    }
    let composite = |s: &[u32], from: usize, to: usize| -> MorId {
        let mut acc = s[from];
        for &g in &s[from + 1..to] {
            acc = c.comp(g, acc);
        }
        acc
    };
    let mut components = Vec::with_capacity(depth + 1);
    for k in 0..=depth {
        let level: Vec<u32> = nerve_c.strings[2 * k + 1]
            .iter()
            .map(|s| {
                // Vertex v of the string sits between s[v-1] and s[v].
                let object = |i: usize| composite(s, k - i, k + 1 + i);
                let image: Vec<u32> = if k == 0 {
                    vec![object(0)]
                } else {
                    (1..=k)
                        .map(|i| {
                            tw.morphism(object(i - 1), s[k - i], s[k + i])
                                .expect("squares of a string are twisted arrows")
                        })
                        .collect()
                };
                nerve_tw.index[k][&image] as u32
            })
            .collect();
        components.push(level);
    }
    Ok(SimplicialMap::new(components))
}

/// Result of comparing `Sd N C` with `N(tw C)` through the explicit bijection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeReport {
    pub depth: usize,
    pub counts: Vec<usize>,
    pub bijective: bool,
    pub commutes: std::result::Result<(), String>,
}

impl BridgeReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.commutes.is_ok()
    }
}

/// Checks that the bijection `Sd N C ≅ N(tw C)` holds levelwise up to `depth`
/// and commutes with every face and degeneracy.
pub fn check_subdivision_bridge(c: &FiniteCategory, depth: usize) -> Result<BridgeReport> {
    let tw = super::twisted::twisted_arrow_category(c);
    let nc = nerve(c, 2 * depth + 1);
    let ntw = nerve(&tw.category, depth);
    let sd = edgewise_subdivision_to(&nc.sset, depth)?;
    let map = subdivision_to_twisted(c, &nc, &tw, &ntw, depth)?;
    let bijective = (0..=depth).all(|k| {
        let mut seen = vec![false; ntw.sset.count(k)];
        sd.count(k) == ntw.sset.count(k)
            && map.components()[k].iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    });
    Ok(BridgeReport {
        depth,
        counts: sd.counts().to_vec(),
        bijective,
        commutes: map.check_commutes(&sd, &ntw.sset),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::category::cyclic_two;
    use crate::fincat::functor::{enumerate_functors, EnumerationLimit};
    use crate::fincat::poset::{poset_category, twisted_poset};
    use crate::simplicial::check_simplicial_identities;

    #[test]
    fn nerve_counts() {
        assert_eq!(nerve(&poset_category(1), 1).sset.count(1), 3);
        assert_eq!(nerve(&cyclic_two(), 2).sset.count(2), 4);
        // Monotone maps [2] -> [2]: C(5, 2).
        assert_eq!(nerve(&poset_category(2), 2).sset.count(2), 10);
    }

    #[test]
    fn nerves_satisfy_identities() {
        for c in [poset_category(2), cyclic_two(), twisted_poset(1).to_category()] {
            assert!(check_simplicial_identities(&nerve(&c, 4).sset).passed());
        }
    }

    #[test]
    fn nerve_of_poset_matches_monotone_maps() {
        let c = poset_category(2);
        let n = nerve(&c, 3);
        for k in 0..=3 {
            assert_eq!(n.sset.count(k), crate::simplicial::OrdinalMap::all(k, 2).len());
        }
    }

    #[test]
    fn nerve_is_functorial() {
        let a = poset_category(1);
        let b = poset_category(2);
        let c = twisted_poset(1).to_category();
        let (na, nb, nc) = (nerve(&a, 3), nerve(&b, 3), nerve(&c, 3));
        let fs = enumerate_functors(&a, &b, |_| true, EnumerationLimit::default()).unwrap();
        let gs = enumerate_functors(&b, &c, |_| true, EnumerationLimit::default()).unwrap();
        for f in &fs {
            let nf = nerve_map(f, &na, &nb);
            nf.check_commutes(&na.sset, &nb.sset).unwrap();
            for g in &gs {
                let lhs = nerve_map(&g.compose(f), &na, &nc);
                let rhs = nerve_map(g, &nb, &nc).compose(&nf);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn bridge_on_small_categories() {
        for c in [poset_category(1), poset_category(2), cyclic_two()] {
            let report = check_subdivision_bridge(&c, 2).unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn bridge_vertices_of_interval() {
        let report = check_subdivision_bridge(&poset_category(1), 1).unwrap();
        assert_eq!(report.counts, vec![3, 5]);
    }
}
