use std::collections::HashMap;

use super::category::{FiniteCategory, MorId, ObjId};

/// A finite poset, the thin-category representation used for every shape.
///
/// Elements carry integer labels (e.g. `(i, j)` for an arrow poset) and are
/// numbered in lexicographic label order. Comparable pairs `a ≤ b` are
/// numbered too; the pair numbering doubles as the morphism numbering of the
/// associated thin category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<Vec<usize>>,
    label_index: HashMap<Vec<usize>, usize>,
    leq: Vec<bool>,
    pairs: Vec<(usize, usize)>,
    pair_index: Vec<u32>,
    lower_covers: Vec<Vec<usize>>,
    linear_order: Vec<usize>,
}

const NO_PAIR: u32 = u32::MAX;

impl Poset {
    /// Builds the poset on `labels` (sorted and deduplicated) with the given
    /// order relation, which must be reflexive, antisymmetric and transitive.
    pub fn from_relation(mut labels: Vec<Vec<usize>>, leq: impl Fn(&[usize], &[usize]) -> bool) -> Self {
        labels.sort();
        labels.dedup();
        let n = labels.len();
        let mut rel = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                rel[a * n + b] = leq(&labels[a], &labels[b]);
            }
        }
        debug_assert!((0..n).all(|a| rel[a * n + a]), "relation must be reflexive");
        let mut pairs = Vec::new();
        let mut pair_index = vec![NO_PAIR; n * n];
        for a in 0..n {
            for b in 0..n {
                if rel[a * n + b] {
                    pair_index[a * n + b] = pairs.len() as u32;
                    pairs.push((a, b));
                }
            }
        }
        let lower_covers = (0..n)
            .map(|b| {
                (0..n)
                    .filter(|&a| {
                        a != b
                            && rel[a * n + b]
                            && !(0..n).any(|c| c != a && c != b && rel[a * n + c] && rel[c * n + b])
                    })
                    .collect()
            })
            .collect();
        // Linear extension: repeatedly take the least-labelled minimal element.
        let mut placed = vec![false; n];
        let mut linear_order = Vec::with_capacity(n);
        while linear_order.len() < n {
            let next = (0..n)
                .find(|&b| !placed[b] && (0..n).all(|a| a == b || placed[a] || !rel[a * n + b]))
                .expect("order relation must be acyclic");
            placed[next] = true;
            linear_order.push(next);
        }
        let label_index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        Self {
            labels,
            label_index,
            leq: rel,
            pairs,
            pair_index,
            lower_covers,
            linear_order,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, a: usize) -> &[usize] {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    pub fn index_of(&self, label: &[usize]) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Index of the comparable pair `a ≤ b`.
    pub fn pair(&self, a: usize, b: usize) -> Option<usize> {
        let p = self.pair_index[a * self.len() + b];
        (p != NO_PAIR).then_some(p as usize)
    }

    pub fn lower_covers(&self, b: usize) -> &[usize] {
        &self.lower_covers[b]
    }

    /// A linear extension (every element after all elements below it).
    pub fn linear_order(&self) -> &[usize] {
        &self.linear_order
    }

    /// Covering pairs `(a, b)`: the Hasse diagram edges.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|b| self.lower_covers[b].iter().map(move |&a| (a, b)))
            .collect()
    }

    /// Whether `map` (indexed by the elements of `self`) is monotone into `target`.
    pub fn is_monotone_into(&self, target: &Poset, map: &[usize]) -> bool {
        self.pairs.iter().all(|&(a, b)| target.leq(map[a], map[b]))
    }

    /// The thin category of the poset; morphism ids are pair indices.
    pub fn to_category(&self) -> FiniteCategory {
        let n = self.len();
        let names = self
            .labels
            .iter()
            .map(|l| l.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        let sources = self.pairs.iter().map(|&(a, _)| a as ObjId).collect();
        let targets = self.pairs.iter().map(|&(_, b)| b as ObjId).collect();
        let identities = (0..n).map(|a| self.pair(a, a).unwrap() as MorId).collect();
        let pairs = self.pairs.clone();
        let index = self.pair_index.clone();
        FiniteCategory::from_fn(names, sources, targets, identities, move |g, f| {
            let (a, _) = pairs[f as usize];
            let (_, c) = pairs[g as usize];
            index[a * n + c]
        })
    }

    /// Product poset with componentwise order; labels are concatenated.
    pub fn product(&self, other: &Poset) -> Poset {
        let split = self.labels.first().map_or(0, Vec::len);
        let labels = self
            .labels
            .iter()
            .flat_map(|a| {
                other.labels.iter().map(move |b| {
                    let mut l = a.clone();
                    l.extend(b);
                    l
                })
            })
            .collect();
        let left = self.clone();
        let right = other.clone();
        Poset::from_relation(labels, move |x, y| {
            let (xa, xb) = x.split_at(split);
            let (ya, yb) = y.split_at(split);
            left.leq(left.index_of(xa).unwrap(), left.index_of(ya).unwrap())
                && right.leq(right.index_of(xb).unwrap(), right.index_of(yb).unwrap())
        })
    }
}

/// The ordinal `[n] = {0 < 1 < ... < n}`.
pub fn ordinal_poset(n: usize) -> Poset {
    Poset::from_relation((0..=n).map(|i| vec![i]).collect(), |a, b| a[0] <= b[0])
}

/// The thin category `[n]`.
pub fn poset_category(n: usize) -> FiniteCategory {
    ordinal_poset(n).to_category()
}

fn arrow_labels(n: usize, keep: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    (0..=n)
        .flat_map(|i| (i..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| keep(i, j))
        .map(|(i, j)| vec![i, j])
        .collect()
}

/// `Ar[n]`: pairs `i ≤ j` with `(i, j) ≤ (i', j')` iff `i ≤ i'` and `j ≤ j'`.
pub fn arrow_poset(n: usize) -> Poset {
    Poset::from_relation(arrow_labels(n, |_, _| true), |a, b| a[0] <= b[0] && a[1] <= b[1])
}

/// The full subposet of `Ar[n]` on pairs `(i, j)` with `n − i ≤ j`.
pub fn tilde_arrow_poset(n: usize) -> Poset {
    Poset::from_relation(arrow_labels(n, |i, j| n - i <= j), |a, b| {
        a[0] <= b[0] && a[1] <= b[1]
    })
}

/// `tw[n]`: pairs `i ≤ j` with `(i, j) ≤ (i', j')` iff `i' ≤ i ≤ j ≤ j'`.
pub fn twisted_poset(n: usize) -> Poset {
    Poset::from_relation(arrow_labels(n, |_, _| true), |a, b| b[0] <= a[0] && a[1] <= b[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordinal_counts() {
        assert_eq!(poset_category(0).morphism_count(), 1);
        assert_eq!(poset_category(2).morphism_count(), 6);
        assert_eq!(poset_category(3).morphism_count(), 10);
        poset_category(3).check_laws().unwrap();
    }

    #[test]
    fn arrow_and_tilde_arrow() {
        assert_eq!(arrow_poset(3).len(), 10);
        let t = tilde_arrow_poset(3);
        let labels: Vec<_> = t.labels().to_vec();
        assert_eq!(
            labels,
            vec![vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 2], vec![2, 3], vec![3, 3]]
        );
        assert_eq!(tilde_arrow_poset(1).labels(), &[vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn twisted_one_has_two_nonidentity_arrows() {
        let tw = twisted_poset(1);
        assert_eq!(tw.len(), 3);
        assert_eq!(tw.pair_count() - tw.len(), 2);
        let e00 = tw.index_of(&[0, 0]).unwrap();
        let e01 = tw.index_of(&[0, 1]).unwrap();
        let e11 = tw.index_of(&[1, 1]).unwrap();
        assert!(tw.leq(e00, e01) && tw.leq(e11, e01));
        assert!(!tw.leq(e00, e11));
    }

    #[test]
    fn linear_order_is_an_extension() {
        for p in [arrow_poset(3), tilde_arrow_poset(5), twisted_poset(3)] {
            let pos: Vec<usize> = {
                let mut v = vec![0; p.len()];
                for (k, &a) in p.linear_order().iter().enumerate() {
                    v[a] = k;
                }
                v
            };
            for &(a, b) in p.pairs() {
                assert!(pos[a] <= pos[b]);
            }
        }
    }

    #[test]
    fn product_with_interval() {
        let p = twisted_poset(1).product(&ordinal_poset(1));
        assert_eq!(p.len(), 6);
        assert_eq!(p.pair_count(), 5 * 3);
        p.to_category().check_laws().unwrap();
    }
}
