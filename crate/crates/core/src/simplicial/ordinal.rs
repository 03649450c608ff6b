use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monotone map `[m] -> [n]` between finite ordinals.
///
/// Stored as the value list `(f(0), ..., f(m))` together with the target `n`;
/// the source is implied by the length of the list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrdinalMap {
    target: usize,
    values: Vec<usize>,
}

impl OrdinalMap {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidOrdinalMap("empty value list".into()));
        }
        if let Some(v) = values.iter().find(|&&v| v > target) {
            return Err(Error::InvalidOrdinalMap(format!(
                "value {v} outside [{target}]"
            )));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidOrdinalMap(format!(
                "{values:?} is not weakly increasing"
            )));
        }
        Ok(Self { target, values })
    }

    pub(crate) fn new_unchecked(target: usize, values: Vec<usize>) -> Self {
        debug_assert!(Self::new(target, values.clone()).is_ok());
        Self { target, values }
    }

    pub fn identity(n: usize) -> Self {
        Self::new_unchecked(n, (0..=n).collect())
    }

    /// The coface `δ^i : [n-1] -> [n]` that skips `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n, "coface δ^{i} into [{n}] is undefined");
        let values = (0..n).map(|k| if k < i { k } else { k + 1 }).collect();
        Self::new_unchecked(n, values)
    }

    /// The codegeneracy `σ^i : [n+1] -> [n]` that hits `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n, "codegeneracy σ^{i} onto [{n}] is undefined");
        let values = (0..=n + 1).map(|k| if k <= i { k } else { k - 1 }).collect();
        Self::new_unchecked(n, values)
    }

    pub fn constant(source: usize, target: usize, value: usize) -> Self {
        assert!(value <= target);
        Self::new_unchecked(target, vec![value; source + 1])
    }

    /// Inclusion `[n] -> [2n+1]` onto the last `n+1` elements.
    pub fn last_block_inclusion(n: usize) -> Self {
        Self::new_unchecked(2 * n + 1, (n + 1..=2 * n + 1).collect())
    }

    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, k: usize) -> usize {
        self.values[k]
    }

    pub fn is_identity(&self) -> bool {
        self.target == self.source() && self.values.iter().enumerate().all(|(k, &v)| k == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.target
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `g.compose(f)` is `g ∘ f`.
    pub fn compose(&self, f: &OrdinalMap) -> Result<OrdinalMap> {
        if f.target != self.source() {
            return Err(Error::Composition {
                left_target: f.target,
                right_source: self.source(),
            });
        }
        Ok(Self::new_unchecked(
            self.target,
            f.values.iter().map(|&v| self.values[v]).collect(),
        ))
    }

    /// The conjugate `k ↦ n − α(m − k)` under the order-reversing involutions.
    pub fn op(&self) -> OrdinalMap {
        let m = self.source();
        let n = self.target;
        Self::new_unchecked(n, (0..=m).map(|k| n - self.values[m - k]).collect())
    }

    /// Ordinal sum `self ∗ other : [m + m' + 1] -> [n + n' + 1]`.
    pub fn ordinal_sum(&self, other: &OrdinalMap) -> OrdinalMap {
        let shift = self.target + 1;
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|&v| v + shift));
        Self::new_unchecked(self.target + other.target + 1, values)
    }

    /// The edgewise subdivision functor on morphisms: `α ↦ α^op ∗ α`.
    pub fn subdivide(&self) -> OrdinalMap {
        self.op().ordinal_sum(self)
    }

    /// Decomposes `self` as a surjection followed by an injection and returns
    /// the generator indices in the order a simplicial operator applies them:
    /// first the faces (descending missed values), then the degeneracies
    /// (ascending repeated positions).
    pub fn factor(&self) -> (Vec<usize>, Vec<usize>) {
        let mut image = vec![false; self.target + 1];
        for &v in &self.values {
            image[v] = true;
        }
        let faces: Vec<usize> = (0..=self.target).rev().filter(|&v| !image[v]).collect();
        let degeneracies: Vec<usize> = self
            .values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == w[1])
            .map(|(j, _)| j)
            .collect();
        (faces, degeneracies)
    }

    /// All monotone maps `[m] -> [n]` in lexicographic order of their values.
    pub fn all(m: usize, n: usize) -> Vec<OrdinalMap> {
        let mut out = Vec::new();
        let mut values = vec![0usize; m + 1];
        fn rec(pos: usize, lo: usize, n: usize, values: &mut Vec<usize>, out: &mut Vec<OrdinalMap>) {
            if pos == values.len() {
                out.push(OrdinalMap {
                    target: n,
                    values: values.clone(),
                });
                return;
            }
            for v in lo..=n {
                values[pos] = v;
                rec(pos + 1, v, n, values, out);
            }
        }
        rec(0, 0, n, &mut values, &mut out);
        out
    }
}

impl fmt::Display for OrdinalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]→[{}]:", self.source(), self.target)?;
        for (k, v) in self.values.iter().enumerate() {
            write!(f, " {k}↦{v}")?;
        }
        Ok(())
    }
}
