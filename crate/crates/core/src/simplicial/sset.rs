use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::ordinal::OrdinalMap;
use crate::error::{Error, Result};

/// A simplicial set known up to a truncation level `D`.
///
/// Simplices at level `k` are numbered `0..count(k)`. Face and degeneracy
/// tables are stored explicitly; the action of an arbitrary ordinal map is
/// obtained by factoring it into generators. Semi-simplicial sets carry no
/// degeneracy tables and only admit injective operators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSimplicialSet {
    counts: Vec<usize>,
    /// `faces[k][i][x]` is `d_i x` for `x` at level `k >= 1`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<u32>>>,
    /// `degeneracies[k][i][x]` is `s_i x` for `x` at level `k < D`.
    degeneracies: Vec<Vec<Vec<u32>>>,
    semi: bool,
}

impl TruncatedSimplicialSet {
    /// Assembles a simplicial set from counts and generator tables.
    ///
    /// Table shapes are validated; the simplicial identities are not (see
    /// [`check_simplicial_identities`](super::identities::check_simplicial_identities)).
    pub fn from_tables(
        counts: Vec<usize>,
        faces: Vec<Vec<Vec<u32>>>,
        degeneracies: Option<Vec<Vec<Vec<u32>>>>,
    ) -> Result<Self> {
        let depth = counts
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Precondition("a simplicial set needs level 0".into()))?;
        if faces.len() != depth + 1 || !faces[0].is_empty() {
            return Err(Error::Precondition("face table shape mismatch".into()));
        }
        for k in 1..=depth {
            if faces[k].len() != k + 1 {
                return Err(Error::Precondition(format!("level {k} needs {} faces", k + 1)));
            }
            for table in &faces[k] {
                if table.len() != counts[k] || table.iter().any(|&y| y as usize >= counts[k - 1]) {
                    return Err(Error::Precondition(format!("bad face table at level {k}")));
                }
            }
        }
        let semi = degeneracies.is_none();
        let degeneracies = degeneracies.unwrap_or_default();
        if !semi {
            if degeneracies.len() != depth {
                return Err(Error::Precondition("degeneracy table shape mismatch".into()));
            }
            for (k, level) in degeneracies.iter().enumerate() {
                if level.len() != k + 1 {
                    return Err(Error::Precondition(format!("level {k} needs {} degeneracies", k + 1)));
                }
                for table in level {
                    if table.len() != counts[k] || table.iter().any(|&y| y as usize >= counts[k + 1]) {
                        return Err(Error::Precondition(format!("bad degeneracy table at level {k}")));
                    }
                }
            }
        }
        Ok(Self {
            counts,
            faces,
            degeneracies,
            semi,
        })
    }

    /// Builds the tables by evaluating an action on generators.
    ///
    /// `act(α, x)` must return the image of simplex `x` (at level `α.target()`)
    /// under `α`, for cofaces and codegeneracies.
    pub fn from_action(
        counts: Vec<usize>,
        semi: bool,
        mut act: impl FnMut(&OrdinalMap, usize) -> usize,
    ) -> Result<Self> {
        let depth = counts.len() - 1;
        let mut faces = vec![Vec::new()];
        for k in 1..=depth {
            let level = (0..=k)
                .map(|i| {
                    let d = OrdinalMap::coface(k, i);
                    (0..counts[k]).map(|x| act(&d, x) as u32).collect()
                })
                .collect();
            faces.push(level);
        }
        let degeneracies = if semi {
            None
        } else {
            Some(
                (0..depth)
                    .map(|k| {
                        (0..=k)
                            .map(|i| {
                                let s = OrdinalMap::codegeneracy(k, i);
                                (0..counts[k]).map(|x| act(&s, x) as u32).collect()
                            })
                            .collect()
                    })
                    .collect(),
            )
        };
        Self::from_tables(counts, faces, degeneracies)
    }

    pub fn depth(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, level: usize) -> usize {
        self.counts[level]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn is_semi(&self) -> bool {
        self.semi
    }

    pub fn face(&self, level: usize, i: usize, x: usize) -> usize {
        self.faces[level][i][x] as usize
    }

    pub fn degeneracy(&self, level: usize, i: usize, x: usize) -> usize {
        self.degeneracies[level][i][x] as usize
    }

    #[cfg(test)]
    pub(crate) fn face_table_mut(&mut self, level: usize, i: usize) -> &mut Vec<u32> {
        &mut self.faces[level][i]
    }

    /// The action `X(α) : X_n -> X_m` of `α : [m] -> [n]` on the simplex `x ∈ X_n`.
    pub fn act(&self, alpha: &OrdinalMap, x: usize) -> Result<usize> {
        let depth = self.depth();
        for level in [alpha.source(), alpha.target()] {
            if level > depth {
                return Err(Error::Truncation {
                    required: level,
                    available: depth,
                });
            }
        }
        let (faces, degeneracies) = alpha.factor();
        if self.semi && !degeneracies.is_empty() {
            return Err(Error::Precondition(format!(
                "semi-simplicial set has no operator for non-injective {alpha}"
            )));
        }
        let mut level = alpha.target();
        let mut y = x;
        for i in faces {
            y = self.face(level, i, y);
            level -= 1;
        }
        for j in degeneracies {
            y = self.degeneracy(level, j, y);
            level += 1;
        }
        Ok(y)
    }

    /// Whether `x` at `level` lies in the image of some degeneracy.
    ///
    /// Uses `x = s_j d_j x` for some `j`, which characterizes degenerate
    /// simplices without a full factorization.
    pub fn is_degenerate(&self, level: usize, x: usize) -> bool {
        if self.semi || level == 0 {
            return false;
        }
        (0..level).any(|j| self.degeneracy(level - 1, j, self.face(level, j, x)) == x)
    }

    pub fn nondegenerate(&self, level: usize) -> Vec<usize> {
        (0..self.count(level))
            .filter(|&x| !self.is_degenerate(level, x))
            .collect()
    }

    /// Restricts to levels `0..=depth`.
    pub fn truncate(&self, depth: usize) -> Result<Self> {
        if depth > self.depth() {
            return Err(Error::Truncation {
                required: depth,
                available: self.depth(),
            });
        }
        Ok(Self {
            counts: self.counts[..=depth].to_vec(),
            faces: self.faces[..=depth].to_vec(),
            degeneracies: if self.semi {
                Vec::new()
            } else {
                self.degeneracies[..depth].to_vec()
            },
            semi: self.semi,
        })
    }

    /// Canonical JSON document: sorted keys, simplices in stored order.
    pub fn to_canonical_json(&self) -> Value {
        json!({
            "counts": self.counts,
            "degeneracies": if self.semi { Value::Null } else { json!(self.degeneracies) },
            "depth": self.depth(),
            "faces": self.faces,
            "semi": self.semi,
        })
    }
}

/// A levelwise map between truncated simplicial sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialMap {
    components: Vec<Vec<u32>>,
}

impl SimplicialMap {
    pub fn new(components: Vec<Vec<u32>>) -> Self {
        Self { components }
    }

    pub fn identity(x: &TruncatedSimplicialSet) -> Self {
        Self::new(
            x.counts()
                .iter()
                .map(|&c| (0..c as u32).collect())
                .collect(),
        )
    }

    pub fn depth(&self) -> usize {
        self.components.len() - 1
    }

    pub fn apply(&self, level: usize, x: usize) -> usize {
        self.components[level][x] as usize
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn compose(&self, first: &SimplicialMap) -> SimplicialMap {
        let depth = self.depth().min(first.depth());
        SimplicialMap::new(
            (0..=depth)
                .map(|k| first.components[k].iter().map(|&x| self.components[k][x as usize]).collect())
                .collect(),
        )
    }

    pub fn truncate(&self, depth: usize) -> SimplicialMap {
        SimplicialMap::new(self.components[..=depth].to_vec())
    }

    /// Checks that the map commutes with all generators up to the common truncation.
    pub fn check_commutes(
        &self,
        source: &TruncatedSimplicialSet,
        target: &TruncatedSimplicialSet,
    ) -> std::result::Result<(), String> {
        let depth = self.depth().min(source.depth()).min(target.depth());
        for k in 0..=depth {
            if self.components[k].len() != source.count(k) {
                return Err(format!("component at level {k} has wrong length"));
            }
            if self.components[k].iter().any(|&y| y as usize >= target.count(k)) {
                return Err(format!("component at level {k} leaves the target"));
            }
        }
        for k in 1..=depth {
            for i in 0..=k {
                for x in 0..source.count(k) {
                    let lhs = self.apply(k - 1, source.face(k, i, x));
                    let rhs = target.face(k, i, self.apply(k, x));
                    if lhs != rhs {
                        return Err(format!("d_{i} fails at level {k} on simplex {x}"));
                    }
                }
            }
        }
        if !source.is_semi() && !target.is_semi() {
            for k in 0..depth {
                for i in 0..=k {
                    for x in 0..source.count(k) {
                        let lhs = self.apply(k + 1, source.degeneracy(k, i, x));
                        let rhs = target.degeneracy(k, i, self.apply(k, x));
                        if lhs != rhs {
                            return Err(format!("s_{i} fails at level {k} on simplex {x}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_canonical_json(&self) -> Value {
        json!({ "components": self.components, "depth": self.depth() })
    }
}

/// The standard simplex `Δ^n` truncated at `depth`; `k`-simplices are the
/// monotone maps `[k] -> [n]` in lexicographic order.
pub fn standard_simplex(n: usize, depth: usize) -> TruncatedSimplicialSet {
    simplex_subset(n, depth, |_| true)
}

/// The boundary `∂Δ^n`: the non-surjective monotone maps into `[n]`.
pub fn simplex_boundary(n: usize, depth: usize) -> TruncatedSimplicialSet {
    simplex_subset(n, depth, |f| !f.is_surjective())
}

fn simplex_subset(
    n: usize,
    depth: usize,
    keep: impl Fn(&OrdinalMap) -> bool,
) -> TruncatedSimplicialSet {
    use std::collections::HashMap;
    let levels: Vec<Vec<OrdinalMap>> = (0..=depth)
        .map(|k| OrdinalMap::all(k, n).into_iter().filter(|f| keep(f)).collect())
        .collect();
    let index: Vec<HashMap<OrdinalMap, usize>> = levels
        .iter()
        .map(|l| l.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect())
        .collect();
    let counts = levels.iter().map(Vec::len).collect();
    TruncatedSimplicialSet::from_action(counts, false, |alpha, x| {
        let f = levels[alpha.target()][x].compose(alpha).expect("composable");
        index[alpha.source()][&f]
    })
    .expect("standard simplex tables are well formed")
}

/// The simplicial map `Δ^m -> Δ^n` induced by an ordinal map.
pub fn simplex_map(
    alpha: &OrdinalMap,
    source: &TruncatedSimplicialSet,
    target: &TruncatedSimplicialSet,
) -> SimplicialMap {
    let depth = source.depth().min(target.depth());
    let components = (0..=depth)
        .map(|k| {
            let src: Vec<OrdinalMap> = OrdinalMap::all(k, alpha.source());
            let tgt: Vec<OrdinalMap> = OrdinalMap::all(k, alpha.target());
            src.iter()
                .map(|f| {
                    let g = alpha.compose(f).unwrap();
                    tgt.iter().position(|h| *h == g).unwrap() as u32
                })
                .collect()
        })
        .collect();
    SimplicialMap::new(components)
}
