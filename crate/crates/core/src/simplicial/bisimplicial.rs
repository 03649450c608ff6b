use super::identities::check_simplicial_identities;
use super::sset::{SimplicialMap, TruncatedSimplicialSet};
use crate::error::{Error, Result};

/// A bisimplicial set truncated at `(P, Q)`.
///
/// Stored as its columns: for each `q ≤ Q` the vertical simplicial set
/// `B_{•,q}` (truncated at `P`), together with the horizontal face and
/// degeneracy maps between neighbouring columns. A column-semi-simplicial
/// object has no horizontal degeneracies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisimplicialSetTruncated {
    columns: Vec<TruncatedSimplicialSet>,
    /// `h_faces[q][i]` is `d^h_i : B_{•,q} -> B_{•,q−1}`; `h_faces[0]` is empty.
    h_faces: Vec<Vec<SimplicialMap>>,
    /// `h_degeneracies[q][i]` is `s^h_i : B_{•,q} -> B_{•,q+1}`.
    h_degeneracies: Option<Vec<Vec<SimplicialMap>>>,
}

impl BisimplicialSetTruncated {
    pub fn from_columns(
        columns: Vec<TruncatedSimplicialSet>,
        h_faces: Vec<Vec<SimplicialMap>>,
        h_degeneracies: Option<Vec<Vec<SimplicialMap>>>,
    ) -> Result<Self> {
        let q = columns
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Precondition("need at least one column".into()))?;
        let p = columns[0].depth();
        if columns.iter().any(|c| c.depth() != p) {
            return Err(Error::Precondition("columns have different truncations".into()));
        }
        if h_faces.len() != q + 1 || (1..=q).any(|k| h_faces[k].len() != k + 1) {
            return Err(Error::Precondition("horizontal face shape mismatch".into()));
        }
        if let Some(s) = &h_degeneracies {
            if s.len() != q || (0..q).any(|k| s[k].len() != k + 1) {
                return Err(Error::Precondition("horizontal degeneracy shape mismatch".into()));
            }
        }
        Ok(Self {
            columns,
            h_faces,
            h_degeneracies,
        })
    }

    pub fn p_depth(&self) -> usize {
        self.columns[0].depth()
    }

    pub fn q_depth(&self) -> usize {
        self.columns.len() - 1
    }

    pub fn count(&self, p: usize, q: usize) -> usize {
        self.columns[q].count(p)
    }

    pub fn column(&self, q: usize) -> &TruncatedSimplicialSet {
        &self.columns[q]
    }

    pub fn is_horizontally_semi(&self) -> bool {
        self.h_degeneracies.is_none()
    }

    pub fn h_face(&self, p: usize, q: usize, i: usize, x: usize) -> usize {
        self.h_faces[q][i].apply(p, x)
    }

    pub fn h_degeneracy(&self, p: usize, q: usize, i: usize, x: usize) -> Option<usize> {
        self.h_degeneracies.as_ref().map(|s| s[q][i].apply(p, x))
    }

    pub fn v_face(&self, p: usize, q: usize, i: usize, x: usize) -> usize {
        self.columns[q].face(p, i, x)
    }

    /// The horizontal simplicial set `B_{p,•}`.
    pub fn row(&self, p: usize) -> Result<TruncatedSimplicialSet> {
        let q = self.q_depth();
        let counts = (0..=q).map(|k| self.count(p, k)).collect();
        let faces = (0..=q)
            .map(|k| {
                if k == 0 {
                    Vec::new()
                } else {
                    self.h_faces[k].iter().map(|m| m.components()[p].clone()).collect()
                }
            })
            .collect();
        let degeneracies = self.h_degeneracies.as_ref().map(|s| {
            s.iter()
                .map(|level| level.iter().map(|m| m.components()[p].clone()).collect())
                .collect()
        });
        TruncatedSimplicialSet::from_tables(counts, faces, degeneracies)
    }

    /// Verifies both directions separately and that horizontal maps commute
    /// with the vertical operators.
    pub fn check(&self) -> std::result::Result<(), String> {
        for (q, c) in self.columns.iter().enumerate() {
            let r = check_simplicial_identities(c);
            if !r.passed() {
                return Err(format!("column {q}: {:?}", r.violations[0]));
            }
        }
        for p in 0..=self.p_depth() {
            let row = self.row(p).map_err(|e| e.to_string())?;
            let r = check_simplicial_identities(&row);
            if !r.passed() {
                return Err(format!("row {p}: {:?}", r.violations[0]));
            }
        }
        for q in 1..=self.q_depth() {
            for (i, m) in self.h_faces[q].iter().enumerate() {
                m.check_commutes(&self.columns[q], &self.columns[q - 1])
                    .map_err(|e| format!("horizontal d_{i} at column {q}: {e}"))?;
            }
        }
        if let Some(s) = &self.h_degeneracies {
            for (q, level) in s.iter().enumerate() {
                for (i, m) in level.iter().enumerate() {
                    m.check_commutes(&self.columns[q], &self.columns[q + 1])
                        .map_err(|e| format!("horizontal s_{i} at column {q}: {e}"))?;
                }
            }
        }
        Ok(())
    }

    /// The diagonal `k ↦ B_{k,k}`, truncated at `min(P, Q)`.
    pub fn diagonal(&self) -> Result<TruncatedSimplicialSet> {
        let d = self.p_depth().min(self.q_depth());
        let counts = (0..=d).map(|k| self.count(k, k)).collect();
        let faces = (0..=d)
            .map(|k| {
                if k == 0 {
                    return Vec::new();
                }
                (0..=k)
                    .map(|i| {
                        (0..self.count(k, k))
                            .map(|x| {
                                let v = self.columns[k].face(k, i, x);
                                self.h_faces[k][i].apply(k - 1, v) as u32
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let degeneracies = match (&self.h_degeneracies, self.columns[0].is_semi()) {
            (Some(s), false) => Some(
                (0..d)
                    .map(|k| {
                        (0..=k)
                            .map(|i| {
                                (0..self.count(k, k))
                                    .map(|x| {
                                        let v = self.columns[k].degeneracy(k, i, x);
                                        s[k][i].apply(k + 1, v) as u32
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect(),
            ),
            _ => None,
        };
        TruncatedSimplicialSet::from_tables(counts, faces, degeneracies)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{simplex_boundary, standard_simplex};

    /// The external product `X ⊠ Y` with `(X ⊠ Y)_{p,q} = X_p × Y_q`.
    pub(crate) fn external_product(x: &TruncatedSimplicialSet, y: &TruncatedSimplicialSet) -> BisimplicialSetTruncated {
        let columns: Vec<TruncatedSimplicialSet> = (0..=y.depth())
            .map(|q| {
                let n = y.count(q);
                let counts = x.counts().iter().map(|c| c * n).collect();
                TruncatedSimplicialSet::from_action(counts, false, |a, s| {
                    x.act(a, s / n).unwrap() * n + s % n
                })
                .unwrap()
            })
            .collect();
        let map = |q: usize, to: usize, g: &dyn Fn(usize) -> usize| {
            let (n, m) = (y.count(q), y.count(to));
            SimplicialMap::new(
                (0..=x.depth())
                    .map(|p| (0..x.count(p) * n).map(|s| ((s / n) * m + g(s % n)) as u32).collect())
                    .collect(),
            )
        };
        let h_faces = (0..=y.depth())
            .map(|q| {
                if q == 0 {
                    Vec::new()
                } else {
                    (0..=q).map(|i| map(q, q - 1, &|t| y.face(q, i, t))).collect()
                }
            })
            .collect();
        let h_degs = (0..y.depth())
            .map(|q| (0..=q).map(|i| map(q, q + 1, &|t| y.degeneracy(q, i, t))).collect())
            .collect();
        BisimplicialSetTruncated::from_columns(columns, h_faces, Some(h_degs)).unwrap()
    }

    #[test]
    fn point_diagonal_is_point() {
        let p = standard_simplex(0, 3);
        let b = external_product(&p, &p);
        b.check().unwrap();
        assert_eq!(b.diagonal().unwrap().counts(), &[1, 1, 1, 1]);
    }

    #[test]
    fn diagonal_of_product_satisfies_identities() {
        let (x, y) = (standard_simplex(1, 3), simplex_boundary(2, 3));
        let b = external_product(&x, &y);
        b.check().unwrap();
        let diag = b.diagonal().unwrap();
        assert!(check_simplicial_identities(&diag).passed());
        for k in 0..=3 {
            assert_eq!(diag.count(k), x.count(k) * y.count(k));
        }
    }
}
