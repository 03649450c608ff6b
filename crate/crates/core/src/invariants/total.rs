use serde::{Deserialize, Serialize};

use super::chain::{ChainComplex, HomologyResult};
use super::snf::SparseMatrix;
use crate::error::{Error, Result};
use crate::simplicial::{BisimplicialSetTruncated, TruncatedSimplicialSet};

/// The diagonal `k ↦ B_{k,k}`.
pub fn diagonal(b: &BisimplicialSetTruncated) -> Result<TruncatedSimplicialSet> {
    b.diagonal()
}

fn horizontally_degenerate(b: &BisimplicialSetTruncated, p: usize, q: usize, x: usize) -> bool {
    q > 0
        && (0..q).any(|j| b.h_degeneracy(p, q - 1, j, b.h_face(p, q, j, x)) == Some(x))
}

/// The total complex of the bi-normalized double complex, through total
/// degree `top`, with `D = d^h + (−1)^q d^v`.
pub fn total_complex(b: &BisimplicialSetTruncated, top: usize) -> Result<ChainComplex> {
    let available = b.p_depth().min(b.q_depth());
    if top > available {
        return Err(Error::Truncation { required: top, available });
    }
    // blocks[n] lists (p, q, basis, position) for p + q = n.
    let mut blocks: Vec<Vec<(usize, usize, Vec<Option<usize>>)>> = Vec::new();
    let mut ranks = Vec::new();
    for n in 0..=top {
        let mut offset = 0;
        let mut block = Vec::new();
        for p in 0..=n {
            let q = n - p;
            let column = b.column(q);
            let position = (0..b.count(p, q))
                .map(|x| {
                    (!column.is_degenerate(p, x) && !horizontally_degenerate(b, p, q, x)).then(|| {
                        offset += 1;
                        offset - 1
                    })
                })
                .collect();
            block.push((p, q, position));
        }
        blocks.push(block);
        ranks.push(offset);
    }
    let sign = |i: usize| if i % 2 == 0 { 1 } else { -1 };
    let mut boundaries = vec![SparseMatrix::zero(ranks[0], 0)];
    for n in 1..=top {
        let mut m = SparseMatrix::zero(ranks[n], ranks[n - 1]);
        let below = |p: usize| blocks[n - 1].iter().find(|blk| blk.0 == p).map(|blk| &blk.2);
        for (p, q, position) in &blocks[n] {
            let (p, q) = (*p, *q);
            for (x, row) in position.iter().enumerate() {
                let Some(row) = *row else { continue };
                if q > 0 {
                    let target = below(p).unwrap();
                    for i in 0..=q {
                        if let Some(col) = target[b.h_face(p, q, i, x)] {
                            m.add(row, col, sign(i));
                        }
                    }
                }
                if p > 0 {
                    let target = below(p - 1).unwrap();
                    for j in 0..=p {
                        if let Some(col) = target[b.v_face(p, q, j, x)] {
                            m.add(row, col, sign(q) * sign(j));
                        }
                    }
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex::new(ranks, boundaries)
}

/// Homology of the total complex through `top_degree`.
pub fn total_homology(b: &BisimplicialSetTruncated, top_degree: usize) -> Result<HomologyResult> {
    total_complex(b, top_degree + 1)?.homology(top_degree)
}

/// Agreement of two homology computations degree by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub degrees: usize,
    pub disagreements: Vec<usize>,
}

impl StabilityReport {
    pub fn stable(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares two results on their common range, e.g. the same invariant at
/// two instance bounds.
pub fn compare_stability(a: &HomologyResult, b: &HomologyResult) -> StabilityReport {
    let degrees = a.groups.len().min(b.groups.len());
    StabilityReport {
        degrees,
        disagreements: (0..degrees).filter(|&q| a.groups[q] != b.groups[q]).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::chain::homology;
    use crate::simplicial::{simplex_boundary, standard_simplex, SimplicialMap};

    /// `X ⊠ Δ^0`, whose rows are constant and whose columns are `X`.
    fn constant_rows(x: &TruncatedSimplicialSet, q_depth: usize) -> BisimplicialSetTruncated {
        let columns = vec![x.clone(); q_depth + 1];
        let id = SimplicialMap::identity(x);
        let faces = (0..=q_depth).map(|q| if q == 0 { Vec::new() } else { vec![id.clone(); q + 1] }).collect();
        let degeneracies = (0..q_depth).map(|q| vec![id.clone(); q + 1]).collect();
        BisimplicialSetTruncated::from_columns(columns, faces, Some(degeneracies)).unwrap()
    }

    #[test]
    fn total_agrees_with_diagonal() {
        for x in [simplex_boundary(2, 3), standard_simplex(2, 3), simplex_boundary(3, 3)] {
            let b = constant_rows(&x, 3);
            let t = total_homology(&b, 2).unwrap();
            let d = homology(&diagonal(&b).unwrap(), 2).unwrap();
            assert_eq!(t, d);
            assert!(compare_stability(&t, &homology(&x, 2).unwrap()).stable());
        }
    }

    #[test]
    fn total_complex_squares_to_zero() {
        let b = constant_rows(&simplex_boundary(2, 3), 3);
        total_complex(&b, 3).unwrap().check_square_zero().unwrap();
    }
}
