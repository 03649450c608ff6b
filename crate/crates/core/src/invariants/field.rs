use serde::{Deserialize, Serialize};

use super::chain::{bases, normalized_chains, ChainComplex};
use crate::error::{Error, Result};
use crate::simplicial::{SimplicialMap, TruncatedSimplicialSet};

/// Rank data of `f_* : H_q(X; F_p) -> H_q(Y; F_p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedHomology {
    pub degree: usize,
    pub prime: u64,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl InducedHomology {
    pub fn is_iso(&self) -> bool {
        self.source_dim == self.target_dim && self.rank == self.target_dim
    }
}

fn reduce(v: &num_bigint::BigInt, p: u64) -> u64 {
    let r = v % num_bigint::BigInt::from(p);
    let r: i64 = r.try_into().expect("residue fits");
    r.rem_euclid(p as i64) as u64
}

fn dense(c: &ChainComplex, q: usize, p: u64) -> Vec<Vec<u64>> {
    let m = c.boundary(q);
    (0..m.rows())
        .map(|i| {
            let mut row = vec![0; m.cols()];
            for (&j, v) in m.row(i) {
                row[j] = reduce(v, p);
            }
            row
        })
        .collect()
}

fn inverse(a: u64, p: u64) -> u64 {
    let (mut r, mut e, mut b) = (1u128, p as u128 - 2, a as u128);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u128;
        }
        b = b * b % p as u128;
        e >>= 1;
    }
    r as u64
}

/// Row-reduces on the first `width` columns; returns the rank. Pivot rows
/// come first, the remaining rows vanish on those columns.
fn echelon(rows: &mut [Vec<u64>], width: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..width {
        let Some(k) = (rank..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(rank, k);
        let inv = inverse(rows[rank][c], p);
        for v in rows[rank].iter_mut() {
            *v = (*v as u128 * inv as u128 % p as u128) as u64;
        }
        let pivot = rows[rank].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != rank && row[c] != 0 {
                let factor = row[c] as u128;
                for (v, &a) in row.iter_mut().zip(&pivot) {
                    *v = ((*v as u128 + (p as u128 - factor) * a as u128) % p as u128) as u64;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of `{v : v ∂ = 0}` for a boundary matrix stored by rows.
fn left_kernel(m: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut rows: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    let rank = echelon(&mut rows, cols, p);
    rows[rank..].iter().map(|r| r[cols..].to_vec()).collect()
}

/// `f_*` on `H_degree(−; F_p)`, computed by linear algebra over `F_p`
/// independently of the integral Smith form.
pub fn induced_on_homology(
    f: &SimplicialMap,
    x: &TruncatedSimplicialSet,
    y: &TruncatedSimplicialSet,
    degree: usize,
    prime: u64,
) -> Result<InducedHomology> {
    let available = x.depth().min(y.depth()).min(f.depth());
    if degree + 1 > available {
        return Err(Error::Truncation {
            required: degree + 1,
            available,
        });
    }
    let (cx, cy) = (normalized_chains(x, degree + 1)?, normalized_chains(y, degree + 1)?);
    let (bx, by) = (bases(x, degree), bases(y, degree));
    let kernel = left_kernel(&dense(&cx, degree, prime), cx.boundary(degree).cols(), prime);
    let ny = cy.ranks()[degree];
    let mut boundaries = dense(&cy, degree + 1, prime);
    let b_rank = echelon(&mut boundaries.clone(), ny, prime);
    let target_dim = left_kernel(&dense(&cy, degree, prime), cy.boundary(degree).cols(), prime).len() - b_rank;
    let images = kernel.iter().map(|v| {
        let mut image = vec![0u64; ny];
        for (k, &s) in bx[degree].simplices.iter().enumerate() {
            if v[k] != 0 {
                if let Some(col) = by[degree].position[f.apply(degree, s)] {
                    image[col] = (image[col] + v[k]) % prime;
                }
            }
        }
        image
    });
    let source_dim = kernel.len() - echelon(&mut dense(&cx, degree + 1, prime), cx.ranks()[degree], prime);
    boundaries.extend(images);
    let rank = echelon(&mut boundaries, ny, prime) - b_rank;
    Ok(InducedHomology {
        degree,
        prime,
        source_dim,
        target_dim,
        rank,
    })
}
