use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse integer matrix stored by rows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BTreeMap::new(); rows],
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.add(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn add(&mut self, i: usize, j: usize, v: impl Into<BigInt>) {
        assert!(i < self.rows && j < self.cols, "entry out of range");
        let v = v.into();
        if v.is_zero() {
            return;
        }
        let e = self.entries[i].entry(j).or_insert_with(BigInt::zero);
        *e += v;
        if e.is_zero() {
            self.entries[i].remove(&j);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries[i].get(&j).cloned().unwrap_or_default()
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, BigInt> {
        &self.entries[i]
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BTreeMap::is_empty)
    }

    /// The product `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = SparseMatrix::zero(self.rows, other.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (&k, a) in row {
                for (&j, b) in &other.entries[k] {
                    out.add(i, j, a * b);
                }
            }
        }
        out
    }
}

/// The nonzero diagonal of the Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    /// Invariant factors `d_1 | d_2 | ... | d_rank`, all positive.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Smith normal form. Unit pivots are eliminated sparsely first; they
/// cause no coefficient growth. The remaining block is reduced modulo a
/// nonzero maximal minor, which keeps every entry bounded.
pub fn smith_normal_form(m: &SparseMatrix) -> SmithForm {
    let (units, residual) = eliminate_unit_pivots(m);
    let mut diagonal = vec![BigInt::one(); units];
    diagonal.extend(modular_smith(residual));
    SmithForm {
        rank: diagonal.len(),
        invariant_factors: divisibility_chain(diagonal),
    }
}

/// Eliminates ±1 pivots, least fill-in first. Returns their number and
/// the rows left over.
fn eliminate_unit_pivots(m: &SparseMatrix) -> (usize, Vec<BTreeMap<usize, BigInt>>) {
    let mut rows = m.entries.clone();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for (i, row) in rows.iter().enumerate() {
        for &j in row.keys() {
            col_rows[j].insert(i);
        }
    }
    let mut units = 0;
    while let Some((r, c)) = choose_unit_pivot(&rows, &col_rows) {
        let p = rows[r][&c].clone();
        let pivot_row = rows[r].clone();
        let others: Vec<usize> = col_rows[c].iter().copied().filter(|&i| i != r).collect();
        for i in others {
            let q = &rows[i][&c] * &p;
            subtract_row(&mut rows, &mut col_rows, i, &pivot_row, &q);
        }
        // Column c is zero off the pivot, so column operations clear row r
        // without touching any other row.
        for &j in pivot_row.keys() {
            col_rows[j].remove(&r);
        }
        rows[r].clear();
        col_rows[c].clear();
        units += 1;
    }
    rows.retain(|r| !r.is_empty());
    (units, rows)
}

fn choose_unit_pivot(rows: &[BTreeMap<usize, BigInt>], col_rows: &[BTreeSet<usize>]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in rows.iter().enumerate() {
        for (&j, v) in row {
            if !v.abs().is_one() {
                continue;
            }
            let cost = (row.len() - 1) * (col_rows[j].len() - 1);
            if best.is_none_or(|(c, _, _)| cost < c) {
                if cost == 0 {
                    return Some((i, j));
                }
                best = Some((cost, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Nonzero invariant factors of a dense block given by its nonzero rows.
fn modular_smith(rows: Vec<BTreeMap<usize, BigInt>>) -> Vec<BigInt> {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols: Vec<usize> = rows.iter().flat_map(|r| r.keys().copied()).collect::<BTreeSet<_>>().into_iter().collect();
    let at: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let dense: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let mut d = vec![BigInt::zero(); cols.len()];
            for (j, v) in r {
                d[at[j]] = v.clone();
            }
            d
        })
        .collect();
    let (rank, minor) = bareiss_rank_and_minor(dense.clone());
    if rank == 0 {
        return Vec::new();
    }
    let modulus = minor.abs();
    let mut a: Vec<Vec<BigInt>> = dense
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.mod_floor(&modulus)).collect())
        .collect();
    let diagonal = diagonalize_mod(&mut a, &modulus);
    // Over Z/M the diagonal determines gcd(s_i, M) = s_i for i ≤ rank.
    let mut ideals: Vec<BigInt> = diagonal.iter().map(|d| d.gcd(&modulus)).collect();
    ideals.resize(ideals.len().max(rank), modulus.clone());
    let mut chain = divisibility_chain(ideals);
    chain.truncate(rank);
    chain
}

/// Fraction-free elimination with full pivoting: the rank, and the
/// determinant of a nonsingular maximal square submatrix.
fn bareiss_rank_and_minor(mut a: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let (m, n) = (a.len(), a[0].len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for k in 0..m.min(n) {
        let Some((pi, pj)) = (k..m).flat_map(|i| (k..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero()) else {
            break;
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        for i in k + 1..m {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
        rank += 1;
    }
    (rank, prev)
}

/// Diagonalizes over `Z/modulus` with unimodular 2×2 row and column
/// operations; returns the diagonal.
fn diagonalize_mod(a: &mut [Vec<BigInt>], modulus: &BigInt) -> Vec<BigInt> {
    let (m, n) = (a.len(), a[0].len());
    let mut diagonal = Vec::new();
    for k in 0..m.min(n) {
        let Some((pi, pj)) = (k..m).flat_map(|i| (k..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero()) else {
            break;
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        loop {
            let mut changed = false;
            for i in k + 1..m {
                if !a[i][k].is_zero() {
                    combine_rows(a, k, i, k, modulus);
                    changed = true;
                }
            }
            for j in k + 1..n {
                if !a[k][j].is_zero() {
                    combine_cols(a, k, j, k, modulus);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        diagonal.push(a[k][k].clone());
    }
    diagonal
}

/// Bezout coefficients `(g, x, y)` with `x·a + y·b = g = gcd(a, b)`.
fn bezout(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if b.is_multiple_of(a) {
        return (a.clone(), BigInt::one(), BigInt::zero());
    }
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Replaces rows `k`, `i` by a unimodular combination putting
/// `gcd(a[k][c], a[i][c])` at `(k, c)` and zero at `(i, c)`.
fn combine_rows(a: &mut [Vec<BigInt>], k: usize, i: usize, c: usize, modulus: &BigInt) {
    let (p, q) = (a[k][c].clone(), a[i][c].clone());
    let (g, x, y) = bezout(&p, &q);
    let (u, v) = (&q / &g, &p / &g);
    for j in 0..a[k].len() {
        let (s, t) = (a[k][j].clone(), a[i][j].clone());
        a[k][j] = (&x * &s + &y * &t).mod_floor(modulus);
        a[i][j] = (&v * &t - &u * &s).mod_floor(modulus);
    }
}

fn combine_cols(a: &mut [Vec<BigInt>], k: usize, j: usize, r: usize, modulus: &BigInt) {
    let (p, q) = (a[r][k].clone(), a[r][j].clone());
    let (g, x, y) = bezout(&p, &q);
    let (u, v) = (&q / &g, &p / &g);
    for row in a.iter_mut() {
        let (s, t) = (row[k].clone(), row[j].clone());
        row[k] = (&x * &s + &y * &t).mod_floor(modulus);
        row[j] = (&v * &t - &u * &s).mod_floor(modulus);
    }
}

fn subtract_row(
    rows: &mut [BTreeMap<usize, BigInt>],
    col_rows: &mut [BTreeSet<usize>],
    target: usize,
    pivot_row: &BTreeMap<usize, BigInt>,
    q: &BigInt,
) {
    for (&j, v) in pivot_row {
        let e = rows[target].entry(j).or_insert_with(BigInt::zero);
        *e -= q * v;
        if e.is_zero() {
            rows[target].remove(&j);
            col_rows[j].remove(&target);
        } else {
            col_rows[j].insert(target);
        }
    }
}

/// Rewrites a diagonal into invariant factors by replacing pairs with their
/// gcd and lcm.
fn divisibility_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    d.sort();
    let start = d.iter().take_while(|x| x.is_one()).count();
    for i in start..d.len() {
        for j in i + 1..d.len() {
            let (g, l) = (d[i].gcd(&d[j]), d[i].lcm(&d[j]));
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factors(rows: &[Vec<i64>]) -> Vec<i64> {
        let s = smith_normal_form(&SparseMatrix::from_dense(rows));
        s.invariant_factors.iter().map(|d| d.try_into().unwrap()).collect()
    }

    #[test]
    fn two_torsion() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 0]]), vec![2]);
    }

    #[test]
    fn divisibility_order() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 0]]), vec![2, 12]);
    }

    #[test]
    fn boundary_of_triangle() {
        // Edges 01, 02, 12 against vertices 0, 1, 2.
        let d1 = [vec![-1, 1, 0], vec![-1, 0, 1], vec![0, -1, 1]];
        assert_eq!(factors(&d1), vec![1, 1]);
    }

    #[test]
    fn non_unit_pivots_reduce() {
        assert_eq!(factors(&[vec![6, 4], vec![4, 6]]), vec![2, 10]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
    }

    /// Determinantal divisors of a 2×2 matrix: gcd of entries and |det|.
    fn oracle_2x2(a: i64, b: i64, c: i64, d: i64) -> Vec<i64> {
        let g = a.gcd(&b).gcd(&c).gcd(&d);
        let det = (a * d - b * c).abs();
        match (g, det) {
            (0, _) => vec![],
            (g, 0) => vec![g],
            (g, det) => vec![g, det / g],
        }
    }

    fn minors(m: &[Vec<i64>], k: usize) -> Vec<i64> {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            (k - 1..n).flat_map(|last| subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })).collect()
        }
        fn det(a: Vec<Vec<i64>>) -> i64 {
            if a.is_empty() {
                return 1;
            }
            (0..a.len())
                .map(|j| {
                    let sub = a[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
                    if j % 2 == 0 { a[0][j] * det(sub) } else { -a[0][j] * det(sub) }
                })
                .sum()
        }
        let mut out = Vec::new();
        for rs in subsets(m.len(), k) {
            for cs in subsets(m[0].len(), k) {
                out.push(det(rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect()));
            }
        }
        out
    }

    /// Invariant factors as quotients of successive gcds of k×k minors.
    fn oracle(m: &[Vec<i64>]) -> Vec<i64> {
        let mut out = Vec::new();
        let mut prev = 1;
        for k in 1..=m.len().min(m[0].len()) {
            let d = minors(m, k).into_iter().fold(0i64, |g, x| g.gcd(&x));
            if d == 0 {
                break;
            }
            out.push(d / prev);
            prev = d;
        }
        out
    }

    fn seeded(rows: usize, cols: usize, scale: i64, seed: u64) -> Vec<Vec<i64>> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..rows)
            .map(|_| (0..cols).map(|_| if rng.gen_bool(0.05) { scale * rng.gen_range(-3..4) } else { 0 }).collect())
            .collect()
    }

    #[test]
    fn large_sparse_matrix_stays_tractable() {
        let a = factors(&seeded(120, 100, 1, 1));
        let b = factors(&seeded(120, 100, 6, 1));
        assert!(a.len() > 50);
        assert_eq!(b, a.iter().map(|x| 6 * x).collect::<Vec<_>>());
    }

    proptest! {
        #[test]
        fn matches_minor_gcds(entries in proptest::collection::vec(prop::sample::select(vec![0i64, 0, 2, -2, 3, -4, 6, 9, -12, 1]), 12)) {
            let m: Vec<Vec<i64>> = entries.chunks(4).map(<[i64]>::to_vec).collect();
            prop_assert_eq!(factors(&m), oracle(&m));
        }

        #[test]
        fn matches_determinantal_divisors(a in -9i64..10, b in -9i64..10, c in -9i64..10, d in -9i64..10) {
            prop_assert_eq!(factors(&[vec![a, b], vec![c, d]]), oracle_2x2(a, b, c, d));
        }

        #[test]
        fn rank_is_invariant_under_transpose(entries in proptest::collection::vec(-3i64..4, 12)) {
            let m: Vec<Vec<i64>> = entries.chunks(4).map(<[i64]>::to_vec).collect();
            let t: Vec<Vec<i64>> = (0..4).map(|j| m.iter().map(|r| r[j]).collect()).collect();
            prop_assert_eq!(factors(&m), factors(&t));
        }
    }
}
