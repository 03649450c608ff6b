use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::snf::{smith_normal_form, SparseMatrix};
use crate::error::{Error, Result};
use crate::simplicial::{SimplicialMap, TruncatedSimplicialSet};

/// A bounded chain complex of free abelian groups `C_0, ..., C_top`.
///
/// `boundaries[q]` is `∂_q : C_q -> C_{q−1}` as a `rank C_q × rank C_{q−1}`
/// matrix (row `x` is `∂x`); `boundaries[0]` is the zero map to nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
}

mod decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Small(u64),
        Big(String),
    }

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|x| u64::try_from(x).map(Repr::Small).unwrap_or_else(|_| Repr::Big(x.to_string())))
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Repr>::deserialize(d)?
            .into_iter()
            .map(|r| match r {
                Repr::Small(x) => Ok(BigInt::from(x)),
                Repr::Big(s) => s.parse().map_err(serde::de::Error::custom),
            })
            .collect()
    }
}

/// `H_q ≅ Z^betti ⊕ ⨁ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    /// Torsion coefficients, each greater than one and dividing the next.
    #[serde(with = "decimal")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn is_integers(&self) -> bool {
        self.betti == 1 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn degree(&self, q: usize) -> &HomologyGroup {
        &self.groups[q]
    }

    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        if ranks.is_empty() || ranks.len() != boundaries.len() {
            return Err(Error::Precondition("one boundary matrix per degree".into()));
        }
        for (q, b) in boundaries.iter().enumerate() {
            let below = if q == 0 { 0 } else { ranks[q - 1] };
            if b.rows() != ranks[q] || b.cols() != below {
                return Err(Error::Precondition(format!("boundary in degree {q} has the wrong shape")));
            }
        }
        Ok(Self { ranks, boundaries })
    }

    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, q: usize) -> &SparseMatrix {
        &self.boundaries[q]
    }

    /// Checks `∂_{q−1} ∘ ∂_q = 0` for every `q`.
    pub fn check_square_zero(&self) -> std::result::Result<(), String> {
        for q in 2..=self.top() {
            if !self.boundaries[q].mul(&self.boundaries[q - 1]).is_zero() {
                return Err(format!("∂∂ ≠ 0 out of degree {q}"));
            }
        }
        Ok(())
    }

    /// `H_0, ..., H_top_degree`; needs the complex through `top_degree + 1`.
    pub fn homology(&self, top_degree: usize) -> Result<HomologyResult> {
        if top_degree + 1 > self.top() {
            return Err(Error::Truncation {
                required: top_degree + 1,
                available: self.top(),
            });
        }
        let forms: Vec<_> = std::thread::scope(|scope| {
            let handles: Vec<_> = self.boundaries[..=top_degree + 1]
                .iter()
                .map(|b| scope.spawn(move || smith_normal_form(b)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("reduction thread")).collect()
        });
        let groups = (0..=top_degree)
            .map(|q| HomologyGroup {
                degree: q,
                betti: self.ranks[q] - forms[q].rank - forms[q + 1].rank,
                torsion: forms[q + 1].torsion(),
            })
            .collect();
        Ok(HomologyResult { groups })
    }
}

/// Basis of the normalized chains in one level: nondegenerate simplices
/// (all simplices when semi-simplicial), with positions.
pub(crate) struct LevelBasis {
    pub simplices: Vec<usize>,
    pub position: Vec<Option<usize>>,
}

impl LevelBasis {
    pub fn new(count: usize, keep: impl Fn(usize) -> bool) -> Self {
        let simplices: Vec<usize> = (0..count).filter(|&x| keep(x)).collect();
        let mut position = vec![None; count];
        for (k, &x) in simplices.iter().enumerate() {
            position[x] = Some(k);
        }
        Self { simplices, position }
    }
}

pub(crate) fn bases(x: &TruncatedSimplicialSet, top: usize) -> Vec<LevelBasis> {
    (0..=top)
        .map(|q| LevelBasis::new(x.count(q), |s| !x.is_degenerate(q, s)))
        .collect()
}

/// Normalized integral chains of `x` through degree `top` (unnormalized for
/// semi-simplicial input).
pub fn normalized_chains(x: &TruncatedSimplicialSet, top: usize) -> Result<ChainComplex> {
    if top > x.depth() {
        return Err(Error::Truncation {
            required: top,
            available: x.depth(),
        });
    }
    let basis = bases(x, top);
    let mut boundaries = vec![SparseMatrix::zero(basis[0].simplices.len(), 0)];
    for q in 1..=top {
        let mut m = SparseMatrix::zero(basis[q].simplices.len(), basis[q - 1].simplices.len());
        for (row, &s) in basis[q].simplices.iter().enumerate() {
            for i in 0..=q {
                if let Some(col) = basis[q - 1].position[x.face(q, i, s)] {
                    m.add(row, col, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex::new(basis.iter().map(|b| b.simplices.len()).collect(), boundaries)
}

/// Integral homology `H_0, ..., H_top_degree` of the normalized chains;
/// refuses unless level `top_degree + 1` is present.
pub fn homology(x: &TruncatedSimplicialSet, top_degree: usize) -> Result<HomologyResult> {
    if top_degree + 1 > x.depth() {
        return Err(Error::Truncation {
            required: top_degree + 1,
            available: x.depth(),
        });
    }
    normalized_chains(x, top_degree + 1)?.homology(top_degree)
}

/// The algebraic mapping cone of `f_# : N(X) -> N(Y)` through degree `top`:
/// `Cone_q = N_{q−1}(X) ⊕ N_q(Y)`, `d(x, y) = (−∂x, f(x) + ∂y)`.
pub fn mapping_cone(
    f: &SimplicialMap,
    x: &TruncatedSimplicialSet,
    y: &TruncatedSimplicialSet,
    top: usize,
) -> Result<ChainComplex> {
    let available = x.depth().min(y.depth()).min(f.depth());
    if top > available {
        return Err(Error::Truncation { required: top, available });
    }
    let (bx, by) = (bases(x, top), bases(y, top));
    let nx = |q: usize| if q == 0 { 0 } else { bx[q - 1].simplices.len() };
    let ranks: Vec<usize> = (0..=top).map(|q| nx(q) + by[q].simplices.len()).collect();
    let mut boundaries = vec![SparseMatrix::zero(ranks[0], 0)];
    for q in 1..=top {
        let mut m = SparseMatrix::zero(ranks[q], ranks[q - 1]);
        let offset = nx(q - 1);
        // Rows for N_{q−1}(X).
        for (row, &s) in bx[q - 1].simplices.iter().enumerate() {
            if q >= 2 {
                for i in 0..q {
                    if let Some(col) = bx[q - 2].position[x.face(q - 1, i, s)] {
                        m.add(row, col, if i % 2 == 0 { -1 } else { 1 });
                    }
                }
            }
            if let Some(col) = by[q - 1].position[f.apply(q - 1, s)] {
                m.add(row, offset + col, 1);
            }
        }
        // Rows for N_q(Y).
        for (k, &s) in by[q].simplices.iter().enumerate() {
            for i in 0..=q {
                if let Some(col) = by[q - 1].position[y.face(q, i, s)] {
                    m.add(nx(q) + k, offset + col, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex::new(ranks, boundaries)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeReport {
    /// Highest degree checked.
    pub range: usize,
    pub homology: HomologyResult,
    pub acyclic: bool,
}

/// Whether the mapping cone of `f` has vanishing homology in degrees
/// `0..=range`; needs both sides through level `range + 1`.
pub fn mapping_cone_acyclic(
    f: &SimplicialMap,
    x: &TruncatedSimplicialSet,
    y: &TruncatedSimplicialSet,
    range: usize,
) -> Result<ConeReport> {
    let cone = mapping_cone(f, x, y, range + 1)?;
    let homology = cone.homology(range)?;
    Ok(ConeReport {
        range,
        acyclic: homology.is_acyclic(),
        homology,
    })
}

/// `χ = Σ (−1)^k · #(nondegenerate k-simplices)`. Refuses when the top
/// level still has nondegenerate simplices, since higher ones could exist.
pub fn euler_characteristic(x: &TruncatedSimplicialSet) -> Result<i64> {
    let top = x.depth();
    if x.is_semi() {
        return Err(Error::Precondition("no degeneracies to detect the dimension".into()));
    }
    let overflow = x.nondegenerate(top).len();
    if overflow > 0 {
        return Err(Error::Precondition(format!(
            "dimension overflow: {overflow} nondegenerate simplices at the truncation level {top}"
        )));
    }
    Ok((0..top)
        .map(|k| {
            let n = x.nondegenerate(k).len() as i64;
            if k % 2 == 0 {
                n
            } else {
                -n
            }
        })
        .sum())
}
