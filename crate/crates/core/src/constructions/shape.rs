use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::diagram::Constraint;
use crate::error::{Error, Result};
use crate::fincat::{arrow_poset, ordinal_poset, tilde_arrow_poset, twisted_poset, Poset};
use crate::simplicial::OrdinalMap;

/// The degreewise categories built from a Waldhausen instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConstructionKind {
    /// Cospans of cofibrations glued by pushouts, on `tw[n]`.
    Cob,
    /// `Cob` with the copairing condition; semi-simplicial.
    CobSym,
    /// Pairs of `Cob` simplices joined by pushout squares, on `tw[n] × [1]`.
    CobPo,
    /// S-type diagrams on `Ãr[2n+1]`.
    CobBig,
    /// The S-construction, on `Ar[n]`.
    S,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 5] = [Self::Cob, Self::CobSym, Self::CobPo, Self::CobBig, Self::S];

    pub fn name(self) -> &'static str {
        match self {
            Self::Cob => "cob",
            Self::CobSym => "cob-sym",
            Self::CobPo => "cob-po",
            Self::CobBig => "cob-big",
            Self::S => "s",
        }
    }

    pub fn is_semi(self) -> bool {
        self == Self::CobSym
    }

    pub fn needs_zero(self) -> bool {
        matches!(self, Self::S | Self::CobBig)
    }

    /// The shape poset in degree `n`.
    pub fn shape(self, n: usize) -> Poset {
        match self {
            Self::Cob | Self::CobSym => twisted_poset(n),
            Self::CobPo => twisted_poset(n).product(&ordinal_poset(1)),
            Self::CobBig => tilde_arrow_poset(2 * n + 1),
            Self::S => arrow_poset(n),
        }
    }

    /// The conditions on a degree-`n` simplex, as constraints on `self.shape(n)`.
    pub fn constraints(self, n: usize) -> Vec<Constraint> {
        let shape = self.shape(n);
        match self {
            Self::Cob => cob_constraints(&shape, n, &[]),
            Self::CobSym => {
                let mut c = cob_constraints(&shape, n, &[]);
                let at = |i: usize, j: usize| shape.index_of(&[i, j]).unwrap();
                for i in 0..n {
                    c.push(Constraint::CoproductCofibration {
                        left: at(i, i),
                        right: at(i + 1, i + 1),
                        target: at(i, i + 1),
                    });
                }
                c
            }
            Self::CobPo => {
                let mut c = cob_constraints(&shape, n, &[0]);
                c.extend(cob_constraints(&shape, n, &[1]));
                let at = |i: usize, j: usize, a: usize| shape.index_of(&[i, j, a]).unwrap();
                for i in 0..=n {
                    for j in i..=n {
                        for k in j + 1..=n {
                            c.push(Constraint::Pushout {
                                source: at(i, j, 0),
                                left: at(i, k, 0),
                                right: at(i, j, 1),
                                apex: at(i, k, 1),
                            });
                        }
                    }
                }
                c
            }
            Self::CobBig => s_constraints(&shape, 2 * n + 1),
            Self::S => s_constraints(&shape, n),
        }
    }

    /// The shape map of the operator `alpha : [m] -> [n]`, sending the nodes
    /// of `self.shape(m)` to nodes of `self.shape(n)`.
    pub fn shape_map(self, alpha: &OrdinalMap) -> Result<Vec<usize>> {
        let (m, n) = (alpha.source(), alpha.target());
        let a = |k: usize| alpha.apply(k);
        match self {
            Self::Cob | Self::CobSym | Self::S => {
                label_map(&self.shape(m), &self.shape(n), |l| vec![a(l[0]), a(l[1])])
            }
            Self::CobPo => label_map(&self.shape(m), &self.shape(n), |l| vec![a(l[0]), a(l[1]), l[2]]),
            Self::CobBig => {
                let mu = alpha.subdivide();
                label_map(&self.shape(m), &self.shape(n), |l| vec![mu.apply(l[0]), mu.apply(l[1])])
            }
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        Self::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::Unknown {
                kind: "construction",
                name: s.to_string(),
            })
    }
}

/// Conditions (i) and (ii) on `tw[n]`, or on one layer of `tw[n] × [1]`
/// when `suffix` is that layer's label.
fn cob_constraints(shape: &Poset, n: usize, suffix: &[usize]) -> Vec<Constraint> {
    let at = |i: usize, j: usize| {
        let mut l = vec![i, j];
        l.extend_from_slice(suffix);
        shape.index_of(&l).unwrap()
    };
    let mut c = Vec::new();
    for i in 0..=n {
        for j in i..=n {
            for k in j + 1..=n {
                c.push(Constraint::Cofibration(at(i, j), at(i, k)));
            }
        }
    }
    for i in 0..=n {
        for j in i + 1..=n {
            for k in j..=n {
                for l in k + 1..=n {
                    c.push(Constraint::Pushout {
                        source: at(j, k),
                        left: at(j, l),
                        right: at(i, k),
                        apex: at(i, l),
                    });
                }
            }
        }
    }
    c
}

/// Conditions (i) to (iii) of the S-construction on the nodes of an
/// (possibly partial) arrow poset of `[n]`; squares are imposed when all
/// four corners are present.
fn s_constraints(shape: &Poset, n: usize) -> Vec<Constraint> {
    let at = |i: usize, j: usize| shape.index_of(&[i, j]);
    let mut c = Vec::new();
    for i in 0..=n {
        if let Some(x) = at(i, i) {
            c.push(Constraint::Zero(x));
        }
    }
    for i in 0..=n {
        for j in i..=n {
            for k in j + 1..=n {
                if let (Some(a), Some(b)) = (at(i, j), at(i, k)) {
                    c.push(Constraint::Cofibration(a, b));
                }
            }
        }
    }
    for i in 0..=n {
        for j in i + 1..=n {
            for k in j..=n {
                for l in k + 1..=n {
                    if let (Some(ik), Some(il), Some(jk), Some(jl)) = (at(i, k), at(i, l), at(j, k), at(j, l)) {
                        c.push(Constraint::Pushout {
                            source: ik,
                            left: il,
                            right: jk,
                            apex: jl,
                        });
                    }
                }
            }
        }
    }
    c
}

/// Builds a monotone map `source -> target` from a map of labels.
pub fn label_map(source: &Poset, target: &Poset, f: impl Fn(&[usize]) -> Vec<usize>) -> Result<Vec<usize>> {
    let map = source
        .labels()
        .iter()
        .map(|l| {
            let image = f(l);
            target
                .index_of(&image)
                .ok_or_else(|| Error::Precondition(format!("{l:?} maps to {image:?}, which is not in the target shape")))
        })
        .collect::<Result<Vec<_>>>()?;
    if !source.is_monotone_into(target, &map) {
        return Err(Error::Precondition("shape map is not monotone".into()));
    }
    Ok(map)
}

/// `tw[n] ⊂ Ãr[2n+1]`, `(i, j) ↦ (n − i, n + 1 + j)`.
pub fn twisted_in_tilde(n: usize) -> Vec<usize> {
    label_map(&twisted_poset(n), &tilde_arrow_poset(2 * n + 1), |l| vec![n - l[0], n + 1 + l[1]]).unwrap()
}

/// `Ar[n] ⊂ Ãr[2n+1]`, `(i, j) ↦ (n + 1 + i, n + 1 + j)`.
pub fn arrow_in_tilde(n: usize) -> Vec<usize> {
    label_map(&arrow_poset(n), &tilde_arrow_poset(2 * n + 1), |l| vec![n + 1 + l[0], n + 1 + l[1]]).unwrap()
}

/// `Ãr[2n+1] ⊂ Ar[2n+1]`.
pub fn tilde_in_arrow(n: usize) -> Vec<usize> {
    label_map(&tilde_arrow_poset(2 * n + 1), &arrow_poset(2 * n + 1), |l| l.to_vec()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in ConstructionKind::ALL {
            assert_eq!(k.name().parse::<ConstructionKind>().unwrap(), k);
        }
        assert_eq!("cob_big".parse::<ConstructionKind>().unwrap(), ConstructionKind::CobBig);
        assert!("cobb".parse::<ConstructionKind>().is_err());
    }

    #[test]
    fn shape_maps_of_generators_exist() {
        for k in ConstructionKind::ALL {
            for n in 1..=3 {
                for i in 0..=n {
                    k.shape_map(&OrdinalMap::coface(n, i)).unwrap();
                }
                for i in 0..n {
                    k.shape_map(&OrdinalMap::codegeneracy(n - 1, i)).unwrap();
                }
            }
        }
    }

    #[test]
    fn shape_map_of_identity_is_identity() {
        for k in ConstructionKind::ALL {
            let m = k.shape_map(&OrdinalMap::identity(2)).unwrap();
            assert_eq!(m, (0..k.shape(2).len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn embeddings_of_low_degree() {
        assert_eq!(twisted_in_tilde(0).len(), 1);
        let t = tilde_arrow_poset(3);
        let img: Vec<_> = twisted_in_tilde(1).iter().map(|&x| t.label(x).to_vec()).collect();
        assert_eq!(img, vec![vec![1, 2], vec![1, 3], vec![0, 3]]);
        let img: Vec<_> = arrow_in_tilde(1).iter().map(|&x| t.label(x).to_vec()).collect();
        assert_eq!(img, vec![vec![2, 2], vec![2, 3], vec![3, 3]]);
    }

    #[test]
    fn constraint_counts() {
        // tw[1]: one cofibration, no squares.
        assert_eq!(ConstructionKind::Cob.constraints(1).len(), 1);
        // Ar[1]: two zeros and one cofibration.
        assert_eq!(ConstructionKind::S.constraints(1).len(), 3);
    }
}
