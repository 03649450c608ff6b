use serde::{Deserialize, Serialize};

use super::degreewise::DegreewiseCategoryObject;
use super::diagram::{enumerate_diagrams, validate, Diagram};
use super::shape::ConstructionKind;
use crate::error::{Error, Result};
use crate::fincat::MorId;
use crate::wald::{inclusion_functor, WaldhausenInstance};

/// A degree-1 cospan `A ↣ B ← C` replaced by `A ↣ M ← C`, where
/// `A ⊔ C ↣ M -> B` factors the copairing, together with the comparison
/// `(id, M -> B, id)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CospanReplacement {
    pub original: Diagram,
    pub replacement: Diagram,
    pub comparison: Vec<MorId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplacementReport {
    pub cospans: usize,
    pub not_symmetric: usize,
    pub not_natural: usize,
    pub not_weq: usize,
    pub witness: Option<String>,
}

impl ReplacementReport {
    pub fn passed(&self) -> bool {
        self.cospans > 0 && self.not_symmetric == 0 && self.not_natural == 0 && self.not_weq == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricCofibrationReport {
    pub simplices: usize,
    pub arrows: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

impl SymmetricCofibrationReport {
    pub fn passed(&self) -> bool {
        self.simplices > 0 && self.failures == 0
    }
}

/// Checks that every arrow `F_jk -> F_ik` (`i < j ≤ k`) of every enumerated
/// `Cob^sym` simplex is a cofibration.
pub fn check_symmetric_cofibrations(sym: &DegreewiseCategoryObject<'_>) -> Result<SymmetricCofibrationReport> {
    if sym.kind() != ConstructionKind::CobSym {
        return Err(Error::Precondition("expected the symmetric construction".into()));
    }
    let w = sym.instance();
    let mut r = SymmetricCofibrationReport::default();
    for n in 0..=sym.depth() {
        let shape = sym.level(n).shape();
        let at = |i: usize, j: usize| shape.index_of(&[i, j]).unwrap();
        for d in sym.level(n).objects() {
            r.simplices += 1;
            for k in 0..=n {
                for j in 1..=k {
                    for i in 0..j {
                        r.arrows += 1;
                        if !w.is_cofibration(d.arrow(shape, at(j, k), at(i, k))) {
                            r.failures += 1;
                            r.witness.get_or_insert_with(|| format!("degree {n}, F_{j}{k} -> F_{i}{k} in {d:?}"));
                        }
                    }
                }
            }
        }
    }
    Ok(r)
}

/// Replaces `original` (a `Cob_1` simplex of `big`) through the
/// factorization of `big`.
pub fn replace_cospan(big: &WaldhausenInstance, original: &Diagram) -> Result<CospanReplacement> {
    let shape = ConstructionKind::Cob.shape(1);
    let at = |i: usize, j: usize| shape.index_of(&[i, j]).unwrap();
    let (a, b, c) = (at(0, 0), at(0, 1), at(1, 1));
    let (u, v) = (original.arrow(&shape, a, b), original.arrow(&shape, c, b));
    let (fa, fb, fc) = (original.objects[a], original.objects[b], original.objects[c]);
    let (sum, inl, inr) = big.coproduct(fa, fc)?;
    let mut values = vec![0; big.size(sum)];
    for (leg, map) in [(inl, u), (inr, v)] {
        for (x, y) in big.function(leg).into_iter().zip(big.function(map)) {
            values[x] = y;
        }
    }
    let copair = big
        .morphism(sum, fb, &values)
        .ok_or_else(|| Error::Precondition("copairing is not a morphism".into()))?;
    let (cof, weq) = big.factor(copair)?;
    let middle = big.target(cof);
    let objects = vec![fa, middle, fc];
    let mut ordered = vec![0; 3];
    for (k, node) in [a, b, c].into_iter().enumerate() {
        ordered[node] = objects[k];
    }
    let replacement = Diagram::from_covers(big.category(), &shape, ordered, |x, y| {
        debug_assert_eq!(y, b);
        if x == a {
            big.comp(cof, inl)
        } else {
            big.comp(cof, inr)
        }
    });
    let mut comparison = vec![0; 3];
    comparison[a] = big.id(fa);
    comparison[b] = weq;
    comparison[c] = big.id(fc);
    Ok(CospanReplacement {
        original: original.clone(),
        replacement,
        comparison,
    })
}

/// Replaces every `Cob_1` simplex of `small` inside `big` and checks that
/// each replacement is a `Cob^sym` simplex with an objectwise weak
/// equivalence to the original.
pub fn check_cospan_replacement(small: &WaldhausenInstance, big: &WaldhausenInstance, limit: usize) -> Result<ReplacementReport> {
    let shape = ConstructionKind::Cob.shape(1);
    let include = inclusion_functor(small, big)?;
    let sym = ConstructionKind::CobSym.constraints(1);
    let mut r = ReplacementReport::default();
    let cat = big.category();
    for d in enumerate_diagrams(small, &shape, &ConstructionKind::Cob.constraints(1), limit)? {
        r.cospans += 1;
        let original = Diagram {
            objects: d.objects.iter().map(|&x| include.objects[x as usize]).collect(),
            arrows: d.arrows.iter().map(|&f| include.morphisms[f as usize]).collect(),
        };
        let rep = replace_cospan(big, &original)?;
        let mut note = |s: String| {
            if r.witness.is_none() {
                r.witness = Some(s);
            }
        };
        if let Err(e) = validate(big, &shape, &sym, &rep.replacement) {
            r.not_symmetric += 1;
            note(format!("replacement of {original:?}: {e}"));
        }
        let natural = shape.pairs().iter().all(|&(x, y)| {
            cat.comp(original.arrow(&shape, x, y), rep.comparison[x])
                == cat.comp(rep.comparison[y], rep.replacement.arrow(&shape, x, y))
        });
        if !natural {
            r.not_natural += 1;
            note(format!("comparison for {original:?} is not natural"));
        }
        if !rep.comparison.iter().all(|&f| big.is_weq(f)) {
            r.not_weq += 1;
            note(format!("comparison for {original:?} is not a weak equivalence"));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finset_all_cospans_become_symmetric() {
        let small = WaldhausenInstance::finset_all(2).unwrap();
        let big = WaldhausenInstance::finset_all(6).unwrap();
        let r = check_cospan_replacement(&small, &big, 1 << 20).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn some_originals_are_not_symmetric() {
        let w = WaldhausenInstance::finset_all(2).unwrap();
        let shape = ConstructionKind::Cob.shape(1);
        let cob = enumerate_diagrams(&w, &shape, &ConstructionKind::Cob.constraints(1), 1 << 20).unwrap();
        let sym = ConstructionKind::CobSym.constraints(1);
        assert!(cob.iter().any(|d| validate(&w, &shape, &sym, d).is_err()));
    }

    #[test]
    fn symmetric_simplices_have_cofibrant_restrictions() {
        use crate::constructions::DEFAULT_DIAGRAM_LIMIT;
        for w in [WaldhausenInstance::finset_all(2).unwrap(), WaldhausenInstance::finpointed(2).unwrap()] {
            let sym = DegreewiseCategoryObject::build(ConstructionKind::CobSym, &w, 2, DEFAULT_DIAGRAM_LIMIT).unwrap();
            let r = check_symmetric_cofibrations(&sym).unwrap();
            assert!(r.passed() && r.arrows > 0, "{r:?}");
        }
    }

    #[test]
    fn needs_factorization() {
        let w = WaldhausenInstance::finset_inj(2);
        assert!(check_cospan_replacement(&w, &w, 1000).is_err());
    }
}
