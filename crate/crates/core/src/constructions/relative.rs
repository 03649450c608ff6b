use serde::{Deserialize, Serialize};

use super::degreewise::DegreewiseCategoryObject;
use super::diagram::{validate, Diagram};
use super::shape::ConstructionKind;
use crate::error::{Error, Result};
use crate::fincat::{Functor, NaturalTransformation};
use crate::wald::WaldhausenInstance;

/// The `Cob^po_n` candidate induced by `φ : F ⇒ G` on a simplex `X` of
/// `Cob_n`: layer 0 is `F(X)`, layer 1 is `G(X)`, joined by the components
/// of `φ`.
pub fn induced_layer_diagram(
    big: &WaldhausenInstance,
    n: usize,
    x: &Diagram,
    from: &Functor,
    to: &Functor,
    phi: &NaturalTransformation,
) -> Diagram {
    let tw = ConstructionKind::Cob.shape(n);
    let shape = ConstructionKind::CobPo.shape(n);
    let node = |l: &[usize]| tw.index_of(&l[..2]).unwrap();
    let objects = (0..shape.len())
        .map(|p| {
            let l = shape.label(p);
            let functor = if l[2] == 0 { from } else { to };
            functor.objects[x.objects[node(l)] as usize]
        })
        .collect();
    Diagram::from_covers(big.category(), &shape, objects, |a, b| {
        let (la, lb) = (shape.label(a), shape.label(b));
        if la[2] == lb[2] {
            let functor = if la[2] == 0 { from } else { to };
            functor.morphisms[x.arrow(&tw, node(la), node(lb)) as usize]
        } else {
            phi.components[x.objects[node(la)] as usize]
        }
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedReport {
    pub depth: usize,
    pub checked: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

impl InducedReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Checks that every simplex of `cob` (over the source instance) is sent to
/// a `Cob^po` simplex of `big`.
pub fn check_induced_lands(
    cob: &DegreewiseCategoryObject<'_>,
    big: &WaldhausenInstance,
    from: &Functor,
    to: &Functor,
    phi: &NaturalTransformation,
) -> Result<InducedReport> {
    if cob.kind() != ConstructionKind::Cob {
        return Err(Error::Precondition("the induced map is defined on Cob".into()));
    }
    let mut r = InducedReport {
        depth: cob.depth(),
        ..Default::default()
    };
    for n in 0..=cob.depth() {
        let shape = ConstructionKind::CobPo.shape(n);
        let constraints = ConstructionKind::CobPo.constraints(n);
        for x in cob.level(n).objects() {
            r.checked += 1;
            let d = induced_layer_diagram(big, n, x, from, to, phi);
            if let Err(e) = validate(big, &shape, &constraints, &d) {
                r.failures += 1;
                if r.witness.is_none() {
                    r.witness = Some(format!("{x:?}: {e}"));
                }
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::DEFAULT_DIAGRAM_LIMIT;
    use crate::wald::{
        constant_functor, inclusion_functor, shift_functor, shift_transformation, to_point_transformation,
    };

    #[test]
    fn shift_lands_in_pushout_layers() {
        let small = WaldhausenInstance::finset_inj(2);
        let big = WaldhausenInstance::finset_inj(3);
        let cob = DegreewiseCategoryObject::build(ConstructionKind::Cob, &small, 1, DEFAULT_DIAGRAM_LIMIT).unwrap();
        let id = inclusion_functor(&small, &big).unwrap();
        let shift = shift_functor(&small, &big, 1).unwrap();
        let phi = shift_transformation(&small, &big, 1).unwrap();
        let r = check_induced_lands(&cob, &big, &id, &shift, &phi).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn map_to_point_does_not_land() {
        let small = WaldhausenInstance::finset_inj(2);
        let big = WaldhausenInstance::finset_inj(3);
        let cob = DegreewiseCategoryObject::build(ConstructionKind::Cob, &small, 1, DEFAULT_DIAGRAM_LIMIT).unwrap();
        let id = inclusion_functor(&small, &big).unwrap();
        let point = constant_functor(&small, &big, big.object_of_size(1).unwrap());
        let phi = to_point_transformation(&small, &big).unwrap();
        assert!(!check_induced_lands(&cob, &big, &id, &point, &phi).unwrap().passed());
    }
}
