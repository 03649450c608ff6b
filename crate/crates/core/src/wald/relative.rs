use serde::{Deserialize, Serialize};

use super::instance::WaldhausenInstance;
use crate::error::{Error, Result};
use crate::fincat::{Functor, MorId, NaturalTransformation, ObjId};

/// Evidence that a natural transformation is a relative isomorphism: every
/// cofibration of the source gives a pushout square in the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeIsoWitness {
    pub transformation: NaturalTransformation,
    /// Cofibrations of the source whose square was verified.
    pub verified: Vec<MorId>,
    /// First cofibration whose square is not a pushout.
    pub failure: Option<MorId>,
}

impl RelativeIsoWitness {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks the square `F(c) ↣ F(c')`, `φ_c`, `φ_{c'}`, `G(c) ↣ G(c')` for every
/// cofibration `c ↣ c'` of `source`.
pub fn verify_relative_iso(
    source: &WaldhausenInstance,
    target: &WaldhausenInstance,
    from: &Functor,
    to: &Functor,
    phi: &NaturalTransformation,
) -> Result<RelativeIsoWitness> {
    for (name, f) in [("source", from), ("target", to)] {
        f.check(source.category(), target.category())
            .map_err(|e| Error::Precondition(format!("{name} functor: {e}")))?;
    }
    phi.check(source.category(), target.category(), from, to)
        .map_err(|e| Error::Precondition(format!("transformation: {e}")))?;
    let mut verified = Vec::new();
    let mut failure = None;
    for c in 0..source.category().morphism_count() as MorId {
        if !source.is_cofibration(c) {
            continue;
        }
        let (a, b) = (source.source(c), source.target(c));
        let ok = target.is_pushout(
            from.morphisms[c as usize],
            phi.components[a as usize],
            to.morphisms[c as usize],
            phi.components[b as usize],
        );
        if ok {
            verified.push(c);
        } else {
            failure = Some(c);
            break;
        }
    }
    Ok(RelativeIsoWitness {
        transformation: phi.clone(),
        verified,
        failure,
    })
}

/// The inclusion of a smaller bound into a larger one of the same kind.
pub fn inclusion_functor(small: &WaldhausenInstance, big: &WaldhausenInstance) -> Result<Functor> {
    map_functor(small, big, |a| big.object_of_size(small.size(a)), |v, _| Some(v.to_vec()))
}

/// The shift functor `− ⊔ X` (disjoint union with an `x`-element set, placed
/// after the existing elements), landing in `big`.
pub fn shift_functor(small: &WaldhausenInstance, big: &WaldhausenInstance, x: usize) -> Result<Functor> {
    if small.is_pointed() || big.is_pointed() {
        return Err(Error::Precondition("the shift functor is defined on unpointed sets".into()));
    }
    map_functor(
        small,
        big,
        |a| big.object_of_size(small.size(a) + x),
        |v, target_size| {
            let mut out = v.to_vec();
            out.extend(target_size..target_size + x);
            Some(out)
        },
    )
}

/// The constant functor at an object of `big`.
pub fn constant_functor(small: &WaldhausenInstance, big: &WaldhausenInstance, object: ObjId) -> Functor {
    Functor::constant(small.category(), big.category(), object)
}

/// The canonical transformation `id ⇒ (− ⊔ X)`: each component includes `A`
/// as the first block of `A ⊔ X`.
pub fn shift_transformation(small: &WaldhausenInstance, big: &WaldhausenInstance, x: usize) -> Result<NaturalTransformation> {
    let components = (0..small.object_count() as ObjId)
        .map(|a| {
            let n = small.size(a);
            let (from, to) = (big.object_of_size(n), big.object_of_size(n + x));
            match (from, to) {
                (Some(f), Some(t)) => Ok(big.morphism(f, t, &(0..n).collect::<Vec<_>>()).unwrap()),
                _ => Err(Error::SizeBound {
                    size: n + x,
                    bound: big.bound(),
                }),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NaturalTransformation { components })
}

/// The unique transformation from the inclusion into the constant functor at
/// a one-element set.
pub fn to_point_transformation(small: &WaldhausenInstance, big: &WaldhausenInstance) -> Result<NaturalTransformation> {
    let point = big.object_of_size(1).ok_or(Error::SizeBound { size: 1, bound: big.bound() })?;
    let components = (0..small.object_count() as ObjId)
        .map(|a| {
            let from = big.object_of_size(small.size(a)).unwrap();
            big.category().homs(from, point)[0]
        })
        .collect();
    Ok(NaturalTransformation { components })
}

fn map_functor(
    small: &WaldhausenInstance,
    big: &WaldhausenInstance,
    objects: impl Fn(ObjId) -> Option<ObjId>,
    functions: impl Fn(&[usize], usize) -> Option<Vec<usize>>,
) -> Result<Functor> {
    let object_map = (0..small.object_count() as ObjId)
        .map(|a| {
            objects(a).ok_or(Error::SizeBound {
                size: small.size(a),
                bound: big.bound(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let morphisms = (0..small.category().morphism_count() as MorId)
        .map(|f| {
            let (a, b) = (small.source(f), small.target(f));
            let (fa, fb) = (object_map[a as usize], object_map[b as usize]);
            functions(&small.function(f), small.size(b))
                .and_then(|v| big.morphism(fa, fb, &v))
                .ok_or_else(|| Error::Precondition(format!("morphism {f} has no image")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Functor {
        objects: object_map,
        morphisms,
    })
}
