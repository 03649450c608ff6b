use serde::{Deserialize, Serialize};

use super::degreewise::DegreewiseCategoryObject;
use super::diagram::{validate, Diagram, Restriction};
use super::shape::{arrow_in_tilde, label_map, tilde_in_arrow, twisted_in_tilde, ConstructionKind};
use crate::error::{Error, Result};
use crate::fincat::{arrow_poset, tilde_arrow_poset, twisted_poset, Poset};
use crate::simplicial::OrdinalMap;

fn expect_kind(x: &DegreewiseCategoryObject<'_>, kind: ConstructionKind) -> Result<()> {
    if x.kind() == kind {
        Ok(())
    } else {
        Err(Error::Precondition(format!("expected {kind}, got {}", x.kind())))
    }
}

fn expect_depth(x: &DegreewiseCategoryObject<'_>, n: usize) -> Result<()> {
    if n <= x.depth() {
        Ok(())
    } else {
        Err(Error::Truncation {
            required: n,
            available: x.depth(),
        })
    }
}

/// `tw[n] × [1] -> tw[n]`, forgetting the layer.
pub fn layer_projection(n: usize) -> Vec<usize> {
    label_map(&ConstructionKind::CobPo.shape(n), &twisted_poset(n), |l| l[..2].to_vec()).unwrap()
}

/// `tw[n] -> tw[n] × [1]` onto layer `a`.
pub fn layer_inclusion(n: usize, a: usize) -> Vec<usize> {
    label_map(&twisted_poset(n), &ConstructionKind::CobPo.shape(n), |l| vec![l[0], l[1], a]).unwrap()
}

/// `δ : Cob_n -> Cob^po_n`, constant in the layer direction.
pub fn delta(cob: &DegreewiseCategoryObject<'_>, po: &DegreewiseCategoryObject<'_>, n: usize) -> Result<Restriction> {
    expect_kind(cob, ConstructionKind::Cob)?;
    expect_kind(po, ConstructionKind::CobPo)?;
    expect_depth(cob, n)?;
    expect_depth(po, n)?;
    Restriction::new(cob.level(n), po.level(n), layer_projection(n))
}

/// `s` (layer 0) or `t` (layer 1) : `Cob^po_n -> Cob_n`.
pub fn layer(po: &DegreewiseCategoryObject<'_>, cob: &DegreewiseCategoryObject<'_>, n: usize, a: usize) -> Result<Restriction> {
    expect_kind(cob, ConstructionKind::Cob)?;
    expect_kind(po, ConstructionKind::CobPo)?;
    expect_depth(cob, n)?;
    expect_depth(po, n)?;
    Restriction::new(po.level(n), cob.level(n), layer_inclusion(n, a))
}

/// `h : [1]^op × [1] -> [1]` with `h(1, a) = 0` and `h(0, a) = a`.
fn h(x: usize, a: usize) -> usize {
    if x == 1 {
        0
    } else {
        a
    }
}

/// The homotopy between `δ ∘ s` and the identity, evaluated at the
/// `n`-simplex `alpha : [n] -> [1]` of `Δ¹`: restriction along
/// `(i, j, a) ↦ (i, j, h(α(q(i, j)), a))`, where `q(i, j) = i` is the
/// first-vertex map `tw[n] -> [n]^op`.
pub fn layer_homotopy(po_shape: &Poset, f: &Diagram, alpha: &OrdinalMap) -> Result<Diagram> {
    let n = alpha.source();
    if alpha.target() != 1 || po_shape.len() != ConstructionKind::CobPo.shape(n).len() {
        return Err(Error::Precondition("the homotopy parameter must be a map [n] -> [1]".into()));
    }
    let first_vertex = |l: &[usize]| l[0];
    let map = label_map(po_shape, po_shape, |l| vec![l[0], l[1], h(alpha.apply(first_vertex(l)), l[2])])?;
    Ok(f.precompose(po_shape, po_shape, &map))
}

/// The same homotopy entrywise: layer 0 is kept, and the layer-1 entry at
/// `(i, j)` is `F¹_ij` when `α(i) = 0` and `F⁰_ij` when `α(i) = 1`.
pub fn layer_homotopy_closed_form(po_shape: &Poset, f: &Diagram, alpha: &OrdinalMap) -> Diagram {
    let source = |l: &[usize]| {
        let a = if l[2] == 1 && alpha.apply(l[0]) == 0 { 1 } else { 0 };
        po_shape.index_of(&[l[0], l[1], a]).unwrap()
    };
    Diagram {
        objects: (0..po_shape.len()).map(|x| f.objects[source(po_shape.label(x))]).collect(),
        arrows: po_shape
            .pairs()
            .iter()
            .map(|&(a, b)| f.arrow(po_shape, source(po_shape.label(a)), source(po_shape.label(b))))
            .collect(),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyReport {
    pub depth: usize,
    /// Pairs (simplex, parameter) evaluated.
    pub evaluated: usize,
    pub invalid: usize,
    pub closed_form_mismatches: usize,
    pub endpoint_failures: usize,
    pub coherence_checked: usize,
    pub coherence_failures: usize,
    pub witness: Option<String>,
}

impl HomotopyReport {
    pub fn passed(&self) -> bool {
        self.invalid == 0 && self.closed_form_mismatches == 0 && self.endpoint_failures == 0 && self.coherence_failures == 0
    }

    fn note(&mut self, w: impl FnOnce() -> String) {
        if self.witness.is_none() {
            self.witness = Some(w());
        }
    }
}

/// Checks, for every simplex of `po` up to its depth and every parameter
/// `α : [n] -> [1]`: the value is a valid simplex, agrees with the closed
/// form, the endpoints are the identity and `δ ∘ s`, and
/// `H(θ*F, α∘θ) = θ*H(F, α)` for every generating operator `θ`.
pub fn check_layer_homotopy(po: &DegreewiseCategoryObject<'_>) -> Result<HomotopyReport> {
    expect_kind(po, ConstructionKind::CobPo)?;
    let w = po.instance();
    let depth = po.depth();
    let mut r = HomotopyReport {
        depth,
        ..Default::default()
    };
    for n in 0..=depth {
        let level = po.level(n);
        let shape = level.shape();
        let constraints = ConstructionKind::CobPo.constraints(n);
        let s_map = layer_inclusion(n, 0);
        let delta_map = layer_projection(n);
        for f in level.objects() {
            for alpha in OrdinalMap::all(n, 1) {
                r.evaluated += 1;
                let value = layer_homotopy(shape, f, &alpha)?;
                if let Err(e) = validate(w, shape, &constraints, &value) {
                    r.invalid += 1;
                    r.note(|| format!("H({f:?}, {:?}) is not a simplex: {e}", alpha.values()));
                }
                if value != layer_homotopy_closed_form(shape, f, &alpha) {
                    r.closed_form_mismatches += 1;
                    r.note(|| format!("closed form differs at ({f:?}, {:?})", alpha.values()));
                }
                let want = if alpha.values().iter().all(|&v| v == 0) {
                    Some(f.clone())
                } else if alpha.values().iter().all(|&v| v == 1) {
                    let s = f.precompose(shape, &twisted_poset(n), &s_map);
                    Some(s.precompose(&twisted_poset(n), shape, &delta_map))
                } else {
                    None
                };
                if want.is_some_and(|want| want != value) {
                    r.endpoint_failures += 1;
                    r.note(|| format!("endpoint {:?} of {f:?}", alpha.values()));
                }
                let mut generators = Vec::new();
                if n > 0 {
                    generators.extend((0..=n).map(|i| OrdinalMap::coface(n, i)));
                }
                if n < depth {
                    generators.extend((0..=n).map(|i| OrdinalMap::codegeneracy(n, i)));
                }
                for theta in generators {
                    r.coherence_checked += 1;
                    let m = theta.source();
                    let map = ConstructionKind::CobPo.shape_map(&theta)?;
                    let lower = ConstructionKind::CobPo.shape(m);
                    let left = layer_homotopy(&lower, &f.precompose(shape, &lower, &map), &alpha.compose(&theta)?)?;
                    let right = value.precompose(shape, &lower, &map);
                    if left != right {
                        r.coherence_failures += 1;
                        r.note(|| format!("operator {:?} does not commute at ({f:?}, {:?})", theta.values(), alpha.values()));
                    }
                }
            }
        }
    }
    Ok(r)
}

/// Restriction `Cob^big_n -> Cob_n` along `tw[n] ⊂ Ãr[2n+1]`.
pub fn restrict_big_to_cob(
    big: &DegreewiseCategoryObject<'_>,
    cob: &DegreewiseCategoryObject<'_>,
    n: usize,
) -> Result<Restriction> {
    expect_kind(big, ConstructionKind::CobBig)?;
    expect_kind(cob, ConstructionKind::Cob)?;
    expect_depth(big, n)?;
    expect_depth(cob, n)?;
    Restriction::new(big.level(n), cob.level(n), twisted_in_tilde(n))
}

/// `τ : Cob^big_n -> S_n`, restriction along `Ar[n] ⊂ Ãr[2n+1]`.
pub fn tau(big: &DegreewiseCategoryObject<'_>, s: &DegreewiseCategoryObject<'_>, n: usize) -> Result<Restriction> {
    expect_kind(big, ConstructionKind::CobBig)?;
    expect_kind(s, ConstructionKind::S)?;
    expect_depth(big, n)?;
    expect_depth(s, n)?;
    Restriction::new(big.level(n), s.level(n), arrow_in_tilde(n))
}

/// `α : S_{2n+1} -> Cob^big_n`, restriction along `Ãr[2n+1] ⊂ Ar[2n+1]`.
pub fn alpha(s: &DegreewiseCategoryObject<'_>, big: &DegreewiseCategoryObject<'_>, n: usize) -> Result<Restriction> {
    expect_kind(big, ConstructionKind::CobBig)?;
    expect_kind(s, ConstructionKind::S)?;
    expect_depth(big, n)?;
    expect_depth(s, 2 * n + 1)?;
    Restriction::new(s.level(2 * n + 1), big.level(n), tilde_in_arrow(n))
}

/// The four-block map `tw[n] × [1] -> Ãr[4n+3]` sending layer 0 to
/// `(n − i, 3n + 3 + j)` and layer 1 to `(3n + 2 − i, 3n + 3 + j)`.
pub fn four_block_map(n: usize) -> Vec<usize> {
    label_map(&ConstructionKind::CobPo.shape(n), &tilde_arrow_poset(4 * n + 3), |l| {
        let first = if l[2] == 0 { n - l[0] } else { 3 * n + 2 - l[0] };
        vec![first, 3 * n + 3 + l[1]]
    })
    .unwrap()
}

/// The `Cob^po_n` simplex obtained from a `Cob^big_{2n+1}` simplex by
/// restriction along [`four_block_map`].
pub fn four_block_homotopy(big: &DegreewiseCategoryObject<'_>, n: usize, g: usize) -> Result<Diagram> {
    expect_kind(big, ConstructionKind::CobBig)?;
    expect_depth(big, 2 * n + 1)?;
    let level = big.level(2 * n + 1);
    Ok(level.object(g).precompose(level.shape(), &ConstructionKind::CobPo.shape(n), &four_block_map(n)))
}

/// `L(G)` restricted to `tw[n]`: the operator of the last-block inclusion
/// `[n] -> [2n+1]`, then `tw[n] ⊂ Ãr[2n+1]`.
pub fn last_vertex_image(n: usize, g: &Diagram) -> Result<Diagram> {
    let lambda = OrdinalMap::last_block_inclusion(n);
    let kind = ConstructionKind::CobBig;
    let on_big = g.precompose(&kind.shape(2 * n + 1), &kind.shape(n), &kind.shape_map(&lambda)?);
    Ok(on_big.precompose(&kind.shape(n), &twisted_poset(n), &twisted_in_tilde(n)))
}

/// `(α ∘ Sd τ)(G)` restricted to `tw[n]`.
pub fn alpha_sd_tau_image(n: usize, g: &Diagram) -> Diagram {
    let big = ConstructionKind::CobBig;
    let on_s = g.precompose(&big.shape(2 * n + 1), &arrow_poset(2 * n + 1), &arrow_in_tilde(2 * n + 1));
    let on_big = on_s.precompose(&arrow_poset(2 * n + 1), &big.shape(n), &tilde_in_arrow(n));
    on_big.precompose(&big.shape(n), &twisted_poset(n), &twisted_in_tilde(n))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourBlockReport {
    pub degree: usize,
    pub checked: usize,
    pub invalid: usize,
    pub source_mismatches: usize,
    pub target_mismatches: usize,
    pub coherence_checked: usize,
    pub coherence_failures: usize,
    pub witness: Option<String>,
}

impl FourBlockReport {
    pub fn passed(&self) -> bool {
        self.invalid == 0 && self.source_mismatches == 0 && self.target_mismatches == 0 && self.coherence_failures == 0
    }
}

/// Validates every value of the four-block homotopy in degree `n` as a
/// `Cob^po` simplex and compares its layers with `L` and `α ∘ Sd τ`. Also
/// checks that it commutes with the face operators into degree `n`.
pub fn check_four_block_homotopy(big: &DegreewiseCategoryObject<'_>, n: usize) -> Result<FourBlockReport> {
    expect_kind(big, ConstructionKind::CobBig)?;
    expect_depth(big, 2 * n + 1)?;
    let w = big.instance();
    let po_shape = ConstructionKind::CobPo.shape(n);
    let constraints = ConstructionKind::CobPo.constraints(n);
    let tw = twisted_poset(n);
    let mut r = FourBlockReport {
        degree: n,
        ..Default::default()
    };
    let note = |r: &mut FourBlockReport, s: String| {
        if r.witness.is_none() {
            r.witness = Some(s);
        }
    };
    let level = big.level(2 * n + 1);
    for (gi, g) in level.objects().iter().enumerate() {
        r.checked += 1;
        let value = four_block_homotopy(big, n, gi)?;
        if let Err(e) = validate(w, &po_shape, &constraints, &value) {
            r.invalid += 1;
            note(&mut r, format!("H({g:?}) is not a Cob^po simplex: {e}"));
        }
        if value.precompose(&po_shape, &tw, &layer_inclusion(n, 0)) != last_vertex_image(n, g)? {
            r.source_mismatches += 1;
            note(&mut r, format!("layer 0 of H({g:?}) is not L(G)"));
        }
        if value.precompose(&po_shape, &tw, &layer_inclusion(n, 1)) != alpha_sd_tau_image(n, g) {
            r.target_mismatches += 1;
            note(&mut r, format!("layer 1 of H({g:?}) is not α(Sd τ(G))"));
        }
        if n > 0 {
            for i in 0..=n {
                let theta = OrdinalMap::coface(n, i);
                let m = n - 1;
                r.coherence_checked += 1;
                let big_kind = ConstructionKind::CobBig;
                let lowered = g.precompose(level.shape(), &big_kind.shape(2 * m + 1), &big_kind.shape_map(&theta.subdivide())?);
                let lower_shape = ConstructionKind::CobPo.shape(m);
                let left = lowered.precompose(&big_kind.shape(2 * m + 1), &lower_shape, &four_block_map(m));
                let right = value.precompose(&po_shape, &lower_shape, &ConstructionKind::CobPo.shape_map(&theta)?);
                if left != right {
                    r.coherence_failures += 1;
                    note(&mut r, format!("face {i} does not commute at {g:?}"));
                }
            }
        }
    }
    Ok(r)
}
