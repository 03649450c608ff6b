use wcob_core::constructions::*;
use wcob_core::fincat::*;
use wcob_core::invariants::*;
use wcob_core::simplicial::*;
use wcob_core::wald::WaldhausenInstance;

fn build(kind: ConstructionKind, w: &WaldhausenInstance, depth: usize) -> DegreewiseCategoryObject<'_> {
    DegreewiseCategoryObject::build(kind, w, depth, DEFAULT_DIAGRAM_LIMIT).unwrap()
}

/// Weak equivalences between functors `Ar[1] -> C` vanishing on the
/// diagonal, by brute force over all functors and transformations.
fn weq_arrows_of_s1(w: &WaldhausenInstance) -> usize {
    let ar = arrow_poset(1);
    let shape = ar.to_category();
    let zero = w.zero().unwrap();
    let diag = [ar.index_of(&[0, 0]).unwrap(), ar.index_of(&[1, 1]).unwrap()];
    let objects: Vec<Functor> = enumerate_functors(&shape, w.category(), |_| true, EnumerationLimit::default())
        .unwrap()
        .into_iter()
        .filter(|f| diag.iter().all(|&d| f.objects[d] == zero))
        .collect();
    let mut count = 0;
    for a in &objects {
        for b in &objects {
            count += enumerate_natural_transformations(&shape, w.category(), a, b)
                .iter()
                .filter(|t| t.components.iter().all(|&c| w.is_weq(c)))
                .count();
        }
    }
    count
}

#[test]
fn s_model_bidegree_one_one_matches_brute_force() {
    for bound in [2, 3] {
        let w = WaldhausenInstance::finpointed(bound).unwrap();
        let b = nerve_bisimplicial(&build(ConstructionKind::S, &w, 1), 1, 1).unwrap();
        assert_eq!(b.bisimplicial.count(1, 1), weq_arrows_of_s1(&w), "bound {bound}");
    }
}

#[test]
fn cob_model_is_connected() {
    let w = WaldhausenInstance::finpointed(2).unwrap();
    let b = nerve_bisimplicial(&build(ConstructionKind::Cob, &w, 2), 2, 2).unwrap();
    let d = b.diagonal().unwrap();
    assert_eq!(d.count(0), w.object_count());
    assert_eq!(pi0(&d).unwrap().count, 1);
}

#[test]
fn boundaries_square_to_zero_for_every_construction() {
    let w = WaldhausenInstance::finpointed(2).unwrap();
    for kind in ConstructionKind::ALL {
        let b = nerve_bisimplicial(&build(kind, &w, 2), 2, 2).unwrap();
        let d = b.diagonal().unwrap();
        normalized_chains(&d, 2).unwrap().check_square_zero().unwrap();
        total_complex(&b.bisimplicial, 2).unwrap().check_square_zero().unwrap();
    }
}

#[test]
fn diagonal_and_total_complex_agree() {
    for w in [WaldhausenInstance::finpointed(2).unwrap(), WaldhausenInstance::finset_inj(1)] {
        for kind in ConstructionKind::ALL {
            if kind.needs_zero() && w.zero().is_none() {
                continue;
            }
            let b = nerve_bisimplicial(&build(kind, &w, 2), 2, 2).unwrap();
            let diag = homology(&b.diagonal().unwrap(), 1).unwrap();
            let total = total_homology(&b.bisimplicial, 1).unwrap();
            assert!(compare_stability(&diag, &total).stable(), "{kind} on {}: {diag:?} vs {total:?}", w.descriptor());
        }
    }
}

#[test]
fn zeroth_homology_counts_components() {
    let w = WaldhausenInstance::finset_inj(1);
    for kind in [ConstructionKind::Cob, ConstructionKind::CobPo, ConstructionKind::CobSym] {
        let d = nerve_bisimplicial(&build(kind, &w, 2), 2, 2).unwrap().diagonal().unwrap();
        assert_eq!(homology(&d, 1).unwrap().degree(0).betti, pi0(&d).unwrap().count, "{kind}");
    }
}

#[test]
fn abelianized_fundamental_group_is_first_homology() {
    let w = WaldhausenInstance::finpointed(2).unwrap();
    for kind in [ConstructionKind::Cob, ConstructionKind::CobBig, ConstructionKind::CobSym] {
        let d = nerve_bisimplicial(&build(kind, &w, 2), 2, 2).unwrap().diagonal().unwrap();
        let ab = pi1_presentation(&d, 0).unwrap().abelianization();
        assert_eq!(&ab, homology(&d, 1).unwrap().degree(1), "{kind}");
    }
}

#[test]
fn certified_maps_induce_isomorphisms() {
    let x = simplex_boundary(3, 7);
    let sd = edgewise_subdivision_to(&x, 3).unwrap();
    let l = last_vertex_map(&x, 3).unwrap();
    assert!(mapping_cone_acyclic(&l, &sd, &x, 2).unwrap().acyclic);
    for q in 0..=2 {
        for p in [2, 3, 7] {
            assert!(induced_on_homology(&l, &sd, &x, q, p).unwrap().is_iso(), "degree {q}, prime {p}");
        }
        assert_eq!(homology(&sd, 2).unwrap().degree(q), homology(&x, 2).unwrap().degree(q));
    }
}

#[test]
fn euler_characteristic_of_subdivided_sphere() {
    let x = simplex_boundary(3, 9);
    let sd = edgewise_subdivision_to(&x, 4).unwrap();
    assert_eq!(euler_characteristic(&sd).unwrap(), 2);
    assert_eq!(euler_characteristic(&x.truncate(4).unwrap()).unwrap(), 2);
}

#[test]
fn homology_report_json_shape() {
    let h = homology(&simplex_boundary(2, 3), 1).unwrap();
    let v = serde_json::to_value(&h).unwrap();
    assert_eq!(v["groups"][1]["betti"], 1);
    assert!(v["groups"][1]["torsion"].as_array().unwrap().is_empty());
    assert_eq!(v["groups"][1]["degree"], 1);
}
