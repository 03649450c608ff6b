use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::degreewise::DegreewiseCategoryObject;
use super::diagram::{Components, Constraint, DiagramCategory, Restriction};
use super::shape::{label_map, ConstructionKind};
use crate::error::{Error, Result};
use crate::fincat::{arrow_poset, is_equivalence, ordinal_poset, Category, EquivalenceReport, FiniteCategory};
use crate::simplicial::OrdinalMap;
use crate::wald::WaldhausenInstance;

/// The strict iterated fiber product `wCob_1 ×_{wCob_0} ⋯ ×_{wCob_0} wCob_1`
/// of `n` factors: chains of cospans whose adjacent ends agree, with
/// morphisms the tuples of weak equivalences agreeing on shared ends.
pub struct SpineCategory<'a> {
    edges: DiagramCategory<'a>,
    n: usize,
    head: usize,
    tail: usize,
    objects: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl<'a> SpineCategory<'a> {
    pub fn new(cob: &DegreewiseCategoryObject<'a>, n: usize) -> Result<Self> {
        if cob.kind() != ConstructionKind::Cob {
            return Err(Error::Precondition("the spine is taken of Cob".into()));
        }
        if cob.depth() < 1 {
            return Err(Error::Truncation { required: 1, available: cob.depth() });
        }
        let edges = cob.level(1).weq_subcategory();
        let head = edges.shape().index_of(&[0, 0]).unwrap();
        let tail = edges.shape().index_of(&[1, 1]).unwrap();
        let mut objects = Vec::new();
        let mut current = Vec::with_capacity(n);
        fn extend(edges: &DiagramCategory<'_>, n: usize, head: usize, tail: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for e in 0..edges.object_count() {
                if let Some(&prev) = cur.last() {
                    if edges.object(prev).objects[tail] != edges.object(e).objects[head] {
                        continue;
                    }
                }
                cur.push(e);
                extend(edges, n, head, tail, cur, out);
                cur.pop();
            }
        }
        extend(&edges, n, head, tail, &mut current, &mut objects);
        let index = objects.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        Ok(Self {
            edges,
            n,
            head,
            tail,
            objects,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn objects(&self) -> &[Vec<usize>] {
        &self.objects
    }

    pub fn index_of(&self, chain: &[usize]) -> Option<usize> {
        self.index.get(chain).copied()
    }

    pub fn edges(&self) -> &DiagramCategory<'a> {
        &self.edges
    }

    pub fn materialize(&self) -> (FiniteCategory, Vec<Vec<Components>>) {
        FiniteCategory::materialize(self, |i| format!("chain{i}"))
    }

    /// Glues the chain by iterated canonical pushouts, every sub-chain
    /// `F_ik` included; `Err(SizeBound)` when one of them does not fit the
    /// instance.
    pub fn glue(&self, chain: usize) -> Result<()> {
        let w = self.edges.instance();
        let shape = self.edges.shape();
        let middle = shape.index_of(&[0, 1]).unwrap();
        let cat = w.category();
        let cospans = &self.objects[chain];
        for start in 0..cospans.len() {
            let mut into_apex: Option<u32> = None;
            for &e in &cospans[start..] {
                let d = self.edges.object(e);
                let back = d.arrow(shape, self.tail, middle);
                into_apex = Some(match into_apex {
                    None => back,
                    Some(prev) => {
                        let p = w.pushout(d.arrow(shape, self.head, middle), prev)?;
                        cat.comp(p.from_d, back)
                    }
                });
            }
        }
        Ok(())
    }
}

impl Category for SpineCategory<'_> {
    type Mor = Vec<Components>;

    fn object_count(&self) -> usize {
        self.objects.len()
    }

    fn hom(&self, a: usize, b: usize) -> Vec<Vec<Components>> {
        let factors: Vec<Vec<Components>> = (0..self.n)
            .map(|k| self.edges.hom(self.objects[a][k], self.objects[b][k]))
            .collect();
        let mut out = Vec::new();
        let mut cur: Vec<Components> = Vec::new();
        fn rec(me: &SpineCategory<'_>, factors: &[Vec<Components>], cur: &mut Vec<Components>, out: &mut Vec<Vec<Components>>) {
            let k = cur.len();
            if k == factors.len() {
                out.push(cur.clone());
                return;
            }
            for c in &factors[k] {
                if k > 0 && cur[k - 1][me.tail] != c[me.head] {
                    continue;
                }
                cur.push(c.clone());
                rec(me, factors, cur, out);
                cur.pop();
            }
        }
        rec(self, &factors, &mut cur, &mut out);
        out
    }

    fn compose(&self, g: &Vec<Components>, f: &Vec<Components>) -> Vec<Components> {
        g.iter().zip(f).map(|(g, f)| self.edges.compose(g, f)).collect()
    }

    fn identity(&self, a: usize) -> Vec<Components> {
        self.objects[a].iter().map(|&e| self.edges.identity(e)).collect()
    }
}

/// The restriction `wCob_n -> wCob_1 ×_{wCob_0} ⋯ ×_{wCob_0} wCob_1` along
/// the edges `{k−1, k} ⊂ [n]`.
pub struct SpineFunctor {
    pub edge_maps: Vec<Vec<usize>>,
    pub objects: Vec<usize>,
}

impl SpineFunctor {
    pub fn new(cob: &DegreewiseCategoryObject<'_>, spine: &SpineCategory<'_>) -> Result<Self> {
        let n = spine.degree();
        if cob.depth() < n {
            return Err(Error::Truncation { required: n, available: cob.depth() });
        }
        let edge_maps = (1..=n)
            .map(|k| ConstructionKind::Cob.shape_map(&OrdinalMap::new(n, vec![k - 1, k])?))
            .collect::<Result<Vec<_>>>()?;
        let level = cob.level(n);
        let objects = level
            .objects()
            .iter()
            .map(|d| {
                let chain: Option<Vec<usize>> = edge_maps
                    .iter()
                    .map(|m| spine.edges().index_of(&d.precompose(level.shape(), spine.edges().shape(), m)))
                    .collect();
                chain
                    .and_then(|c| spine.index_of(&c))
                    .ok_or_else(|| Error::OperatorClosure("an edge restriction is not a Cob_1 simplex".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { edge_maps, objects })
    }

    pub fn morphism(&self, c: &Components) -> Vec<Components> {
        self.edge_maps.iter().map(|m| m.iter().map(|&x| c[x]).collect()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegalReport {
    pub instance: String,
    pub degree: usize,
    /// The strict decision, over every chain of the fiber product.
    pub strict: EquivalenceReport,
    /// Missing chains whose glued colimit exceeds the size bound.
    pub missing_out_of_bound: usize,
    /// Missing chains that do fit the bound.
    pub missing_in_bound: Vec<usize>,
}

impl SegalReport {
    /// Fully faithful, and essentially surjective onto the chains whose
    /// gluing fits the size bound.
    pub fn passed(&self) -> bool {
        self.strict.fully_faithful && self.missing_in_bound.is_empty()
    }
}

/// Decides whether the spine functor in degree `n` is an equivalence.
pub fn check_segal(cob: &DegreewiseCategoryObject<'_>, n: usize) -> Result<SegalReport> {
    if n == 0 {
        return Err(Error::Precondition("the spine is defined for n ≥ 1".into()));
    }
    let spine = SpineCategory::new(cob, n)?;
    let functor = SpineFunctor::new(cob, &spine)?;
    let source = cob.level(n).weq_subcategory();
    let strict = is_equivalence(&source, &spine, |a| functor.objects[a], |c| functor.morphism(c));
    let mut missing_out_of_bound = 0;
    let mut missing_in_bound = Vec::new();
    for &t in &strict.missing_objects {
        match spine.glue(t) {
            Err(Error::SizeBound { .. }) => missing_out_of_bound += 1,
            Ok(()) => missing_in_bound.push(t),
            Err(e) => return Err(e),
        }
    }
    Ok(SegalReport {
        instance: cob.instance().descriptor().to_string(),
        degree: n,
        strict,
        missing_out_of_bound,
        missing_in_bound,
    })
}

/// Filtered objects `F_0 ↣ F_1 ↣ ⋯ ↣ F_n`.
pub fn filtered_category(w: &WaldhausenInstance, n: usize, limit: usize) -> Result<DiagramCategory<'_>> {
    let shape = ordinal_poset(n);
    let constraints = shape.pairs().iter().filter(|(a, b)| a != b).map(|&(a, b)| Constraint::Cofibration(a, b)).collect();
    DiagramCategory::enumerate(w, shape, constraints, limit)
}

/// The restriction `S_n -> F_{n−1}`, `(F_ij) ↦ (F_{0, j+1})`.
pub fn s_to_filtered(s: &DegreewiseCategoryObject<'_>, filtered: &DiagramCategory<'_>, n: usize) -> Result<Restriction> {
    if s.kind() != ConstructionKind::S || n == 0 || n > s.depth() {
        return Err(Error::Precondition(format!("need S up to degree {n} ≥ 1")));
    }
    let map = label_map(&ordinal_poset(n - 1), &arrow_poset(n), |l| vec![0, l[0] + 1])?;
    Restriction::new(s.level(n), filtered, map)
}
