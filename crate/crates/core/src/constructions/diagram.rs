use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fincat::{Category, FiniteCategory, MorId, ObjId, Poset};
use crate::wald::WaldhausenInstance;

const UNSET: u32 = u32::MAX;

/// A functor from a shape poset into an instance: one object per element and
/// one morphism per comparable pair (indexed by the poset's pair numbering).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diagram {
    pub objects: Vec<ObjId>,
    pub arrows: Vec<MorId>,
}

impl Diagram {
    pub fn arrow(&self, shape: &Poset, a: usize, b: usize) -> MorId {
        self.arrows[shape.pair(a, b).expect("comparable pair")]
    }

    /// Restriction along a monotone map `map : Q -> P` (indexed by `Q`'s elements).
    pub fn precompose(&self, shape: &Poset, along: &Poset, map: &[usize]) -> Diagram {
        Diagram {
            objects: map.iter().map(|&x| self.objects[x]).collect(),
            arrows: along
                .pairs()
                .iter()
                .map(|&(a, b)| self.arrow(shape, map[a], map[b]))
                .collect(),
        }
    }

    /// Builds a diagram from its entries and its arrows on covering pairs,
    /// composing along covers for the remaining pairs.
    pub fn from_covers(
        cat: &FiniteCategory,
        shape: &Poset,
        objects: Vec<ObjId>,
        cover: impl Fn(usize, usize) -> MorId,
    ) -> Diagram {
        let mut arrows = vec![UNSET; shape.pair_count()];
        for &b in shape.linear_order() {
            arrows[shape.pair(b, b).unwrap()] = cat.id(objects[b]);
            for a in 0..shape.len() {
                if a == b || !shape.leq(a, b) {
                    continue;
                }
                let c = *shape.lower_covers(b).iter().find(|&&c| shape.leq(a, c)).unwrap();
                let below = arrows[shape.pair(a, c).unwrap()];
                arrows[shape.pair(a, b).unwrap()] = cat.comp(cover(c, b), below);
            }
        }
        Diagram { objects, arrows }
    }

    pub fn to_canonical_json(&self, shape: &Poset) -> Value {
        let entries: Vec<Value> = (0..shape.len())
            .map(|x| json!({ "node": shape.label(x), "object": self.objects[x] }))
            .collect();
        json!({ "arrows": self.arrows, "entries": entries })
    }
}

/// A condition imposed on diagrams of a given shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Constraint {
    /// The entry is the zero object.
    Zero(usize),
    /// The arrow `a -> b` is a cofibration.
    Cofibration(usize, usize),
    /// The square `source -> left -> apex`, `source -> right -> apex` is a
    /// pushout (decided by the universal property).
    Pushout {
        source: usize,
        left: usize,
        right: usize,
        apex: usize,
    },
    /// The canonical map `F(left) ⊔ F(right) -> F(target)` is a cofibration.
    CoproductCofibration { left: usize, right: usize, target: usize },
}

impl Constraint {
    fn nodes(&self) -> Vec<usize> {
        match *self {
            Constraint::Zero(a) => vec![a],
            Constraint::Cofibration(a, b) => vec![a, b],
            Constraint::Pushout {
                source,
                left,
                right,
                apex,
            } => vec![source, left, right, apex],
            Constraint::CoproductCofibration { left, right, target } => vec![left, right, target],
        }
    }

    fn holds(&self, w: &WaldhausenInstance, shape: &Poset, objects: &[ObjId], arrows: &[MorId]) -> bool {
        let arrow = |a: usize, b: usize| arrows[shape.pair(a, b).expect("comparable pair")];
        match *self {
            Constraint::Zero(a) => w.zero() == Some(objects[a]),
            Constraint::Cofibration(a, b) => w.is_cofibration(arrow(a, b)),
            Constraint::Pushout {
                source,
                left,
                right,
                apex,
            } => w.is_pushout(
                arrow(source, left),
                arrow(source, right),
                arrow(right, apex),
                arrow(left, apex),
            ),
            Constraint::CoproductCofibration { left, right, target } => {
                w.copairing_is_cofibration(arrow(left, target), arrow(right, target))
            }
        }
    }

    pub fn describe(&self, shape: &Poset) -> String {
        let l = |x: usize| format!("{:?}", shape.label(x));
        match *self {
            Constraint::Zero(a) => format!("zero at {}", l(a)),
            Constraint::Cofibration(a, b) => format!("cofibration {} -> {}", l(a), l(b)),
            Constraint::Pushout {
                source,
                left,
                right,
                apex,
            } => format!("pushout {} -> {}, {} -> {}", l(source), l(left), l(right), l(apex)),
            Constraint::CoproductCofibration { left, right, target } => {
                format!("cofibration {} ⊔ {} -> {}", l(left), l(right), l(target))
            }
        }
    }
}

/// Checks that `d` is a functor on `shape` satisfying every constraint.
pub fn validate(
    w: &WaldhausenInstance,
    shape: &Poset,
    constraints: &[Constraint],
    d: &Diagram,
) -> std::result::Result<(), String> {
    let cat = w.category();
    if d.objects.len() != shape.len() || d.arrows.len() != shape.pair_count() {
        return Err("diagram has the wrong shape".into());
    }
    for (p, &(a, b)) in shape.pairs().iter().enumerate() {
        let f = d.arrows[p];
        if (f as usize) >= cat.morphism_count() || cat.source(f) != d.objects[a] || cat.target(f) != d.objects[b] {
            return Err(format!("arrow {:?} -> {:?} has wrong endpoints", shape.label(a), shape.label(b)));
        }
        if a == b && !cat.is_identity(f) {
            return Err(format!("arrow at {:?} is not an identity", shape.label(a)));
        }
    }
    for &(a, b) in shape.pairs() {
        for c in 0..shape.len() {
            if shape.leq(b, c) && cat.comp(d.arrow(shape, b, c), d.arrow(shape, a, b)) != d.arrow(shape, a, c) {
                return Err(format!(
                    "composite through {:?} is not functorial",
                    shape.label(b)
                ));
            }
        }
    }
    for c in constraints {
        if !c.holds(w, shape, &d.objects, &d.arrows) {
            return Err(format!("violates {}", c.describe(shape)));
        }
    }
    Ok(())
}

/// Enumerates all diagrams of `shape` satisfying `constraints`, entry by entry
/// along the shape's linear extension, checking each constraint as soon as
/// its last entry is placed. Output order is lexicographic in (entry objects,
/// covering arrows) along that order.
pub fn enumerate_diagrams(
    w: &WaldhausenInstance,
    shape: &Poset,
    constraints: &[Constraint],
    limit: usize,
) -> Result<Vec<Diagram>> {
    let mut out = Vec::new();
    enumerate_extensions(w, shape, constraints, &Seed::empty(shape), limit, &mut out)?;
    Ok(out)
}

/// Entries and arrows fixed in advance.
#[derive(Clone, Debug)]
pub struct Seed {
    pub objects: Vec<Option<ObjId>>,
    pub arrows: Vec<Option<MorId>>,
}

impl Seed {
    pub fn empty(shape: &Poset) -> Self {
        Self {
            objects: vec![None; shape.len()],
            arrows: vec![None; shape.pair_count()],
        }
    }

    /// Fixes the restriction along `map : Q -> P` to be `d`.
    pub fn along(shape: &Poset, sub: &Poset, map: &[usize], d: &Diagram) -> Self {
        let mut seed = Self::empty(shape);
        for (x, &y) in map.iter().enumerate() {
            seed.objects[y] = Some(d.objects[x]);
        }
        for (p, &(a, b)) in sub.pairs().iter().enumerate() {
            seed.arrows[shape.pair(map[a], map[b]).unwrap()] = Some(d.arrows[p]);
        }
        seed
    }
}

/// Appends to `out` every valid diagram agreeing with `seed`.
pub fn enumerate_extensions(
    w: &WaldhausenInstance,
    shape: &Poset,
    constraints: &[Constraint],
    seed: &Seed,
    limit: usize,
    out: &mut Vec<Diagram>,
) -> Result<()> {
    let order = shape.linear_order();
    let mut position = vec![0; shape.len()];
    for (k, &x) in order.iter().enumerate() {
        position[x] = k;
    }
    let mut attached: Vec<Vec<&Constraint>> = vec![Vec::new(); shape.len()];
    let mut zero = vec![false; shape.len()];
    for c in constraints {
        if let Constraint::Zero(a) = c {
            zero[*a] = true;
        }
        let last = c.nodes().into_iter().max_by_key(|&x| position[x]).unwrap();
        attached[order[position[last]]].push(c);
    }
    if zero.iter().any(|&z| z) && w.zero().is_none() {
        return Err(Error::Precondition(format!("{} has no zero object", w.descriptor())));
    }
    let mut search = Search {
        w,
        shape,
        order,
        attached: &attached,
        zero: &zero,
        objects: vec![0; shape.len()],
        arrows: vec![UNSET; shape.pair_count()],
        seed,
        out,
        limit,
    };
    search.node(0)
}

struct Search<'a> {
    w: &'a WaldhausenInstance,
    shape: &'a Poset,
    order: &'a [usize],
    attached: &'a [Vec<&'a Constraint>],
    zero: &'a [bool],
    objects: Vec<ObjId>,
    arrows: Vec<MorId>,
    seed: &'a Seed,
    out: &'a mut Vec<Diagram>,
    limit: usize,
}

impl Search<'_> {
    fn node(&mut self, k: usize) -> Result<()> {
        if k == self.order.len() {
            if self.out.len() >= self.limit {
                return Err(Error::Resource {
                    context: "enumerating diagrams".into(),
                    reached: self.out.len() + 1,
                    limit: self.limit,
                });
            }
            self.out.push(Diagram {
                objects: self.objects.clone(),
                arrows: self.arrows.clone(),
            });
            return Ok(());
        }
        let b = self.order[k];
        let candidates: Vec<ObjId> = if let Some(x) = self.seed.objects[b] {
            if self.zero[b] && self.w.zero() != Some(x) {
                return Ok(());
            }
            vec![x]
        } else if self.zero[b] {
            vec![self.w.zero().unwrap()]
        } else {
            (0..self.w.object_count() as ObjId).collect()
        };
        for x in candidates {
            self.objects[b] = x;
            let id = self.shape.pair(b, b).unwrap();
            self.arrows[id] = self.w.id(x);
            self.cover(k, b, 0)?;
        }
        Ok(())
    }

    /// Chooses the arrow from the `i`-th lower cover of `b`.
    fn cover(&mut self, k: usize, b: usize, i: usize) -> Result<()> {
        let covers = self.shape.lower_covers(b);
        if i == covers.len() {
            let seeded = (0..self.shape.len()).filter(|&x| self.shape.leq(x, b)).all(|x| {
                    let p = self.shape.pair(x, b).unwrap();
                    self.seed.arrows[p].is_none_or(|f| f == self.arrows[p])
                });
            let ok = seeded
                && self.attached[b]
                .iter()
                .all(|c| c.holds(self.w, self.shape, &self.objects, &self.arrows));
            if ok {
                self.node(k + 1)?;
            }
            return Ok(());
        }
        let a = covers[i];
        let cat = self.w.category();
        let below: Vec<usize> = (0..self.shape.len())
            .filter(|&x| x != b && self.shape.leq(x, a))
            .collect();
        let homs = match self.seed.arrows[self.shape.pair(a, b).unwrap()] {
            Some(f) => vec![f],
            None => cat.homs(self.objects[a], self.objects[b]).to_vec(),
        };
        'arrow: for f in homs {
            let mut written = Vec::new();
            for &x in &below {
                let via = cat.comp(f, self.arrows[self.shape.pair(x, a).unwrap()]);
                let p = self.shape.pair(x, b).unwrap();
                if self.arrows[p] == UNSET {
                    self.arrows[p] = via;
                    written.push(p);
                } else if self.arrows[p] != via {
                    for p in written {
                        self.arrows[p] = UNSET;
                    }
                    continue 'arrow;
                }
            }
            self.cover(k, b, i + 1)?;
            for p in written {
                self.arrows[p] = UNSET;
            }
        }
        Ok(())
    }
}

/// The category of valid diagrams of one shape with natural transformations
/// as morphisms (or only the objectwise weak equivalences). Hom-sets are
/// computed on demand.
pub struct DiagramCategory<'a> {
    instance: &'a WaldhausenInstance,
    shape: Poset,
    constraints: Vec<Constraint>,
    objects: Vec<Diagram>,
    index: HashMap<Diagram, usize>,
    weq_only: bool,
    /// Objects grouped by the weak equivalence class of every node.
    buckets: Option<Arc<Buckets>>,
}

struct Buckets {
    of: Vec<usize>,
    members: Vec<Vec<usize>>,
}

/// A natural transformation, as its components in shape order.
pub type Components = Vec<MorId>;

impl<'a> DiagramCategory<'a> {
    pub fn enumerate(
        instance: &'a WaldhausenInstance,
        shape: Poset,
        constraints: Vec<Constraint>,
        limit: usize,
    ) -> Result<Self> {
        let objects = enumerate_diagrams(instance, &shape, &constraints, limit)?;
        Ok(Self::from_objects(instance, shape, constraints, objects))
    }

    pub fn from_objects(
        instance: &'a WaldhausenInstance,
        shape: Poset,
        constraints: Vec<Constraint>,
        objects: Vec<Diagram>,
    ) -> Self {
        let index = objects.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        Self {
            instance,
            shape,
            constraints,
            objects,
            index,
            weq_only: false,
            buckets: None,
        }
    }

    /// The same objects with only objectwise weak equivalences as morphisms.
    pub fn weq_subcategory(&self) -> Self {
        Self {
            instance: self.instance,
            shape: self.shape.clone(),
            constraints: self.constraints.clone(),
            objects: self.objects.clone(),
            index: self.index.clone(),
            weq_only: true,
            buckets: Some(Arc::new(self.weq_buckets())),
        }
    }

    fn weq_buckets(&self) -> Buckets {
        let cat = self.instance.category();
        let mut uf = UnionFind::new(cat.object_count());
        for f in 0..cat.morphism_count() as MorId {
            if self.instance.is_weq(f) {
                uf.union(cat.source(f) as usize, cat.target(f) as usize);
            }
        }
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        let of = self
            .objects
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let key: Vec<usize> = d.objects.iter().map(|&x| uf.find(x as usize)).collect();
                let next = ids.len();
                let b = *ids.entry(key).or_insert(next);
                if b == members.len() {
                    members.push(Vec::new());
                }
                members[b].push(i);
                b
            })
            .collect();
        Buckets { of, members }
    }

    pub fn instance(&self) -> &'a WaldhausenInstance {
        self.instance
    }

    pub fn shape(&self) -> &Poset {
        &self.shape
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_weq_only(&self) -> bool {
        self.weq_only
    }

    pub fn objects(&self) -> &[Diagram] {
        &self.objects
    }

    pub fn object(&self, i: usize) -> &Diagram {
        &self.objects[i]
    }

    pub fn index_of(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn validate(&self, d: &Diagram) -> std::result::Result<(), String> {
        validate(self.instance, &self.shape, &self.constraints, d)
    }

    /// Whether `c` is a morphism `a -> b` of this category.
    pub fn is_morphism(&self, a: usize, b: usize, c: &[MorId]) -> bool {
        let cat = self.instance.category();
        let (fa, fb) = (&self.objects[a], &self.objects[b]);
        (0..self.shape.len()).all(|x| {
            cat.source(c[x]) == fa.objects[x]
                && cat.target(c[x]) == fb.objects[x]
                && (!self.weq_only || self.instance.is_weq(c[x]))
        }) && self.shape.covering_pairs().iter().all(|&(x, y)| {
            cat.comp(fb.arrow(&self.shape, x, y), c[x]) == cat.comp(c[y], fa.arrow(&self.shape, x, y))
        })
    }

    /// Lists the objects and realizes the category explicitly, returning the
    /// components of each morphism id.
    pub fn materialize(&self) -> (FiniteCategory, Vec<Components>) {
        FiniteCategory::materialize(self, |i| format!("d{i}"))
    }

    pub fn to_canonical_json(&self) -> Value {
        json!({
            "objects": self.objects.iter().map(|d| d.to_canonical_json(&self.shape)).collect::<Vec<_>>(),
            "shape": self.shape.labels(),
            "weq_only": self.weq_only,
        })
    }
}

impl Category for DiagramCategory<'_> {
    type Mor = Components;

    fn object_count(&self) -> usize {
        self.objects.len()
    }

    fn hom(&self, a: usize, b: usize) -> Vec<Components> {
        let cat = self.instance.category();
        let (fa, fb) = (&self.objects[a], &self.objects[b]);
        let order = self.shape.linear_order();
        let mut out = Vec::new();
        let mut comps = vec![0 as MorId; self.shape.len()];
        fn rec(
            me: &DiagramCategory<'_>,
            cat: &FiniteCategory,
            fa: &Diagram,
            fb: &Diagram,
            order: &[usize],
            k: usize,
            comps: &mut Vec<MorId>,
            out: &mut Vec<Components>,
        ) {
            if k == order.len() {
                out.push(comps.clone());
                return;
            }
            let y = order[k];
            for &c in cat.homs(fa.objects[y], fb.objects[y]) {
                if me.weq_only && !me.instance.is_weq(c) {
                    continue;
                }
                let natural = me.shape.lower_covers(y).iter().all(|&x| {
                    cat.comp(fb.arrow(&me.shape, x, y), comps[x]) == cat.comp(c, fa.arrow(&me.shape, x, y))
                });
                if natural {
                    comps[y] = c;
                    rec(me, cat, fa, fb, order, k + 1, comps, out);
                }
            }
        }
        rec(self, cat, fa, fb, order, 0, &mut comps, &mut out);
        out.sort();
        out
    }

    fn compose(&self, g: &Components, f: &Components) -> Components {
        let cat = self.instance.category();
        g.iter().zip(f).map(|(&g, &f)| cat.comp(g, f)).collect()
    }

    fn identity(&self, a: usize) -> Components {
        self.objects[a].objects.iter().map(|&x| self.instance.id(x)).collect()
    }

    fn hom_candidates(&self, a: usize) -> Vec<usize> {
        match &self.buckets {
            Some(b) => b.members[b.of[a]].clone(),
            None => (0..self.objects.len()).collect(),
        }
    }
}

/// A functor between diagram categories given by restriction along a
/// monotone map of shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    /// Shape map, indexed by the target category's shape.
    pub map: Vec<usize>,
    /// Image of each source object.
    pub objects: Vec<usize>,
}

impl Restriction {
    /// Restricts every object of `source` and locates it in `target`.
    pub fn new(source: &DiagramCategory<'_>, target: &DiagramCategory<'_>, map: Vec<usize>) -> Result<Self> {
        if !target.shape().is_monotone_into(source.shape(), &map) {
            return Err(Error::Precondition("shape map is not monotone".into()));
        }
        let objects = source
            .objects()
            .iter()
            .map(|d| {
                let r = d.precompose(source.shape(), target.shape(), &map);
                target.index_of(&r).ok_or_else(|| {
                    let why = target.validate(&r).err().unwrap_or_else(|| "not enumerated".into());
                    Error::OperatorClosure(format!("restriction does not land in the target: {why}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { map, objects })
    }

    pub fn morphism(&self, c: &[MorId]) -> Components {
        self.map.iter().map(|&x| c[x]).collect()
    }

    /// `next ∘ self`: restrict along `self`, then along `next`.
    pub fn then(&self, next: &Restriction) -> Restriction {
        Restriction {
            map: next.map.iter().map(|&x| self.map[x]).collect(),
            objects: self.objects.iter().map(|&o| next.objects[o]).collect(),
        }
    }

    pub fn equivalence_report(
        &self,
        source: &DiagramCategory<'_>,
        target: &DiagramCategory<'_>,
    ) -> crate::fincat::EquivalenceReport {
        crate::fincat::is_equivalence(source, target, |a| self.objects[a], |c| self.morphism(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{enumerate_functors, ordinal_poset, EnumerationLimit};

    /// Generate-and-filter: every functor from the shape, then validation.
    fn oracle(w: &WaldhausenInstance, shape: &Poset, constraints: &[Constraint]) -> Vec<Diagram> {
        let fs = enumerate_functors(&shape.to_category(), w.category(), |_| true, EnumerationLimit::default()).unwrap();
        let mut out: Vec<Diagram> = fs
            .into_iter()
            .map(|f| Diagram {
                objects: f.objects,
                arrows: f.morphisms,
            })
            .filter(|d| validate(w, shape, constraints, d).is_ok())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn enumeration_matches_oracle_on_strings_of_cofibrations() {
        let w = WaldhausenInstance::finset_inj(2);
        let shape = ordinal_poset(2);
        let constraints = vec![Constraint::Cofibration(0, 1), Constraint::Cofibration(1, 2)];
        let mut got = enumerate_diagrams(&w, &shape, &constraints, 1 << 20).unwrap();
        got.sort();
        assert_eq!(got, oracle(&w, &shape, &constraints));
    }

    #[test]
    fn hom_sets_are_natural_transformations() {
        let w = WaldhausenInstance::finpointed(2).unwrap();
        let cat = DiagramCategory::enumerate(&w, ordinal_poset(1), vec![], 1000).unwrap();
        for a in 0..cat.object_count() {
            for b in 0..cat.object_count() {
                for c in cat.hom(a, b) {
                    assert!(cat.is_morphism(a, b, &c));
                }
            }
        }
        let (fc, _) = cat.materialize();
        fc.check_laws().unwrap();
    }

    #[test]
    fn weq_buckets_keep_every_morphism() {
        for w in [WaldhausenInstance::finpointed(2).unwrap(), WaldhausenInstance::finset_inj(2)] {
            let weq = DiagramCategory::enumerate(&w, ordinal_poset(2), vec![], 1 << 20).unwrap().weq_subcategory();
            let n = weq.object_count();
            let all: usize = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| weq.hom(a, b).len()).sum();
            assert_eq!(weq.materialize().1.len(), all);
        }
    }

    #[test]
    fn limit_is_enforced() {
        let w = WaldhausenInstance::finset_inj(2);
        let err = enumerate_diagrams(&w, &ordinal_poset(1), &[], 3).unwrap_err();
        assert!(matches!(err, Error::Resource { limit: 3, .. }));
    }
}
