use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{FiniteCategory, MorId, ObjId};

/// The concrete finite Waldhausen structures provided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    /// Finite sets, all functions; cofibrations injections, weqs bijections.
    FinsetInj,
    /// Finite sets with every map a weak equivalence.
    FinsetAll,
    /// Pointed finite sets (element 0 is the basepoint).
    Finpointed,
    /// Negative control: finite sets with weqs the injections, which breaks gluing.
    BrokenGluing,
}

impl InstanceKind {
    pub fn name(self) -> &'static str {
        match self {
            InstanceKind::FinsetInj => "finset_inj",
            InstanceKind::FinsetAll => "finset_all",
            InstanceKind::Finpointed => "finpointed",
            InstanceKind::BrokenGluing => "broken_gluing",
        }
    }
}

/// An instance name with its size bound, written `name:N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InstanceDescriptor {
    pub kind: InstanceKind,
    pub bound: usize,
}

impl fmt::Display for InstanceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.name(), self.bound)
    }
}

impl FromStr for InstanceDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::Unknown {
            kind: "instance",
            name: s.to_string(),
        };
        let (name, bound) = s.split_once(':').ok_or_else(unknown)?;
        let kind = match name.replace('-', "_").as_str() {
            "finset_inj" => InstanceKind::FinsetInj,
            "finset_all" => InstanceKind::FinsetAll,
            "finpointed" => InstanceKind::Finpointed,
            "broken_gluing" | "broken" => InstanceKind::BrokenGluing,
            _ => return Err(unknown()),
        };
        let bound = bound.parse().map_err(|_| unknown())?;
        Ok(Self { kind, bound })
    }
}

/// A cocone under a span, as produced by the pushout oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cocone {
    pub apex: ObjId,
    /// Leg out of the span's second object (the cobase-changed cofibration).
    pub from_x: MorId,
    /// Leg out of the cofibration's target.
    pub from_d: MorId,
}

/// A skeletal category of (pointed) finite sets of bounded size with a
/// Waldhausen structure.
///
/// Object `k` has `size(k)` elements `0, …, size(k)−1`. Morphisms are numbered
/// block by block over `(source, target)` pairs and lexicographically within
/// a block, so the function of a morphism is decoded arithmetically.
pub struct WaldhausenInstance {
    kind: InstanceKind,
    bound: usize,
    category: FiniteCategory,
    sizes: Arc<Vec<usize>>,
    offsets: Arc<Vec<u32>>,
    cofibration: Vec<bool>,
    weq: Vec<bool>,
    memo: Mutex<HashMap<[MorId; 4], bool>>,
}

impl fmt::Debug for WaldhausenInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WaldhausenInstance({})", self.descriptor())
    }
}

/// Shared morphism coding for pointed and unpointed finite sets.
#[derive(Clone)]
struct Coding {
    sizes: Arc<Vec<usize>>,
    offsets: Arc<Vec<u32>>,
    sources: Arc<Vec<ObjId>>,
    targets: Arc<Vec<ObjId>>,
    pointed: bool,
}

impl Coding {
    fn n(&self) -> usize {
        self.sizes.len()
    }

    fn block(&self, a: ObjId, b: ObjId) -> u32 {
        self.offsets[a as usize * self.n() + b as usize]
    }

    fn free(&self, a: ObjId) -> std::ops::Range<usize> {
        let start = usize::from(self.pointed);
        start..self.sizes[a as usize].max(start)
    }

    fn decode(&self, f: MorId) -> Vec<usize> {
        let (a, b) = (self.sources[f as usize], self.targets[f as usize]);
        let base = self.sizes[b as usize];
        let mut code = (f - self.block(a, b)) as usize;
        let size = self.sizes[a as usize];
        let mut values = vec![0; size];
        for i in self.free(a).rev() {
            values[i] = code % base;
            code /= base;
        }
        values
    }

    fn encode(&self, a: ObjId, b: ObjId, values: &[usize]) -> MorId {
        let base = self.sizes[b as usize];
        let code = self.free(a).fold(0usize, |acc, i| acc * base + values[i]);
        self.block(a, b) + code as u32
    }
}

fn build(kind: InstanceKind, bound: usize) -> Result<WaldhausenInstance> {
    let pointed = kind == InstanceKind::Finpointed;
    if pointed && bound == 0 {
        return Err(Error::Precondition("a pointed instance needs bound at least 1".into()));
    }
    let sizes: Vec<usize> = if pointed { (1..=bound).collect() } else { (0..=bound).collect() };
    let n = sizes.len();
    let mut offsets = vec![0u32; n * n];
    let mut sources = Vec::new();
    let mut targets = Vec::new();
    for a in 0..n {
        for b in 0..n {
            offsets[a * n + b] = sources.len() as u32;
            let free = sizes[a] - usize::from(pointed);
            let count = sizes[b].pow(free as u32);
            sources.extend(std::iter::repeat(a as ObjId).take(count));
            targets.extend(std::iter::repeat(b as ObjId).take(count));
        }
    }
    let coding = Coding {
        sizes: Arc::new(sizes),
        offsets: Arc::new(offsets),
        sources: Arc::new(sources),
        targets: Arc::new(targets),
        pointed,
    };
    let identities: Vec<MorId> = (0..n as ObjId)
        .map(|a| {
            let id: Vec<usize> = (0..coding.sizes[a as usize]).collect();
            coding.encode(a, a, &id)
        })
        .collect();
    let names = coding
        .sizes
        .iter()
        .map(|s| if pointed { format!("P{s}") } else { s.to_string() })
        .collect();
    let composer = coding.clone();
    let category = FiniteCategory::from_fn(
        names,
        coding.sources.to_vec(),
        coding.targets.to_vec(),
        identities,
        move |g, f| {
            let (vf, vg) = (composer.decode(f), composer.decode(g));
            let values: Vec<usize> = vf.iter().map(|&x| vg[x]).collect();
            composer.encode(composer.sources[f as usize], composer.targets[g as usize], &values)
        },
    );
    let m = coding.sources.len();
    let mut cofibration = vec![false; m];
    let mut weq = vec![false; m];
    for f in 0..m {
        let values = coding.decode(f as MorId);
        let target = coding.sizes[coding.targets[f] as usize];
        let injective = is_injective(&values);
        let bijective = injective && values.len() == target;
        cofibration[f] = injective;
        weq[f] = match kind {
            InstanceKind::FinsetInj | InstanceKind::Finpointed => bijective,
            InstanceKind::FinsetAll => true,
            InstanceKind::BrokenGluing => injective,
        };
    }
    Ok(WaldhausenInstance {
        kind,
        bound,
        category,
        sizes: coding.sizes,
        offsets: coding.offsets,
        cofibration,
        weq,
        memo: Mutex::new(HashMap::new()),
    })
}

fn is_injective(values: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::new();
    values.iter().all(|v| seen.insert(*v))
}

/// Union-find quotient of `0..n` by the given identifications, relabelled so
/// that classes are numbered in order of their least element.
fn canonical_quotient(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> (usize, Vec<usize>) {
    let mut classes = UnionFind::new(n);
    for (a, b) in pairs {
        classes.union(a, b);
    }
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut out = vec![0; n];
    for x in 0..n {
        let r = classes.find_mut(x);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        out[x] = label[r];
    }
    (count, out)
}

impl WaldhausenInstance {
    pub fn finset_inj(bound: usize) -> Self {
        build(InstanceKind::FinsetInj, bound).expect("unpointed instances accept any bound")
    }

    pub fn finset_all(bound: usize) -> Result<Self> {
        if bound == 0 {
            return Err(Error::Precondition("finset_all needs bound at least 1".into()));
        }
        build(InstanceKind::FinsetAll, bound)
    }

    pub fn finpointed(bound: usize) -> Result<Self> {
        build(InstanceKind::Finpointed, bound)
    }

    pub fn broken_gluing(bound: usize) -> Self {
        build(InstanceKind::BrokenGluing, bound).expect("unpointed instances accept any bound")
    }

    pub fn from_descriptor(d: InstanceDescriptor) -> Result<Self> {
        build(d.kind, d.bound)
    }

    pub fn descriptor(&self) -> InstanceDescriptor {
        InstanceDescriptor {
            kind: self.kind,
            bound: self.bound,
        }
    }

    pub fn kind(&self) -> InstanceKind {
        self.kind
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn is_pointed(&self) -> bool {
        self.kind == InstanceKind::Finpointed
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn object_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn size(&self, a: ObjId) -> usize {
        self.sizes[a as usize]
    }

    pub fn object_of_size(&self, size: usize) -> Option<ObjId> {
        self.sizes.iter().position(|&s| s == size).map(|a| a as ObjId)
    }

    /// The zero object, for pointed instances.
    pub fn zero(&self) -> Option<ObjId> {
        self.is_pointed().then_some(0)
    }

    /// The initial object: the empty set, or the one-point set when pointed.
    pub fn initial(&self) -> ObjId {
        0
    }

    pub fn source(&self, f: MorId) -> ObjId {
        self.category.source(f)
    }

    pub fn target(&self, f: MorId) -> ObjId {
        self.category.target(f)
    }

    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.category.comp(g, f)
    }

    pub fn id(&self, a: ObjId) -> MorId {
        self.category.id(a)
    }

    pub fn is_cofibration(&self, f: MorId) -> bool {
        self.cofibration[f as usize]
    }

    pub fn is_weq(&self, f: MorId) -> bool {
        self.weq[f as usize]
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.cofibration[f as usize] && self.size(self.source(f)) == self.size(self.target(f))
    }

    fn coding(&self) -> Coding {
        Coding {
            sizes: self.sizes.clone(),
            offsets: self.offsets.clone(),
            sources: Arc::new(Vec::new()),
            targets: Arc::new(Vec::new()),
            pointed: self.is_pointed(),
        }
    }

    /// The underlying function of a morphism (all elements, basepoint included).
    pub fn function(&self, f: MorId) -> Vec<usize> {
        let (a, b) = (self.source(f), self.target(f));
        let c = self.coding();
        let base = self.size(b);
        let mut code = (f - c.block(a, b)) as usize;
        let mut values = vec![0; self.size(a)];
        for i in c.free(a).rev() {
            values[i] = code % base;
            code /= base;
        }
        values
    }

    /// The morphism `a -> b` with the given function; `None` if it is not one
    /// (out of range, or not basepoint-preserving).
    pub fn morphism(&self, a: ObjId, b: ObjId, values: &[usize]) -> Option<MorId> {
        let tb = self.size(b);
        if values.len() != self.size(a) || values.iter().any(|&v| v >= tb) {
            return None;
        }
        if self.is_pointed() && values[0] != 0 {
            return None;
        }
        Some(self.coding().encode(a, b, values))
    }

    fn object_for(&self, size: usize) -> Result<ObjId> {
        self.object_of_size(size).ok_or(Error::SizeBound {
            size,
            bound: self.bound,
        })
    }

    /// The canonical pushout of a cofibration `c : C ↣ D` along `f : C -> X`:
    /// the quotient of the ordered disjoint union `X ⊔ D`, classes ordered by
    /// least element.
    pub fn pushout(&self, c: MorId, f: MorId) -> Result<Cocone> {
        if self.source(c) != self.source(f) {
            return Err(Error::Precondition("span legs have different sources".into()));
        }
        if !self.is_cofibration(c) {
            return Err(Error::Precondition("pushouts are taken along cofibrations".into()));
        }
        let (x, d) = (self.target(f), self.target(c));
        let (nx, nd) = (self.size(x), self.size(d));
        let (vc, vf) = (self.function(c), self.function(f));
        let (classes, label) = canonical_quotient(nx + nd, vc.iter().zip(&vf).map(|(&dc, &xc)| (xc, nx + dc)));
        let apex = self.object_for(classes)?;
        let from_x = self.morphism(x, apex, &label[..nx]).expect("leg is a morphism");
        let from_d = self.morphism(d, apex, &label[nx..]).expect("leg is a morphism");
        Ok(Cocone { apex, from_x, from_d })
    }

    /// Whether the commutative square `g ∘ f = h ∘ c` (span `X ← C -> D`,
    /// cocone `X -> P <- D`) is a pushout in the bounded category, decided by
    /// the universal property against every object.
    pub fn is_pushout(&self, c: MorId, f: MorId, g: MorId, h: MorId) -> bool {
        let key = [c, f, g, h];
        if let Some(&v) = self.memo.lock().unwrap().get(&key) {
            return v;
        }
        let v = self.decide_pushout(c, f, g, h);
        self.memo.lock().unwrap().insert(key, v);
        v
    }

    fn decide_pushout(&self, c: MorId, f: MorId, g: MorId, h: MorId) -> bool {
        let cat = &self.category;
        if cat.try_comp(g, f).is_none() || cat.try_comp(h, c).is_none() || cat.comp(g, f) != cat.comp(h, c) {
            return false;
        }
        if cat.is_identity(c) {
            return self.is_iso(g);
        }
        if cat.is_identity(f) {
            return self.is_iso(h);
        }
        let (x, d, p) = (self.target(f), self.target(c), self.target(g));
        for t in 0..self.object_count() as ObjId {
            let mut by_restriction: HashMap<MorId, usize> = HashMap::new();
            for &u in cat.homs(x, t) {
                *by_restriction.entry(cat.comp(u, f)).or_default() += 1;
            }
            let compatible: usize = cat
                .homs(d, t)
                .iter()
                .map(|&v| by_restriction.get(&cat.comp(v, c)).copied().unwrap_or(0))
                .sum();
            let from_p = cat.homs(p, t);
            if from_p.len() != compatible {
                return false;
            }
            let mut seen = std::collections::HashSet::new();
            if !from_p.iter().all(|&w| seen.insert((cat.comp(w, g), cat.comp(w, h)))) {
                return false;
            }
        }
        true
    }

    /// The map out of a pushout `(g, h)` into another cocone `(g2, h2)` on the
    /// same span, computed elementwise.
    pub fn mediating(&self, g: MorId, h: MorId, g2: MorId, h2: MorId) -> Option<MorId> {
        let p = self.target(g);
        let q = self.target(g2);
        let mut values = vec![None; self.size(p)];
        for (leg, other) in [(g, g2), (h, h2)] {
            for (&to_p, &to_q) in self.function(leg).iter().zip(&self.function(other)) {
                match values[to_p] {
                    None => values[to_p] = Some(to_q),
                    Some(v) if v != to_q => return None,
                    _ => {}
                }
            }
        }
        let values: Option<Vec<usize>> = values.into_iter().collect();
        self.morphism(p, q, &values?)
    }

    /// The coproduct `A ⊔ B` (wedge when pointed) with its inclusions.
    pub fn coproduct(&self, a: ObjId, b: ObjId) -> Result<(ObjId, MorId, MorId)> {
        let (na, nb) = (self.size(a), self.size(b));
        let shared = usize::from(self.is_pointed());
        let s = self.object_for(na + nb - shared)?;
        let ia: Vec<usize> = (0..na).collect();
        let ib: Vec<usize> = (0..nb).map(|y| if y < shared { 0 } else { na + y - shared }).collect();
        Ok((s, self.morphism(a, s, &ia).unwrap(), self.morphism(b, s, &ib).unwrap()))
    }

    /// The coproduct of `a` and `b` in the bounded category: the canonical
    /// one when it fits the bound, otherwise the first cocone that has the
    /// universal property among the objects present.
    pub fn bounded_coproduct(&self, a: ObjId, b: ObjId) -> Option<(ObjId, MorId, MorId)> {
        match self.coproduct(a, b) {
            Ok(c) => return Some(c),
            Err(Error::SizeBound { .. }) => {}
            Err(_) => return None,
        }
        let cat = &self.category;
        let init = self.initial();
        let (ia, ib) = (cat.homs(init, a)[0], cat.homs(init, b)[0]);
        (0..self.object_count() as ObjId).find_map(|s| {
            cat.homs(a, s).iter().find_map(|&inl| {
                cat.homs(b, s)
                    .iter()
                    .find(|&&inr| self.is_pushout(ia, ib, inl, inr))
                    .map(|&inr| (s, inl, inr))
            })
        })
    }

    /// Whether the copairing `A ⊔ B -> Z` of `u : A -> Z` and `v : B -> Z` is
    /// a cofibration, with `⊔` the coproduct of the bounded category. False
    /// when that coproduct does not exist.
    pub fn copairing_is_cofibration(&self, u: MorId, v: MorId) -> bool {
        let (a, b, z) = (self.source(u), self.source(v), self.target(u));
        if self.target(v) != z {
            return false;
        }
        let Some((s, inl, inr)) = self.bounded_coproduct(a, b) else {
            return false;
        };
        let cat = &self.category;
        cat.homs(s, z)
            .iter()
            .find(|&&w| cat.comp(w, inl) == u && cat.comp(w, inr) == v)
            .is_some_and(|&w| self.is_cofibration(w))
    }

    pub fn has_factorization(&self) -> bool {
        self.kind == InstanceKind::FinsetAll
    }

    /// Functorial factorization `A ↣ A ⊔ B -> B` of `f : A -> B` (mapping
    /// cylinder); the second map is `f` on `A` and the identity on `B`.
    pub fn factor(&self, f: MorId) -> Result<(MorId, MorId)> {
        if !self.has_factorization() {
            return Err(Error::Precondition(format!(
                "{} has no functorial factorization",
                self.descriptor()
            )));
        }
        let (a, b) = (self.source(f), self.target(f));
        let (cyl, ia, _) = self.coproduct(a, b)?;
        let mut values = self.function(f);
        values.extend(0..self.size(b));
        Ok((ia, self.morphism(cyl, b, &values).unwrap()))
    }

    /// The induced map of factorization middles for a commuting square
    /// `v ∘ f = f2 ∘ u`: it is `u ⊔ v`.
    pub fn factor_map(&self, f: MorId, f2: MorId, u: MorId, v: MorId) -> Result<MorId> {
        let (c1, _) = self.factor(f)?;
        let (c2, _) = self.factor(f2)?;
        let (m1, m2) = (self.target(c1), self.target(c2));
        let shift = self.size(self.source(f2));
        let mut values = self.function(u);
        values.extend(self.function(v).into_iter().map(|y| y + shift));
        self.morphism(m1, m2, &values)
            .ok_or_else(|| Error::Precondition("square does not fit the bound".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(w: &WaldhausenInstance, size: usize) -> ObjId {
        w.object_of_size(size).unwrap()
    }

    #[test]
    fn category_laws_and_counts() {
        let w = WaldhausenInstance::finset_inj(2);
        w.category().check_laws().unwrap();
        // Σ b^a over a, b ≤ 2.
        assert_eq!(w.category().morphism_count(), 3 + 3 + 5);
        let p = WaldhausenInstance::finpointed(2).unwrap();
        p.category().check_laws().unwrap();
        assert_eq!(p.category().morphism_count(), 5);
    }

    #[test]
    fn function_roundtrip() {
        let w = WaldhausenInstance::finset_inj(3);
        for f in 0..w.category().morphism_count() as MorId {
            let v = w.function(f);
            assert_eq!(w.morphism(w.source(f), w.target(f), &v), Some(f));
        }
    }

    #[test]
    fn pushout_examples() {
        let w = WaldhausenInstance::finset_inj(3);
        let (one, two) = (set(&w, 1), set(&w, 2));
        let inc = w.morphism(one, two, &[0]).unwrap();
        let po = w.pushout(inc, w.id(one)).unwrap();
        assert_eq!(w.size(po.apex), 2);
        assert!(w.is_pushout(inc, w.id(one), po.from_x, po.from_d));
        let empty = set(&w, 0);
        let e1 = w.morphism(empty, one, &[]).unwrap();
        let e2 = w.morphism(empty, two, &[]).unwrap();
        assert_eq!(w.size(w.pushout(e2, e1).unwrap().apex), 3);
        // Oracle: {0,1} ⊔ {0,1} glued along 0 ~ 1 has three classes.
        let hit1 = w.morphism(one, two, &[1]).unwrap();
        let po = w.pushout(inc, hit1).unwrap();
        assert_eq!(w.size(po.apex), 3);
        assert_eq!(w.function(po.from_x), vec![0, 1]);
        assert_eq!(w.function(po.from_d), vec![1, 2]);
        assert!(w.is_pushout(inc, hit1, po.from_x, po.from_d));
    }

    #[test]
    fn pushout_is_deterministic() {
        let w = WaldhausenInstance::finset_inj(3);
        let (one, two) = (set(&w, 1), set(&w, 2));
        let inc = w.morphism(one, two, &[1]).unwrap();
        let f = w.morphism(one, two, &[0]).unwrap();
        let again = WaldhausenInstance::finset_inj(3);
        assert_eq!(w.pushout(inc, f).unwrap(), again.pushout(inc, f).unwrap());
    }

    #[test]
    fn pointed_basics() {
        let p = WaldhausenInstance::finpointed(2).unwrap();
        let z = p.zero().unwrap();
        for a in 0..2 {
            assert_eq!(p.category().homs(a, z).len(), 1);
            assert_eq!(p.category().homs(z, a).len(), 1);
        }
        let p2 = set(&p, 2);
        // Cofiber of the identity is the zero object.
        let to_zero = p.category().homs(p2, z)[0];
        let po = p.pushout(p.id(p2), to_zero).unwrap();
        assert_eq!(po.apex, z);
        // Cofiber of P1 ↣ P2 is P2.
        let inc = p.category().homs(z, p2)[0];
        let po = p.pushout(inc, p.id(z)).unwrap();
        assert_eq!(po.apex, p2);
        assert!(matches!(
            WaldhausenInstance::finpointed(2).unwrap().coproduct(p2, p2),
            Err(Error::SizeBound { size: 3, .. })
        ));
    }

    #[test]
    fn non_pushout_rejected() {
        let w = WaldhausenInstance::finset_inj(2);
        let (e, one) = (set(&w, 0), set(&w, 1));
        let e1 = w.morphism(e, one, &[]).unwrap();
        // {0} with both legs the identity is not the coproduct {0} ⊔ {0}.
        assert!(!w.is_pushout(e1, e1, w.id(one), w.id(one)));
        // In the bound-1 category it is: no object can tell the points apart.
        let w1 = WaldhausenInstance::finset_inj(1);
        let e1 = w1.morphism(0, 1, &[]).unwrap();
        assert!(w1.is_pushout(e1, e1, w1.id(1), w1.id(1)));
    }

    #[test]
    fn factorization_recipe_and_functoriality() {
        let w = WaldhausenInstance::finset_all(4).unwrap();
        let two = set(&w, 2);
        let (c, q) = w.factor(w.id(two)).unwrap();
        assert_eq!(w.size(w.target(c)), 4);
        assert!(w.is_cofibration(c) && w.is_weq(q));
        assert_eq!(w.comp(q, c), w.id(two));
        let one = set(&w, 1);
        let f = w.morphism(one, one, &[0]).unwrap();
        let f2 = w.morphism(two, one, &[0, 0]).unwrap();
        let u = w.morphism(one, two, &[1]).unwrap();
        let v = w.id(one);
        assert_eq!(w.comp(v, f), w.comp(f2, u));
        let m = w.factor_map(f, f2, u, v).unwrap();
        let (c1, q1) = w.factor(f).unwrap();
        let (c2, q2) = w.factor(f2).unwrap();
        assert_eq!(w.comp(m, c1), w.comp(c2, u));
        assert_eq!(w.comp(q2, m), w.comp(v, q1));
        assert!(WaldhausenInstance::finset_inj(2).factor(0).is_err());
    }

    #[test]
    fn coproducts_beyond_the_bound() {
        let w = WaldhausenInstance::finset_inj(1);
        let one = set(&w, 1);
        let (s, inl, inr) = w.bounded_coproduct(one, one).unwrap();
        assert_eq!((s, inl, inr), (one, w.id(one), w.id(one)));
        assert!(w.copairing_is_cofibration(w.id(one), w.id(one)));
        let w = WaldhausenInstance::finset_inj(2);
        let two = set(&w, 2);
        assert!(w.bounded_coproduct(two, set(&w, 1)).is_none());
        let (s, ..) = w.bounded_coproduct(set(&w, 1), set(&w, 1)).unwrap();
        assert_eq!(w.size(s), 2);
    }

    #[test]
    fn descriptors() {
        let d: InstanceDescriptor = "finpointed:2".parse().unwrap();
        assert_eq!(d.to_string(), "finpointed:2");
        assert!("nope:2".parse::<InstanceDescriptor>().is_err());
        assert!("finset_inj".parse::<InstanceDescriptor>().is_err());
    }
}
