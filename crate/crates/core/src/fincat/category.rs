use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use serde_json::{json, Value};

pub type ObjId = u32;
pub type MorId = u32;

/// Read access to a finite category whose hom-sets can be listed.
///
/// Implemented by explicit [`FiniteCategory`] values and by lazily built
/// functor categories, whose hom-sets are computed per pair.
pub trait Category {
    type Mor: Clone + Eq + Hash + Debug;

    fn object_count(&self) -> usize;
    fn hom(&self, a: usize, b: usize) -> Vec<Self::Mor>;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    fn identity(&self, a: usize) -> Self::Mor;

    /// Objects `b` for which `hom(a, b)` may be nonempty.
    fn hom_candidates(&self, a: usize) -> Vec<usize> {
        let _ = a;
        (0..self.object_count()).collect()
    }
}

type Composer = Arc<dyn Fn(MorId, MorId) -> MorId + Send + Sync>;

#[derive(Clone)]
enum Composition {
    Dense(Vec<MorId>),
    Sparse(HashMap<(MorId, MorId), MorId>),
    Computed(Composer),
}

const NONE: MorId = MorId::MAX;
const DENSE_LIMIT: usize = 2048;

/// An explicit finite category: numbered objects and morphisms, identities,
/// and a composition law.
#[derive(Clone)]
pub struct FiniteCategory {
    object_names: Vec<String>,
    sources: Vec<ObjId>,
    targets: Vec<ObjId>,
    identities: Vec<MorId>,
    homs: Vec<Vec<MorId>>,
    outgoing: Vec<Vec<MorId>>,
    composition: Composition,
    thin: bool,
}

fn outgoing_lists(n: usize, homs: &[Vec<MorId>]) -> Vec<Vec<MorId>> {
    (0..n)
        .map(|a| (0..n).flat_map(|b| homs[a * n + b].iter().copied()).collect())
        .collect()
}

impl Debug for FiniteCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteCategory")
            .field("objects", &self.object_names.len())
            .field("morphisms", &self.sources.len())
            .field("thin", &self.thin)
            .finish()
    }
}

impl FiniteCategory {
    /// Builds a category from morphism endpoints, identities and a composition
    /// function defined on composable pairs. Small categories get a dense
    /// composition table; larger ones keep the function.
    pub fn from_fn(
        object_names: Vec<String>,
        sources: Vec<ObjId>,
        targets: Vec<ObjId>,
        identities: Vec<MorId>,
        compose: impl Fn(MorId, MorId) -> MorId + Send + Sync + 'static,
    ) -> Self {
        let n = object_names.len();
        let m = sources.len();
        let mut homs = vec![Vec::new(); n * n];
        for f in 0..m {
            homs[sources[f] as usize * n + targets[f] as usize].push(f as MorId);
        }
        let thin = homs.iter().all(|h| h.len() <= 1);
        let composition = if m <= DENSE_LIMIT {
            let mut table = vec![NONE; m * m];
            for f in 0..m {
                let mid = targets[f] as usize;
                for b in 0..n {
                    for &g in &homs[mid * n + b] {
                        table[g as usize * m + f] = compose(g, f as MorId);
                    }
                }
            }
            Composition::Dense(table)
        } else {
            Composition::Computed(Arc::new(compose))
        };
        Self {
            outgoing: outgoing_lists(n, &homs),
            object_names,
            sources,
            targets,
            identities,
            homs,
            composition,
            thin,
        }
    }

    /// Builds a category from an explicit table of composites.
    pub fn from_composites(
        object_names: Vec<String>,
        sources: Vec<ObjId>,
        targets: Vec<ObjId>,
        identities: Vec<MorId>,
        composites: HashMap<(MorId, MorId), MorId>,
    ) -> Self {
        let n = object_names.len();
        let mut homs = vec![Vec::new(); n * n];
        for f in 0..sources.len() {
            homs[sources[f] as usize * n + targets[f] as usize].push(f as MorId);
        }
        let thin = homs.iter().all(|h| h.len() <= 1);
        Self {
            outgoing: outgoing_lists(n, &homs),
            object_names,
            sources,
            targets,
            identities,
            homs,
            composition: Composition::Sparse(composites),
            thin,
        }
    }

    /// Realizes any listable category explicitly, returning the morphism
    /// values in id order.
    pub fn materialize<C: Category>(c: &C, names: impl Fn(usize) -> String) -> (Self, Vec<C::Mor>) {
        let n = c.object_count();
        let mut morphisms = Vec::new();
        let mut sources = Vec::new();
        let mut targets = Vec::new();
        let mut index = HashMap::new();
        for a in 0..n {
            for b in c.hom_candidates(a) {
                for f in c.hom(a, b) {
                    index.insert((a, b, f.clone()), morphisms.len() as MorId);
                    morphisms.push(f);
                    sources.push(a as ObjId);
                    targets.push(b as ObjId);
                }
            }
        }
        let identities = (0..n)
            .map(|a| index[&(a, a, c.identity(a))])
            .collect();
        let mut by_source = vec![Vec::new(); n];
        for (g, &a) in sources.iter().enumerate() {
            by_source[a as usize].push(g);
        }
        let mut composites = HashMap::new();
        for f in 0..morphisms.len() {
            for &g in &by_source[targets[f] as usize] {
                let h = c.compose(&morphisms[g], &morphisms[f]);
                let key = (sources[f] as usize, targets[g] as usize, h);
                composites.insert((g as MorId, f as MorId), index[&key]);
            }
        }
        let cat = Self::from_composites(
            (0..n).map(names).collect(),
            sources,
            targets,
            identities,
            composites,
        );
        (cat, morphisms)
    }

    pub fn object_count(&self) -> usize {
        self.object_names.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.sources.len()
    }

    pub fn object_name(&self, a: ObjId) -> &str {
        &self.object_names[a as usize]
    }

    pub fn source(&self, f: MorId) -> ObjId {
        self.sources[f as usize]
    }

    pub fn target(&self, f: MorId) -> ObjId {
        self.targets[f as usize]
    }

    pub fn id(&self, a: ObjId) -> MorId {
        self.identities[a as usize]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities[self.sources[f as usize] as usize] == f
    }

    pub fn homs(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.homs[a as usize * self.object_count() + b as usize]
    }

    pub fn is_thin(&self) -> bool {
        self.thin
    }

    /// `g ∘ f`; panics if the pair is not composable.
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.try_comp(g, f)
            .unwrap_or_else(|| panic!("morphisms {g} and {f} are not composable"))
    }

    pub fn try_comp(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.targets[f as usize] != self.sources[g as usize] {
            return None;
        }
        match &self.composition {
            Composition::Dense(table) => {
                let h = table[g as usize * self.morphism_count() + f as usize];
                (h != NONE).then_some(h)
            }
            Composition::Sparse(map) => map.get(&(g, f)).copied(),
            Composition::Computed(c) => Some(c(g, f)),
        }
    }

    /// A two-sided inverse of `f`, if one exists.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (a, b) = (self.source(f), self.target(f));
        self.homs(b, a)
            .iter()
            .copied()
            .find(|&g| self.comp(g, f) == self.id(a) && self.comp(f, g) == self.id(b))
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    /// Exhaustive check of identities, endpoints, unit and associativity laws.
    pub fn check_laws(&self) -> std::result::Result<(), String> {
        let m = self.morphism_count() as MorId;
        for a in 0..self.object_count() as ObjId {
            let i = self.id(a);
            if self.source(i) != a || self.target(i) != a {
                return Err(format!("identity of object {a} has wrong endpoints"));
            }
        }
        for f in 0..m {
            let (a, b) = (self.source(f), self.target(f));
            if self.comp(self.id(b), f) != f || self.comp(f, self.id(a)) != f {
                return Err(format!("unit law fails for morphism {f}"));
            }
        }
        for f in 0..m {
            for &g in self.outgoing(self.target(f)) {
                let gf = self.comp(g, f);
                if self.source(gf) != self.source(f) || self.target(gf) != self.target(g) {
                    return Err(format!("composite {g}∘{f} has wrong endpoints"));
                }
                for &h in self.outgoing(self.target(g)) {
                    if self.comp(h, gf) != self.comp(self.comp(h, g), f) {
                        return Err(format!("associativity fails for {h}, {g}, {f}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Morphisms with the given source, grouped by target.
    pub fn outgoing(&self, a: ObjId) -> &[MorId] {
        &self.outgoing[a as usize]
    }

    pub fn to_canonical_json(&self) -> Value {
        let morphisms: Vec<Value> = (0..self.morphism_count() as MorId)
            .map(|f| json!([self.source(f), self.target(f)]))
            .collect();
        let mut composites = Vec::new();
        for f in 0..self.morphism_count() as MorId {
            for &g in self.outgoing(self.target(f)) {
                composites.push(json!([g, f, self.comp(g, f)]));
            }
        }
        json!({
            "composites": composites,
            "identities": self.identities,
            "morphisms": morphisms,
            "objects": self.object_names,
        })
    }
}

impl Category for FiniteCategory {
    type Mor = MorId;

    fn object_count(&self) -> usize {
        self.object_names.len()
    }

    fn hom(&self, a: usize, b: usize) -> Vec<MorId> {
        self.homs(a as ObjId, b as ObjId).to_vec()
    }

    fn compose(&self, g: &MorId, f: &MorId) -> MorId {
        self.comp(*g, *f)
    }

    fn identity(&self, a: usize) -> MorId {
        self.id(a as ObjId)
    }
}

/// The one-object category of a finite group given by its multiplication table.
pub fn group_category(order: usize, multiply: impl Fn(usize, usize) -> usize + Send + Sync + 'static) -> FiniteCategory {
    FiniteCategory::from_fn(
        vec!["*".to_string()],
        vec![0; order],
        vec![0; order],
        vec![0],
        move |g, f| multiply(g as usize, f as usize) as MorId,
    )
}

/// The cyclic group of order two as a one-object category.
pub fn cyclic_two() -> FiniteCategory {
    group_category(2, |a, b| (a + b) % 2)
}
