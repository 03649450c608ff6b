use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::diagram::{enumerate_extensions, validate, Diagram, DiagramCategory, Restriction, Seed};
use super::shape::{twisted_in_tilde, ConstructionKind};
use crate::error::{Error, Result};
use crate::fincat::Category;
use crate::simplicial::{check_simplicial_identities, IdentityReport, OrdinalMap, TruncatedSimplicialSet};
use crate::wald::WaldhausenInstance;

/// Default ceiling on the number of simplices enumerated per degree.
pub const DEFAULT_DIAGRAM_LIMIT: usize = 1_000_000;

/// A simplicial (or semi-simplicial) object in finite categories, truncated
/// at a degree: one diagram category per degree, with operators acting by
/// restriction along shape maps.
pub struct DegreewiseCategoryObject<'a> {
    kind: ConstructionKind,
    instance: &'a WaldhausenInstance,
    levels: Vec<DiagramCategory<'a>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    /// Pairs (operator, simplex) re-validated.
    pub checked: usize,
    pub failures: Vec<String>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl<'a> DegreewiseCategoryObject<'a> {
    /// Enumerates every degree up to `depth`.
    pub fn build(kind: ConstructionKind, instance: &'a WaldhausenInstance, depth: usize, limit: usize) -> Result<Self> {
        if kind.needs_zero() && instance.zero().is_none() {
            return Err(Error::Precondition(format!(
                "{kind} needs a zero object, which {} does not have",
                instance.descriptor()
            )));
        }
        let mut levels = Vec::with_capacity(depth + 1);
        for n in 0..=depth {
            let level = match kind {
                ConstructionKind::CobBig => Self::big_level(instance, n, limit),
                _ => DiagramCategory::enumerate(instance, kind.shape(n), kind.constraints(n), limit),
            }
            .map_err(|e| match e {
                Error::Resource { reached, limit, .. } => Error::Resource {
                    context: format!("enumerating {kind} in degree {n}"),
                    reached,
                    limit,
                },
                e => e,
            })?;
            levels.push(level);
        }
        Ok(Self { kind, instance, levels })
    }

    /// Extends each `Cob` simplex over `Ãr[2n+1]`.
    fn big_level(instance: &'a WaldhausenInstance, n: usize, limit: usize) -> Result<DiagramCategory<'a>> {
        let kind = ConstructionKind::CobBig;
        let (shape, constraints) = (kind.shape(n), kind.constraints(n));
        let small = DiagramCategory::enumerate(
            instance,
            ConstructionKind::Cob.shape(n),
            ConstructionKind::Cob.constraints(n),
            limit,
        )?;
        let map = twisted_in_tilde(n);
        let mut out = Vec::new();
        for f in small.objects() {
            let seed = Seed::along(&shape, small.shape(), &map, f);
            enumerate_extensions(instance, &shape, &constraints, &seed, limit, &mut out)?;
        }
        out.sort();
        Ok(DiagramCategory::from_objects(instance, shape, constraints, out))
    }

    /// Rebuilds from simplices enumerated earlier, validating each one.
    pub fn from_levels(kind: ConstructionKind, instance: &'a WaldhausenInstance, levels: Vec<Vec<Diagram>>) -> Result<Self> {
        if kind.needs_zero() && instance.zero().is_none() {
            return Err(Error::Precondition(format!("{kind} needs a zero object")));
        }
        let levels = levels
            .into_iter()
            .enumerate()
            .map(|(n, objects)| {
                let (shape, constraints) = (kind.shape(n), kind.constraints(n));
                for d in &objects {
                    validate(instance, &shape, &constraints, d)
                        .map_err(|e| Error::Precondition(format!("stored {kind} simplex in degree {n}: {e}")))?;
                }
                Ok(DiagramCategory::from_objects(instance, shape, constraints, objects))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { kind, instance, levels })
    }

    /// The simplices of every degree.
    pub fn simplices(&self) -> Vec<Vec<Diagram>> {
        self.levels.iter().map(|l| l.objects().to_vec()).collect()
    }

    pub fn kind(&self) -> ConstructionKind {
        self.kind
    }

    pub fn instance(&self) -> &'a WaldhausenInstance {
        self.instance
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn is_semi(&self) -> bool {
        self.kind.is_semi()
    }

    pub fn level(&self, n: usize) -> &DiagramCategory<'a> {
        &self.levels[n]
    }

    pub fn count(&self, n: usize) -> usize {
        self.levels[n].object_count()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.object_count()).collect()
    }

    fn check_operator(&self, alpha: &OrdinalMap) -> Result<()> {
        if alpha.source().max(alpha.target()) > self.depth() {
            return Err(Error::Truncation {
                required: alpha.source().max(alpha.target()),
                available: self.depth(),
            });
        }
        if self.is_semi() && !alpha.is_injective() {
            return Err(Error::Precondition(format!("{} has no degeneracies", self.kind)));
        }
        Ok(())
    }

    /// The operator functor `X_n -> X_m` of `alpha : [m] -> [n]`.
    pub fn operator(&self, alpha: &OrdinalMap) -> Result<Restriction> {
        self.check_operator(alpha)?;
        let map = self.kind.shape_map(alpha)?;
        Restriction::new(&self.levels[alpha.target()], &self.levels[alpha.source()], map)
    }

    /// The simplicial set of objects.
    pub fn object_set(&self) -> Result<TruncatedSimplicialSet> {
        let counts = self.counts();
        let mut generators = std::collections::HashMap::new();
        let depth = self.depth();
        for n in 1..=depth {
            for i in 0..=n {
                let a = OrdinalMap::coface(n, i);
                generators.insert(a.clone(), self.operator(&a)?.objects);
            }
            if !self.is_semi() {
                for i in 0..n {
                    let a = OrdinalMap::codegeneracy(n - 1, i);
                    generators.insert(a.clone(), self.operator(&a)?.objects);
                }
            }
        }
        TruncatedSimplicialSet::from_action(counts, self.is_semi(), |a, x| generators[a][x])
    }

    pub fn check_identities(&self) -> Result<IdentityReport> {
        Ok(check_simplicial_identities(&self.object_set()?))
    }

    /// Re-validates the image of every simplex under every generating operator.
    pub fn check_operator_closure(&self) -> ClosureReport {
        let mut report = ClosureReport::default();
        let mut generators = Vec::new();
        for n in 1..=self.depth() {
            generators.extend((0..=n).map(|i| OrdinalMap::coface(n, i)));
            if !self.is_semi() {
                generators.extend((0..n).map(|i| OrdinalMap::codegeneracy(n - 1, i)));
            }
        }
        for alpha in generators {
            let (m, n) = (alpha.source(), alpha.target());
            let map = match self.kind.shape_map(&alpha) {
                Ok(map) => map,
                Err(e) => {
                    report.failures.push(format!("{alpha:?}: {e}"));
                    continue;
                }
            };
            let (src, tgt) = (&self.levels[n], &self.levels[m]);
            for d in src.objects() {
                report.checked += 1;
                let r = d.precompose(src.shape(), tgt.shape(), &map);
                if let Err(e) = validate(self.instance, tgt.shape(), tgt.constraints(), &r) {
                    report.failures.push(format!("{alpha:?} applied to {d:?}: {e}"));
                }
            }
        }
        report
    }

    pub fn to_canonical_json(&self) -> Value {
        json!({
            "construction": self.kind.name(),
            "instance": self.instance.descriptor().to_string(),
            "levels": self.levels.iter().map(|l| l.to_canonical_json()).collect::<Vec<_>>(),
        })
    }
}
