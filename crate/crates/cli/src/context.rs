use anyhow::{bail, Context as _, Result};
use serde_json::{json, Value};
use wcob_core::constructions::{ConstructionKind, DegreewiseCategoryObject, Diagram};
use wcob_core::wald::WaldhausenInstance;

use crate::cache::{Cache, Lookup};
use crate::config::ExperimentConfig;

/// A command's configuration together with its cache.
pub struct Context {
    pub config: ExperimentConfig,
    pub cache: Option<Cache>,
}

impl Context {
    pub fn new(config: ExperimentConfig) -> Result<Self> {
        config.validate()?;
        let cache = config.cache_dir.as_deref().map(Cache::open).transpose()?;
        Ok(Self { config, cache })
    }

    pub fn instance(&self) -> Result<WaldhausenInstance> {
        self.config.instance()
    }

    /// Enumerates `kind` over `w` through `depth`, through the cache when
    /// one is configured, and enforces the object ceiling.
    pub fn construction<'a>(
        &self,
        kind: ConstructionKind,
        w: &'a WaldhausenInstance,
        depth: usize,
    ) -> Result<DegreewiseCategoryObject<'a>> {
        let key = json!({
            "payload": "enumeration",
            "instance": w.descriptor().to_string(),
            "construction": kind.name(),
            "depth": depth,
            "budget": self.config.budget,
        });
        let x = match self.cached(&key)? {
            Some(bytes) => {
                let levels: Vec<Vec<Diagram>> = serde_json::from_slice(&bytes).context("decoding cached enumeration")?;
                DegreewiseCategoryObject::from_levels(kind, w, levels)?
            }
            None => {
                let x = DegreewiseCategoryObject::build(kind, w, depth, self.config.budget)?;
                if let Some(c) = &self.cache {
                    c.put(&key, &serde_json::to_vec(&x.simplices())?)?;
                }
                x
            }
        };
        for (n, &count) in x.counts().iter().enumerate() {
            if count > self.config.max_objects {
                bail!(
                    "{kind} over {} has {count} simplices in degree {n}, above the object ceiling {}",
                    w.descriptor(),
                    self.config.max_objects
                );
            }
        }
        Ok(x)
    }

    fn cached(&self, key: &Value) -> Result<Option<Vec<u8>>> {
        let Some(c) = &self.cache else { return Ok(None) };
        Ok(match c.get(key)? {
            Lookup::Hit(bytes) => {
                eprintln!("wcob: cache hit for {key}");
                Some(bytes)
            }
            Lookup::Miss => {
                eprintln!("wcob: cache miss for {key}");
                None
            }
            Lookup::Quarantined(why) => {
                eprintln!("wcob: warning: quarantined corrupt cache entry {why}; recomputing");
                None
            }
        })
    }
}
