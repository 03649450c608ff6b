use std::path::PathBuf;

use anyhow::{bail, Result};
use serde::Serialize;
use wcob_core::constructions::ConstructionKind;
use wcob_core::wald::{InstanceDescriptor, WaldhausenInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
}

/// Everything a command depends on. Serialized into every report, except
/// the cache directory, which does not affect results.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub instance: String,
    pub construction: String,
    pub degree: usize,
    /// Depth of nerves and truncated constructions.
    pub trunc: usize,
    /// Ceiling on simplices enumerated per degree.
    pub budget: usize,
    /// Ceiling on the objects of any degree of a construction.
    pub max_objects: usize,
    pub gluing_budget: usize,
    pub seed: u64,
    pub format: Format,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let d = self.descriptor()?;
        if d.bound == 0 {
            bail!("instance size bound must be positive");
        }
        self.kind()?;
        for (name, v) in [
            ("--trunc", self.trunc),
            ("--budget", self.budget),
            ("--max-objects", self.max_objects),
            ("--gluing-budget", self.gluing_budget),
        ] {
            if v == 0 {
                bail!("{name} must be positive");
            }
        }
        Ok(())
    }

    pub fn descriptor(&self) -> Result<InstanceDescriptor> {
        Ok(self.instance.parse()?)
    }

    pub fn kind(&self) -> Result<ConstructionKind> {
        Ok(self.construction.parse()?)
    }

    pub fn instance(&self) -> Result<WaldhausenInstance> {
        Ok(WaldhausenInstance::from_descriptor(self.descriptor()?)?)
    }
}
