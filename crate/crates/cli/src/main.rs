//! `wcob`: enumerate finite cobordism and S-construction models, check
//! their structure, and compute the homology of their classifying spaces.

mod cache;
mod check;
mod compute;
mod config;
mod context;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use wcob_core::constructions::DEFAULT_DIAGRAM_LIMIT;
use wcob_core::wald::DEFAULT_GLUING_BUDGET;

use crate::cache::Cache;
use crate::check::Suite;
use crate::config::{ExperimentConfig, Format};
use crate::context::Context;
use crate::report::{Report, Table};

#[derive(Parser)]
#[command(name = "wcob", version, about = "Finite models of cobordism categories of Waldhausen categories")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Instance as NAME:N (finset_inj, finset_all, finpointed, broken_gluing).
    #[arg(long, global = true, default_value = "finpointed:2")]
    instance: String,
    /// Construction: cob, cob-sym, cob-po, cob-big or s.
    #[arg(long, global = true, default_value = "cob")]
    construction: String,
    /// Highest simplicial or homological degree.
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Truncation depth of nerves and constructions; defaults to degree + 1.
    #[arg(long, global = true)]
    trunc: Option<usize>,
    /// Ceiling on simplices enumerated per degree.
    #[arg(long, global = true, default_value_t = DEFAULT_DIAGRAM_LIMIT)]
    budget: usize,
    /// Ceiling on the simplices of any degree of a construction in use.
    #[arg(long, global = true, default_value_t = 200_000)]
    max_objects: usize,
    /// Gluing diagrams checked exhaustively before sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_GLUING_BUDGET)]
    gluing_budget: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cache directory; no caching when unset.
    #[arg(long, global = true, env = "WCOB_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a checker suite; exits 1 when any check fails.
    Check {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Count the simplices of a construction by degree.
    Enumerate,
    /// Homology of the diagonal of the nerve of weak equivalences.
    Homology {
        /// Also compute the total complex and compare.
        #[arg(long)]
        total: bool,
    },
    /// Compare the S-construction model with the cobordism model.
    CompareTau,
    /// Inspect or clean the cache directory.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// List entries with their verification status.
    Inspect,
    /// Delete corrupt, stale and quarantined entries.
    Gc {
        /// Delete every entry.
        #[arg(long)]
        all: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Enumerate => "enumerate",
            Command::Homology { .. } => "homology",
            Command::CompareTau => "compare-tau",
            Command::Cache { .. } => "cache",
        }
    }

    fn default_degree(&self) -> usize {
        match self {
            Command::Check { .. } | Command::Enumerate => 2,
            Command::Homology { .. } | Command::CompareTau | Command::Cache { .. } => 1,
        }
    }
}

fn config(common: Common, command: &Command) -> ExperimentConfig {
    let degree = common.degree.unwrap_or_else(|| command.default_degree());
    ExperimentConfig {
        instance: common.instance,
        construction: common.construction,
        degree,
        trunc: common.trunc.unwrap_or(degree + 1),
        budget: common.budget,
        max_objects: common.max_objects,
        gluing_budget: common.gluing_budget,
        seed: common.seed,
        format: common.format,
        cache_dir: common.cache_dir,
    }
}

fn cache_command(cx: &Context, action: &CacheAction) -> Result<Report> {
    let cache: &Cache = cx
        .cache
        .as_ref()
        .ok_or_else(|| anyhow!("no cache directory: pass --cache-dir or set WCOB_CACHE_DIR"))?;
    let mut table;
    let result = match action {
        CacheAction::Inspect => {
            let entries = cache.inspect()?;
            table = Table::new(&["file", "bytes", "status"]);
            for e in &entries {
                table.push(vec![e.file.clone(), e.bytes.to_string(), e.status.clone()]);
            }
            json!({ "action": "inspect", "entries": entries })
        }
        CacheAction::Gc { all } => {
            let removed = cache.gc(*all)?;
            table = Table::new(&["removed"]);
            for r in &removed {
                table.push(vec![r.clone()]);
            }
            json!({ "action": "gc", "all": all, "removed": removed })
        }
    };
    eprintln!("wcob: cache directory {}", cache.dir().display());
    Ok(Report::new("cache", &cx.config, None, result, table))
}

fn run(cli: Cli) -> Result<Report> {
    let cx = Context::new(config(cli.common, &cli.command))?;
    match &cli.command {
        Command::Check { suite } => check::check(&cx, *suite),
        Command::Enumerate => compute::enumerate(&cx),
        Command::Homology { total } => compute::homology_report(&cx, *total),
        Command::CompareTau => compute::compare_tau(&cx),
        Command::Cache { action } => cache_command(&cx, action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let start = Instant::now();
    let outcome = run(cli);
    eprintln!("wcob: {name} ran for {:.3} s", start.elapsed().as_secs_f64());
    match outcome {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = out.write_all(report.render().as_bytes()).and_then(|()| out.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("wcob: error: writing report: {e}");
                    return ExitCode::from(2);
                }
            }
            if report.passed == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("wcob: error: {e:#}");
            ExitCode::from(2)
        }
    }
}
