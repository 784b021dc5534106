use std::path::PathBuf;

use clap::{Args, ValueEnum};
use knotder_core::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Settings shared by every subcommand.
#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "KNOTDER_OUTPUT", default_value = "text")]
    pub output: OutputFormat,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "KNOTDER_JOBS", value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Maximum backtracking nodes per search task.
    #[arg(long, global = true, env = "KNOTDER_NODE_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    pub node_budget: Option<u64>,
    /// Maximum order of any permutation group.
    #[arg(long, global = true, env = "KNOTDER_MAX_GROUP_ORDER", value_parser = clap::value_parser!(u64).range(1..))]
    pub max_group_order: Option<u64>,
    /// Directory for memoized automorphism groups and action lists.
    #[arg(long, global = true, env = "KNOTDER_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
}

pub struct Config {
    pub output: OutputFormat,
    pub limits: Limits,
}

impl GlobalArgs {
    pub fn config(&self) -> Config {
        let mut limits = Limits::default();
        if let Some(b) = self.node_budget {
            limits.node_budget = b;
        }
        if let Some(m) = self.max_group_order {
            limits.max_group_order = m as usize;
        }
        Config { output: self.output, limits }
    }
}
