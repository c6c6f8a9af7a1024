use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Default seed for every randomized strategy.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Tier {
    Default,
    Slow,
    Nightly,
}

#[derive(Clone, Debug, PartialEq, Eq, Parser)]
#[command(name = "ramlab", version, about = "Exact checks for generator exponents, rigidity and specializations of covers")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Worker threads for parallel sections.
    #[arg(long, global = true, value_parser = clap::value_parser!(usize))]
    pub jobs: Option<usize>,
    /// Largest group order handled by full element enumeration.
    #[arg(long, default_value_t = 2_000_000, global = true)]
    pub enumeration_cap: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Args)]
pub struct GroupArg {
    /// Generator file or builtin name such as `PGL(2,7)`.
    #[arg(long)]
    pub group: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Args)]
pub struct CoverArg {
    /// Cover file, or the builtin `psl2_11`.
    #[arg(long)]
    pub cover: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Generator exponent with a certificate.
    Gexp(GroupArg),
    /// Conjugacy classes in canonical order.
    Classes(GroupArg),
    /// Generating-triple count and rational rigidity of a class triple.
    Rigid {
        #[command(flatten)]
        group: GroupArg,
        /// Element orders; each must determine a unique class.
        #[arg(long, value_delimiter = ',', required_unless_present = "classes", conflicts_with = "classes")]
        orders: Vec<u64>,
        /// Canonical class indices.
        #[arg(long, value_delimiter = ',')]
        classes: Vec<usize>,
    },
    /// The coprime-inertia criterion for a class tuple.
    CoprimeCriterion {
        #[command(flatten)]
        group: GroupArg,
        /// Element orders of the tuple.
        #[arg(long = "type", value_delimiter = ',', required_unless_present = "classes", conflicts_with = "classes")]
        orders: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        classes: Vec<usize>,
    },
    /// Branch points of a cover.
    Branch(CoverArg),
    /// Ramification type of a cover.
    Ramtype(CoverArg),
    /// Ramification type after a cyclic pullback.
    Pullback {
        /// Abstract type such as `2,2,3@inf,5@0`.
        #[arg(long = "type")]
        ramification: String,
        #[arg(long)]
        d: u32,
        /// The two points the pullback is totally ramified over.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        at: Vec<String>,
    },
    /// Inertia prediction for the specialization `t = a`.
    Predict {
        #[command(flatten)]
        cover: CoverArg,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Primes possibly ramified in every specialization.
    Udisc {
        #[command(flatten)]
        cover: CoverArg,
        #[arg(long = "as", value_delimiter = ',', allow_hyphen_values = true)]
        values: Vec<String>,
    },
    /// Integer specializations unramified at the given primes.
    Specialize {
        #[command(flatten)]
        cover: CoverArg,
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<u64>,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_candidates: u64,
    },
    /// The bundled claim suite.
    Suite {
        #[arg(long, value_enum, default_value = "default")]
        tier: Tier,
    },
}

/// Parses arguments and checks that named files exist.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = RunConfig::try_parse_from(argv)?;
    if let Some(path) = cfg.named_path() {
        if !path.exists() {
            return Err(clap::Error::raw(
                clap::error::ErrorKind::ValueValidation,
                format!("no such file: {}\n", path.display()),
            ));
        }
    }
    Ok(cfg)
}

/// Treats a source as a path when it names a file or looks like one.
pub(crate) fn as_path(source: &str) -> Option<PathBuf> {
    let p = PathBuf::from(source);
    let looks_like_path = source.contains('/') || source.contains('\\') || p.extension().is_some() && !source.contains('(');
    (p.is_file() || looks_like_path).then_some(p)
}

impl RunConfig {
    fn named_path(&self) -> Option<PathBuf> {
        match &self.command {
            Command::Gexp(g) | Command::Classes(g) => as_path(&g.group),
            Command::Rigid { group, .. } | Command::CoprimeCriterion { group, .. } => as_path(&group.group),
            Command::Branch(c) | Command::Ramtype(c) => as_path(&c.cover),
            Command::Predict { cover, .. } | Command::Udisc { cover, .. } | Command::Specialize { cover, .. } => {
                as_path(&cover.cover)
            }
            Command::Pullback { .. } | Command::Suite { .. } => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_group_is_not_a_path() {
        assert_eq!(as_path("A(5)"), None);
        assert_eq!(as_path("PSp(4,3).2"), None);
        assert!(as_path("data/g.txt").is_some());
    }
}
