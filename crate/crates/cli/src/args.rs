use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use torfan::exact::{Int, IntVec};

#[derive(Debug, Parser)]
#[command(name = "torfan", version, about = "Fiber fans, Hilbert fans and toric degenerations of affine toric varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Instance file (JSON).
    pub instance: PathBuf,

    /// Lattice-point enumeration budget per polyhedron.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load and validate an instance.
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// The real fiber over a character and its integer hull.
    Fiber {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        chi: IntVec,
    },
    /// Integrality of a character and its least integral multiple.
    Integral {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        chi: IntVec,
    },
    /// Chamber decomposition and the real fiber fan.
    GitFan {
        #[command(flatten)]
        common: Common,
    },
    /// Representatives, state polytope and Hilbert fan.
    HilbertFan {
        #[command(flatten)]
        common: Common,
        /// Also run the lambda-grid cross-check.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_name = "B", default_value_t = torfan::oracle::DEFAULT_GRID_BOUND)]
        oracle_bound: u32,
    },
    /// The fan of the universal family over the main component.
    FamilyFan {
        #[command(flatten)]
        common: Common,
    },
    /// Existence and data of the limit under a one-parameter subgroup.
    Limit {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        lambda: IntVec,
        /// Degree to evaluate (repeatable); defaults to the representatives,
        /// their pairwise sums and zero.
        #[arg(long = "degree", value_parser = parse_vector, allow_hyphen_values = true)]
        degrees: Vec<IntVec>,
    },
    /// Whether two one-parameter subgroups have the same limit.
    SameLimit {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        lambda1: IntVec,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        lambda2: IntVec,
    },
    /// Cones of cone(Sigma) on which the limit's degree function is linear.
    Subdivision {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        lambda: IntVec,
    },
    /// Full invariant suite and lambda-grid oracle.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "B", default_value_t = torfan::oracle::DEFAULT_GRID_BOUND)]
        oracle_bound: u32,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Validate { common }
            | Command::Fiber { common, .. }
            | Command::Integral { common, .. }
            | Command::GitFan { common }
            | Command::HilbertFan { common, .. }
            | Command::FamilyFan { common }
            | Command::Limit { common, .. }
            | Command::SameLimit { common, .. }
            | Command::Subdivision { common, .. }
            | Command::Check { common, .. } => common,
        }
    }
}

/// Comma-separated integers, e.g. `3`, `-1,2` or `[1, -2]`.
pub fn parse_vector(s: &str) -> Result<IntVec, String> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| t.trim().parse::<Int>().map_err(|_| format!("`{}` is not an integer", t.trim())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use torfan::exact::ivec;

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("3").unwrap(), ivec(&[3]));
        assert_eq!(parse_vector("-1, 2").unwrap(), ivec(&[-1, 2]));
        assert_eq!(parse_vector("[1,-2,0]").unwrap(), ivec(&[1, -2, 0]));
        assert_eq!(parse_vector("[]").unwrap(), ivec(&[]));
        assert!(parse_vector("1,x").is_err());
    }
}
