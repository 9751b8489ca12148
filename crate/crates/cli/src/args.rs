use clap::{Args, Parser, Subcommand};
use meadow_core::Limits;

/// Build, check and decompose meadows of finite commutative rings.
///
/// A SOURCE is a ring spec (`zn:6`, `poly:p=2,mod=[1,1,1]`, `prod:(zn:2,zn:3)`,
/// `ga:base=zn:2,group=[2]`, `quot:zn:12/gens=[4]`), a group-algebra meadow
/// `gam:base=<spec>,group=[n1,...]`, or `custom-lattice <path.json>`.
#[derive(Debug, Parser)]
#[command(name = "meadow", version)]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,

    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Args)]
pub struct Flags {
    /// Graphviz output
    #[arg(long, global = true, conflicts_with = "json")]
    pub dot: bool,

    /// JSON output
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest ring order that may be built
    #[arg(long, global = true, value_name = "N")]
    pub cap: Option<usize>,

    /// Seed for sampled axiom checks
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,

    /// Sample axiom tuples even when an exhaustive sweep fits
    #[arg(long, global = true)]
    pub sampled: bool,
}

impl Flags {
    pub fn limits(&self) -> Limits {
        let mut l = Limits::default().sampled(self.sampled);
        if let Some(cap) = self.cap {
            l = l.with_size_cap(cap);
        }
        if let Some(seed) = self.seed {
            l = l.with_seed(seed);
        }
        l
    }
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Order, units and idempotents of a ring
    RingInfo { spec: String },
    /// Ideals of a ring, maximal ones marked
    Ideals { spec: String },
    /// Build a meadow and describe its lattice of rings
    MeadowBuild {
        #[arg(num_args = 1..=2, value_name = "SOURCE")]
        source: Vec<String>,
    },
    /// Check the pre-meadow, common-meadow and transition-map laws
    MeadowCheck {
        #[arg(num_args = 1..=2, value_name = "SOURCE")]
        source: Vec<String>,
    },
    /// Atoms of the lattice of fiber zeros, and locality
    MeadowAtoms {
        #[arg(num_args = 1..=2, value_name = "SOURCE")]
        source: Vec<String>,
    },
    /// Split M(R) into local factors (JSON)
    MeadowDecompose { spec: String },
    /// The product of two meadows
    MeadowProduct {
        #[arg(num_args = 2..=4, value_name = "SOURCE")]
        sources: Vec<String>,
    },
    /// The lattice of a meadow as Graphviz source
    LatticeDot {
        #[arg(num_args = 1..=2, value_name = "SOURCE")]
        source: Vec<String>,
    },
    /// Load a directed lattice from JSON and describe its meadow
    CustomLattice { path: String },
}
