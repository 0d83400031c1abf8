//! Phylogenetic diversity maximization under food-web viability constraints.
//!
//! A budget of `k` species must be chosen so that the chosen set is viable
//! (every member can feed on another member or is a sink of the food web)
//! and the phylogenetic diversity of the set is as large as possible.

pub mod error;
pub mod instance;
pub mod oracle;
pub mod random;
pub mod reductions;
pub mod report;
pub mod scalar;
pub mod solvers;
pub mod species;
pub mod tree;
pub mod viability;
pub mod web;

pub use error::{Error, Position, Result};
pub use instance::Instance;
pub use oracle::{AdditiveOracle, CachedOracle, PdOracle, SubmodularOracle};
pub use report::Report;
pub use scalar::Weight;
pub use solvers::{solve, solve_with, Algorithm, Limits, SolveReport, SolverConfig};
pub use species::{Species, SpeciesSet};
pub use tree::{PhyloTree, TreeBuilder};
pub use viability::{cost, is_viable, truncated_depth, viable_extension, DepthInfo, Extender};
pub use web::{FoodWeb, Mode};

pub type PhyloTreeU64 = PhyloTree<u64>;
pub type InstanceU64 = Instance<u64>;
pub type PdOracleU64<'t> = PdOracle<'t, u64>;
pub type SolveReportU64 = SolveReport<u64>;

pub type PhyloTreeU32 = PhyloTree<u32>;
pub type InstanceU32 = Instance<u32>;
pub type PdOracleU32<'t> = PdOracle<'t, u32>;
