//! Multigraded Betti numbers and regularity of monomial ideals via upper
//! Koszul complexes over the lcm lattice.

pub mod additive;
pub mod complex;
pub mod engine;
pub mod field;
mod packed;

pub use additive::{fold_symbolic, regularity_additive, regularity_of_graph, symbolic_profile, PowerSpec};
pub use complex::SimplicialComplex;
pub use engine::{
    betti_table, lcm_lattice, regularity_quotient, regularity_with_witness, upper_koszul, BettiTable,
    EngineConfig, Regularity, RegularityWitness, DEFAULT_LATTICE_CAP,
};
pub use field::{Field, DEFAULT_PRIME};
