//! Monomial ideals: edge ideals, powers, symbolic powers, colons.

pub mod ideal;
pub mod monomial;
pub mod symbolic;

pub use ideal::{MonomialIdeal, MAX_POWER, MAX_POWER_VARS};
pub use monomial::{Monomial, MAX_VARS};
pub use symbolic::{symbolic_membership, symbolic_power_by_intersection, symbolic_power_edge};
