//! Regimes, least-cost stable profiles, and how transfers flow in them.
//!
//! Throughout, an "equilibrium" is a stable reform-contingent profile whose
//! total transfer is as small as any stable profile's.

mod aggregates;
mod aisle;
mod construct;
mod verdict;

pub use aggregates::{aggregates, classify, critical_member, min_total_transfer, Aggregates, Regime};
pub use aisle::{
    all_equilibria_across_aisle, circle_wagon_witness, classify_transfer_pattern, TransferPattern,
};
pub use construct::{canonical_equilibrium, scale_committee};
pub use verdict::{is_equilibrium, Condition, EquilibriumVerdict, Violation};
