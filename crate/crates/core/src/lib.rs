//! Exact-rational toolkit for committees that trade contingent vote promises.
//!
//! A committee of `I` members decides between a reform and the status quo
//! under a `kappa`-majority rule. Before the vote, members may promise one
//! another transfers that are paid only if the reform passes (`r`) or only
//! if it fails (`s`). This crate decides which promise profiles are stable
//! against blocking coalitions, classifies committees into regimes,
//! characterizes and constructs stable profiles with the least total
//! transfer, runs the dispersion-minimizing selection procedure, and checks
//! all of it against an exact linear-programming oracle.
//!
//! Every quantity is an exact [`Rational`]; nothing in this crate touches
//! floating point.
//!
//! Member indices are 0-based positions in the committee's sorted order
//! (intensities non-decreasing). [`Committee::permutation`] maps them back to
//! the order in which the caller supplied them.

pub mod equilibrium;
pub mod error;
pub mod lp;
pub mod model;
pub mod rational;
pub mod selection;
pub mod stability;

pub use equilibrium::{
    aggregates, all_equilibria_across_aisle, canonical_equilibrium, circle_wagon_witness,
    classify, classify_transfer_pattern, critical_member, is_equilibrium, min_total_transfer,
    scale_committee, Aggregates, Condition, EquilibriumVerdict, Regime, TransferPattern,
    Violation,
};
pub use error::{Error, Result};
pub use lp::{lp_min_transfer, sample_equilibria, CoalitionFamily, LpSolution};
pub use model::{
    decision, ex_post_intensities, Coalition, Committee, Decision, IntensityProfile,
    PairedProfile, PromiseProfile,
};
pub use rational::{parse_rational, Rational};
pub use selection::{
    max_step, phi, run_selection, split_indices, SelectionStep, SelectionTrace,
};
pub use stability::{
    find_blocking_coalition, is_stable, is_stable_bruteforce, stability_margin,
    BlockingDeviation,
};
