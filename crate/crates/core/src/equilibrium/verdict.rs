use super::aggregates::{aggregates, Regime};
use crate::error::Result;
use crate::model::{reform_payoffs, Committee, PromiseProfile};
use crate::rational::sum;
use num_traits::{Signed, Zero};
use std::fmt;

/// The named conditions a least-cost stable profile must meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// A promiser pays more than its own intensity: `r_j < -u_j`.
    IndividualRationality,
    /// A promisee pays, or a promiser receives.
    SignPattern,
    /// A promisee ends above a promiser, or above the equalized level.
    Ordering,
    /// Total transfer differs from the minimum.
    Total,
    /// An ex-post intensity misses the level it is pinned to.
    Equalization,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::IndividualRationality => "individual-rationality",
            Condition::SignPattern => "sign-pattern",
            Condition::Ordering => "ordering",
            Condition::Total => "total",
            Condition::Equalization => "equalization",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed condition and the sorted positions that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumVerdict {
    pub regime: Regime,
    pub violations: Vec<Violation>,
}

impl EquilibriumVerdict {
    pub fn is_equilibrium(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, condition: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }
}

#[derive(Default)]
struct Collector(Vec<Violation>);

impl Collector {
    fn flag(&mut self, condition: Condition, members: Vec<usize>) {
        if !members.is_empty() {
            self.0.push(Violation { condition, members });
        }
    }

    fn flag_if(&mut self, failed: bool, condition: Condition, members: Vec<usize>) {
        if failed {
            self.0.push(Violation { condition, members });
        }
    }
}

/// Tests `r` against the characterization for the committee's regime.
///
/// A profile passes iff it is stable and its total transfer equals
/// [`super::min_total_transfer`].
pub fn is_equilibrium(committee: &Committee, r: &PromiseProfile) -> Result<EquilibriumVerdict> {
    committee.check_len(r.len())?;
    let agg = aggregates(committee);
    let u = committee.intensities();
    let v = reform_payoffs(committee, r);
    let size = committee.size();
    let n = agg.opponents;
    let mut out = Collector::default();

    // promisers at `split..` pay at most their own intensity and receive nothing
    let promisers_ok = |out: &mut Collector, split: usize| {
        out.flag(
            Condition::SignPattern,
            (split..size).filter(|&j| r[j].is_positive()).collect(),
        );
        out.flag(
            Condition::IndividualRationality,
            (split..size).filter(|&j| r[j] < -&u[j]).collect(),
        );
    };
    let promisees_ok = |out: &mut Collector, split: usize| {
        out.flag(
            Condition::SignPattern,
            (0..split).filter(|&i| r[i].is_negative()).collect(),
        );
    };
    let ordered_across = |out: &mut Collector, split: usize| {
        let hi = (0..split).max_by(|&a, &b| v[a].cmp(&v[b]).then(b.cmp(&a)));
        let lo = (split..size).min_by(|&a, &b| v[a].cmp(&v[b]).then(a.cmp(&b)));
        if let (Some(hi), Some(lo)) = (hi, lo) {
            out.flag_if(v[hi] > v[lo], Condition::Ordering, vec![hi, lo]);
        }
    };

    match agg.regime {
        Regime::FrustratedDeep | Regime::FrustratedPivotal => {
            promisers_ok(&mut out, n);
            out.flag_if(
                sum(&r.values()[n..]) != -&agg.u_s,
                Condition::Total,
                (n..size).collect(),
            );
            if agg.regime == Regime::FrustratedDeep {
                out.flag(
                    Condition::Equalization,
                    (0..n).filter(|&i| !v[i].is_zero()).collect(),
                );
            } else {
                promisees_ok(&mut out, n);
                ordered_across(&mut out, n);
            }
        }
        Regime::NoGainsFromTrade => {
            out.flag(
                Condition::Total,
                (0..size).filter(|&i| !r[i].is_zero()).collect(),
            );
        }
        Regime::FirstOrderPreemption => {
            let split = committee.kappa_hat();
            promisees_ok(&mut out, split);
            promisers_ok(&mut out, split);
            ordered_across(&mut out, split);
            let received = sum(&r.values()[..split]);
            out.flag_if(
                received != agg.g_s || r.total_transfer() != agg.g_s,
                Condition::Total,
                (0..size).filter(|&i| !r[i].is_zero()).collect(),
            );
        }
        Regime::HigherOrderPreemption => {
            let split = agg.k_star.expect("set in this regime");
            let star = agg.u_star.as_ref().expect("kappa >= 2 here");
            let t_star = agg.t_star.as_ref().expect("set in this regime");
            promisees_ok(&mut out, split);
            promisers_ok(&mut out, split);
            out.flag(
                Condition::Equalization,
                (split..size).filter(|&j| &v[j] != star).collect(),
            );
            out.flag(
                Condition::Ordering,
                (0..split).filter(|&i| &v[i] > star).collect(),
            );
            out.flag_if(
                &r.total_transfer() != t_star,
                Condition::Total,
                (0..size).filter(|&i| !r[i].is_zero()).collect(),
            );
        }
    }

    Ok(EquilibriumVerdict {
        regime: agg.regime,
        violations: out.0,
    })
}
