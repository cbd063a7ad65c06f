use super::aggregates::{aggregates, require_kappa_two, Aggregates, Regime};
use super::verdict::is_equilibrium;
use crate::error::Result;
use crate::model::{Committee, PromiseProfile};
use crate::rational::{half, Rational};
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Who pays whom in a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransferPattern {
    /// No promises at all.
    Empty,
    /// Supporters pay, opponents receive.
    AcrossAisle,
    /// Some supporter receives a promise.
    CircleWagon,
    /// Some opponent pays and no supporter receives.
    Mixed,
}

impl TransferPattern {
    pub fn name(self) -> &'static str {
        match self {
            TransferPattern::Empty => "empty",
            TransferPattern::AcrossAisle => "across-aisle",
            TransferPattern::CircleWagon => "circle-wagon",
            TransferPattern::Mixed => "mixed",
        }
    }
}

impl fmt::Display for TransferPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify_transfer_pattern(
    committee: &Committee,
    r: &PromiseProfile,
) -> Result<TransferPattern> {
    committee.check_len(r.len())?;
    let n = committee.opponents();
    let r = r.values();
    Ok(if r.iter().all(Zero::is_zero) {
        TransferPattern::Empty
    } else if r[n..].iter().any(Signed::is_positive) {
        TransferPattern::CircleWagon
    } else if r[..n].iter().any(Signed::is_negative) {
        TransferPattern::Mixed
    } else {
        TransferPattern::AcrossAisle
    })
}

/// Whether every least-cost stable profile moves transfers only from
/// supporters to opponents.
pub fn all_equilibria_across_aisle(committee: &Committee) -> Result<bool> {
    require_kappa_two(committee)?;
    let agg = aggregates(committee);
    Ok(across_aisle(committee, &agg))
}

fn across_aisle(committee: &Committee, agg: &Aggregates) -> bool {
    let u = committee.intensities();
    let n = agg.opponents;
    match agg.regime {
        Regime::FrustratedDeep | Regime::FrustratedPivotal | Regime::NoGainsFromTrade => true,
        Regime::FirstOrderPreemption => {
            let kappa_hat = committee.kappa_hat();
            let weak_level = u[n..kappa_hat].iter().all(|x| x == &u[n]);
            weak_level && (agg.g_s == agg.delta_u_kappa_hat || u[kappa_hat] == u[n])
        }
        Regime::HigherOrderPreemption => {
            let k_star = agg.k_star.expect("set in this regime");
            k_star == n || Some(&u[n]) == agg.u_star.as_ref()
        }
    }
}

/// A least-cost stable profile in which the weakest supporter receives a
/// promise, or `None` when no such profile exists.
pub fn circle_wagon_witness(committee: &Committee) -> Result<Option<PromiseProfile>> {
    require_kappa_two(committee)?;
    let agg = aggregates(committee);
    if across_aisle(committee, &agg) {
        return Ok(None);
    }
    let u = committee.intensities();
    let n = agg.opponents;
    let size = committee.size();

    let (total, eps, promiser_rate, pivot, first_promiser) = match agg.regime {
        Regime::FirstOrderPreemption => {
            let kappa_hat = committee.kappa_hat();
            let pivot = u[kappa_hat - 1].clone();
            let gap = if u[n] < pivot {
                &pivot - &u[n]
            } else {
                (Rational::one() - &agg.g_s / &agg.delta_u_kappa_hat) * (&u[kappa_hat] - &pivot)
            };
            let eps = half() * gap.min(agg.g_s.clone());
            let rate = &agg.g_s / &agg.delta_u_kappa_hat;
            (agg.g_s.clone(), eps, rate, pivot, kappa_hat)
        }
        Regime::HigherOrderPreemption => {
            let star = agg.u_star.clone().expect("set in this regime");
            let t_star = agg.t_star.clone().expect("set in this regime");
            let eps = half() * (&star - &u[n]).min(t_star.clone());
            let k_star = agg.k_star.expect("set in this regime");
            (t_star, eps, Rational::one(), star, k_star)
        }
        _ => unreachable!("other regimes are across the aisle"),
    };

    let pay = (&total - &eps) / &agg.u_s;
    let values: Vec<Rational> = (0..size)
        .map(|i| {
            if i < n {
                -(&pay * &u[i])
            } else if i == n {
                eps.clone()
            } else if i < first_promiser {
                Rational::zero()
            } else {
                -(&promiser_rate * (&u[i] - &pivot))
            }
        })
        .collect();
    let witness = PromiseProfile::new(values).expect("witness formulas balance");
    debug_assert!(is_equilibrium(committee, &witness)
        .map(|v| v.is_equilibrium())
        .unwrap_or(false));
    Ok(Some(witness))
}
