use super::aggregates::{aggregates, Regime};
use crate::error::{Error, Result};
use crate::model::{Committee, PromiseProfile};
use crate::rational::Rational;
use num_traits::{Signed, Zero};

/// A least-cost stable profile built directly from the regime's formulas.
///
/// Frustrated committees zero out every opponent and charge supporters in
/// proportion to their intensity. First-order committees pay opponents
/// `G_S` in proportion to intensity and charge the supporters above
/// `kappa_hat` in proportion to their excess over `u_{kappa_hat}`.
/// Higher-order committees level everyone from `k_star` up to `u_star` and
/// spread the proceeds over opponents.
pub fn canonical_equilibrium(committee: &Committee) -> PromiseProfile {
    let agg = aggregates(committee);
    let u = committee.intensities();
    let n = agg.opponents;
    let size = committee.size();
    let values: Vec<Rational> = match agg.regime {
        Regime::NoGainsFromTrade => return PromiseProfile::zero(size),
        Regime::FrustratedDeep | Regime::FrustratedPivotal => {
            let rate = &agg.u_s / &agg.u_r;
            (0..size)
                .map(|i| if i < n { -&u[i] } else { -(&rate * &u[i]) })
                .collect()
        }
        Regime::FirstOrderPreemption => {
            let kappa_hat = committee.kappa_hat();
            let pay = &agg.g_s / &agg.u_s;
            let take = &agg.g_s / &agg.delta_u_kappa_hat;
            let pivot = &u[kappa_hat - 1];
            (0..size)
                .map(|i| {
                    if i < n {
                        -(&pay * &u[i])
                    } else if i < kappa_hat {
                        Rational::zero()
                    } else {
                        -(&take * (&u[i] - pivot))
                    }
                })
                .collect()
        }
        Regime::HigherOrderPreemption => {
            let k_star = agg.k_star.expect("set in this regime");
            let star = agg.u_star.expect("set in this regime");
            let pay = agg.t_star.expect("set in this regime") / &agg.u_s;
            (0..size)
                .map(|i| {
                    if i < n {
                        -(&pay * &u[i])
                    } else if i < k_star {
                        Rational::zero()
                    } else {
                        &star - &u[i]
                    }
                })
                .collect()
        }
    };
    PromiseProfile::new(values).expect("regime formulas balance")
}

/// The committee with intensities `lambda * u` and the same rule.
pub fn scale_committee(committee: &Committee, lambda: &Rational) -> Result<Committee> {
    if !lambda.is_positive() {
        return Err(Error::NonpositiveScale {
            lambda: lambda.clone(),
        });
    }
    Ok(committee.scaled_unchecked(lambda))
}
