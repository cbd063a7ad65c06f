//! Stability of promise profiles against blocking coalitions.
//!
//! A profile is stable when no group of members can rewrite its own promises
//! so that the outcome flips and every one of them ends up strictly better
//! off. For a reform-contingent profile `r` this reduces to a single test:
//! the `kappa_hat` smallest entries of `u + r` must not sum to a negative
//! number. [`stability_margin`] computes that sum, [`is_stable_bruteforce`]
//! checks every decisive coalition directly, and
//! [`find_blocking_coalition`] builds an explicit deviation when the profile
//! is unstable.

use crate::error::{Error, Result};
use crate::model::{
    decision, ex_post_intensities, reform_payoffs, Coalition, Committee, Decision,
    PairedProfile, PromiseProfile,
};
use crate::rational::{common_denominator_numerators, from_usize, half, sum, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Largest committee the enumeration oracle will accept by default.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 20;

/// Sum of the `kappa_hat` smallest entries of `u + r`.
pub fn stability_margin(committee: &Committee, r: &PromiseProfile) -> Result<Rational> {
    committee.check_len(r.len())?;
    let mut payoffs = reform_payoffs(committee, r);
    payoffs.sort();
    Ok(sum(&payoffs[..committee.kappa_hat()]))
}

/// Stable iff the margin of `r - s` is non-negative.
pub fn is_stable(committee: &Committee, profile: &PairedProfile) -> Result<bool> {
    committee.check_len(profile.len())?;
    let reduced = profile.reduce_to_reform_contingent();
    Ok(!stability_margin(committee, &reduced)?.is_negative())
}

/// Checks `Σ_{i∈C} (u_i + r_i - s_i) >= 0` for every coalition of at least
/// `kappa_hat` members.
pub fn is_stable_bruteforce(
    committee: &Committee,
    profile: &PairedProfile,
    cap: usize,
) -> Result<bool> {
    committee.check_len(profile.len())?;
    let members = committee.size();
    if members > cap || members >= 64 {
        return Err(Error::InstanceTooLarge { members, cap });
    }
    let weights = reform_payoffs(committee, &profile.reduce_to_reform_contingent());
    let scaled = common_denominator_numerators(&weights);
    let min_size = committee.kappa_hat() as u32;
    let masks = (1u64..(1u64 << members)).filter(|m| m.count_ones() >= min_size);

    let small: Option<Vec<i128>> = scaled.iter().map(|x| x.to_i64().map(i128::from)).collect();
    if let Some(small) = small {
        for mask in masks {
            let total: i128 = bits(mask).map(|k| small[k]).sum();
            if total < 0 {
                return Ok(false);
            }
        }
    } else {
        for mask in masks {
            let total = bits(mask).fold(BigInt::zero(), |acc, k| acc + &scaled[k]);
            if total.is_negative() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |k| mask >> k & 1 == 1)
}

/// A profile that a coalition can switch to, flipping the outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockingDeviation {
    pub coalition: Coalition,
    pub new_profile: PairedProfile,
    /// Outcome after the deviation.
    pub direction: Decision,
}

impl BlockingDeviation {
    /// Replays the deviation against `original`: the changed contingency
    /// matches the direction, exactly the coalition changed its promises,
    /// the outcome flips, and every member strictly gains.
    pub fn verify(&self, committee: &Committee, original: &PairedProfile) -> Result<bool> {
        committee.check_len(original.len())?;
        committee.check_len(self.new_profile.len())?;
        let (changed, fixed_same) = match self.direction {
            Decision::Reform => (
                (&self.new_profile.reform, &original.reform),
                self.new_profile.status_quo == original.status_quo,
            ),
            Decision::StatusQuo => (
                (&self.new_profile.status_quo, &original.status_quo),
                self.new_profile.reform == original.reform,
            ),
        };
        let movers: Vec<usize> = (0..committee.size())
            .filter(|&i| changed.0[i] != changed.1[i])
            .collect();
        if !fixed_same || movers != self.coalition.members() {
            return Ok(false);
        }
        if decision(committee, original)? == self.direction
            || decision(committee, &self.new_profile)? != self.direction
        {
            return Ok(false);
        }
        let before = ex_post_intensities(committee, original)?;
        let after = ex_post_intensities(committee, &self.new_profile)?;
        Ok(self
            .coalition
            .members()
            .iter()
            .all(|&i| after[i] > before[i]))
    }
}

/// `None` iff the profile is stable; otherwise a deviation that passes
/// [`BlockingDeviation::verify`].
pub fn find_blocking_coalition(
    committee: &Committee,
    profile: &PairedProfile,
) -> Result<Option<BlockingDeviation>> {
    if is_stable(committee, profile)? {
        return Ok(None);
    }
    let deviation = match decision(committee, profile)? {
        Decision::StatusQuo => block_status_quo(committee, profile),
        Decision::Reform => block_reform(committee, profile),
    };
    Ok(Some(deviation))
}

/// Everyone moves to `r'_i = s_i - u_i + Σu / I`, so each member ends at
/// `s_i` plus an equal share of the surplus and the reform passes
/// unanimously.
fn block_status_quo(committee: &Committee, profile: &PairedProfile) -> BlockingDeviation {
    let share = committee.total_intensity() / from_usize(committee.size());
    let reform: Vec<Rational> = committee
        .intensities()
        .iter()
        .zip(profile.status_quo.values())
        .map(|(u, s)| s - u + &share)
        .collect();
    let members = (0..committee.size())
        .filter(|&i| reform[i] != profile.reform[i])
        .collect();
    let reform = PromiseProfile::new(reform).expect("shares sum to zero");
    BlockingDeviation {
        coalition: Coalition::new(members, committee.size()).expect("the reform failed"),
        new_profile: PairedProfile::new(reform, profile.status_quo.clone())
            .expect("same length"),
        direction: Decision::Reform,
    }
}

/// The `kappa_hat` members with the smallest `u + r - s` have a negative
/// total. Those with a non-negative value are promised their reform payoff
/// plus `eps`; those with a negative value pay for it in proportion to
/// their shortfall.
fn block_reform(committee: &Committee, profile: &PairedProfile) -> BlockingDeviation {
    let reduced = profile.reduce_to_reform_contingent();
    let tilde = reform_payoffs(committee, &reduced);
    let mut order: Vec<usize> = (0..committee.size()).collect();
    order.sort_by(|&a, &b| tilde[a].cmp(&tilde[b]).then(a.cmp(&b)));
    let coalition = &order[..committee.kappa_hat()];

    let (above, below): (Vec<usize>, Vec<usize>) =
        coalition.iter().partition(|&&i| !tilde[i].is_negative());
    assert!(
        !above.is_empty(),
        "a passing reform leaves fewer than kappa_hat members voting no"
    );
    let above_sum = sum(above.iter().map(|&i| &tilde[i]));
    let shortfall: Rational = below.iter().map(|&i| -&tilde[i]).sum();
    let eps = half() * (&shortfall - &above_sum) / from_usize(above.len());
    let alpha = (&above_sum + &eps * from_usize(above.len())) / &shortfall;

    let mut status_quo = profile.status_quo.values().to_vec();
    for &i in &above {
        status_quo[i] = committee.intensity(i) + &profile.reform[i] + &eps;
    }
    for &i in &below {
        status_quo[i] = &status_quo[i] + &alpha * &tilde[i];
    }
    BlockingDeviation {
        coalition: Coalition::new(coalition.to_vec(), committee.size()).expect("nonempty"),
        new_profile: PairedProfile::new(
            profile.reform.clone(),
            PromiseProfile::new(status_quo).expect("payments match promises"),
        )
        .expect("same length"),
        direction: Decision::StatusQuo,
    }
}
