//! Dispersion-minimizing selection of a least-cost stable profile.
//!
//! Starting from the intensities, the procedure repeatedly lifts the lowest
//! block of tied members and lowers the highest block by the same total
//! amount, each time as far as possible without changing the order. It
//! stops the moment the `kappa_hat` smallest entries sum to zero. The
//! resulting ex-post intensities have the smallest range among all
//! least-cost stable profiles.

use crate::error::{Error, Result};
use crate::model::{Committee, IntensityProfile, PromiseProfile};
use crate::rational::{from_usize, sum, Rational};
use num_traits::{Signed, Zero};

/// Size of the bottom tie block and `I` minus the size of the top one.
pub fn split_indices(v: &IntensityProfile) -> Result<(usize, usize)> {
    let v = v.values();
    let (first, last) = match (v.first(), v.last()) {
        (Some(f), Some(l)) if f != l => (f, l),
        _ => return Err(Error::AllEqual),
    };
    let k1 = v.iter().take_while(|x| *x == first).count();
    let top = v.iter().rev().take_while(|x| *x == last).count();
    Ok((k1, v.len() - top))
}

/// Moves `x` from the top block to the bottom block, spread evenly within
/// each.
pub fn phi(v: &IntensityProfile, x: &Rational) -> Result<IntensityProfile> {
    let (k1, k2) = split_indices(v)?;
    let size = v.len();
    let up = x / from_usize(k1);
    let down = x / from_usize(size - k2);
    let out = v
        .values()
        .iter()
        .enumerate()
        .map(|(i, vi)| {
            if i < k1 {
                vi + &up
            } else if i >= k2 {
                vi - &down
            } else {
                vi.clone()
            }
        })
        .collect();
    Ok(IntensityProfile::new(out))
}

/// Largest `x` for which [`phi`] keeps `v` non-decreasing.
///
/// With a middle block present this is the smaller of the two gaps to the
/// middle, each weighted by its block size. With only two levels the blocks
/// meet each other first, at the common mean.
pub fn max_step(v: &IntensityProfile) -> Result<Rational> {
    let (k1, k2) = split_indices(v)?;
    let values = v.values();
    let size = values.len();
    let bottom = from_usize(k1);
    let top = from_usize(size - k2);
    if k1 == k2 {
        let gap = &values[k2] - &values[k1 - 1];
        return Ok(gap * &bottom * &top / from_usize(size));
    }
    let rise = &bottom * (&values[k1] - &values[k1 - 1]);
    let fall = &top * (&values[k2] - &values[k2 - 1]);
    Ok(rise.min(fall))
}

/// One full move of the procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionStep {
    /// Intensities after the move.
    pub intensities: IntensityProfile,
    pub step: Rational,
    pub k1: usize,
    pub k2: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionTrace {
    pub steps: Vec<SelectionStep>,
    /// The partial move that lands on a zero margin; `None` when the
    /// committee needs no promises.
    pub final_step: Option<Rational>,
    pub final_intensities: IntensityProfile,
}

impl SelectionTrace {
    /// Reapplies every move to `start` and returns where it ends.
    pub fn replay(&self, start: &IntensityProfile) -> Result<IntensityProfile> {
        let mut v = start.clone();
        for step in &self.steps {
            v = phi(&v, &step.step)?;
        }
        if let Some(x) = &self.final_step {
            v = phi(&v, x)?;
        }
        Ok(v)
    }
}

fn prefix(v: &IntensityProfile, len: usize) -> Rational {
    sum(&v.values()[..len])
}

/// Runs the procedure and returns `r* = v* - u` with its trace.
pub fn run_selection(committee: &Committee) -> (PromiseProfile, SelectionTrace) {
    let kappa_hat = committee.kappa_hat();
    let start = IntensityProfile::new(committee.intensities().to_vec());
    if !prefix(&start, kappa_hat).is_negative() {
        let trace = SelectionTrace {
            steps: Vec::new(),
            final_step: None,
            final_intensities: start,
        };
        return (PromiseProfile::zero(committee.size()), trace);
    }

    let mut steps = Vec::new();
    let mut v = start;
    let final_step = loop {
        let here = prefix(&v, kappa_hat);
        let full = max_step(&v).expect("a negative margin rules out equal entries");
        let next = phi(&v, &full).expect("same split as max_step");
        let there = prefix(&next, kappa_hat);
        if !there.is_negative() {
            // the margin is affine in the step, so interpolate to its root
            break &full * &here / (&here - &there);
        }
        let (k1, k2) = split_indices(&v).expect("checked by max_step");
        steps.push(SelectionStep {
            intensities: next.clone(),
            step: full,
            k1,
            k2,
        });
        v = next;
    };
    let last = phi(&v, &final_step).expect("same split as the last full move");
    debug_assert!(prefix(&last, kappa_hat).is_zero());
    let r = last
        .values()
        .iter()
        .zip(committee.intensities())
        .map(|(a, u)| a - u)
        .collect();
    let trace = SelectionTrace {
        steps,
        final_step: Some(final_step),
        final_intensities: last,
    };
    (
        PromiseProfile::new(r).expect("phi preserves the total"),
        trace,
    )
}
