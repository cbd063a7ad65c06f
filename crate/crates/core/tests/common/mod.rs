#![allow(dead_code)]

use logroll_core::rational::{frac, int};
use logroll_core::{Committee, PairedProfile, PromiseProfile, Rational};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn committee(u: &[i64], kappa: i64) -> Committee {
    Committee::from_integers(u, kappa).unwrap()
}

pub fn profile(r: &[i64]) -> PromiseProfile {
    PromiseProfile::from_integers(r).unwrap()
}

pub fn reform(r: &[i64]) -> PairedProfile {
    PairedProfile::reform_only(profile(r))
}

/// Members numbered from 1, as sorted positions.
pub fn positions(one_based: &[usize]) -> Vec<usize> {
    one_based.iter().map(|k| k - 1).collect()
}

/// The worked committees, as `(u, kappa)`.
pub fn worked_committees() -> Vec<Committee> {
    vec![
        committee(&[-4, 1, 5], 2),
        committee(&[-2, -1, -1, 8, 10], 3),
        committee(&[-5, 1, 3, 10], 3),
        committee(&[-14, -8, 2, 4, 6, 8, 8], 3),
    ]
}

fn random_intensity<R: Rng>(rng: &mut R, style: u8) -> Rational {
    match style {
        0 => int(rng.gen_range(-10..=10)),
        1 => int(*[-6, -3, -1, 0, 1, 2, 2, 4, 8].choose(rng).unwrap()),
        _ => frac(rng.gen_range(-20..=20), rng.gen_range(1..=4)),
    }
}

/// Efficient committee with `min_size..=max_size` members, a mix of
/// integer, heavily tied, and fractional intensities, and any rule.
pub fn random_committee<R: Rng>(rng: &mut R, min_size: usize, max_size: usize) -> Committee {
    loop {
        let size = rng.gen_range(min_size..=max_size);
        let style = rng.gen_range(0..3u8);
        let u: Vec<Rational> = (0..size).map(|_| random_intensity(rng, style)).collect();
        let kappa = rng.gen_range(1..=size as i64);
        if let Ok(c) = Committee::new(u, kappa) {
            return c;
        }
    }
}

pub fn random_committee_kappa_two<R: Rng>(rng: &mut R, min_size: usize, max_size: usize) -> Committee {
    loop {
        let c = random_committee(rng, min_size.max(2), max_size);
        if c.kappa() >= 2 {
            return c;
        }
    }
}

pub fn random_zero_sum<R: Rng>(rng: &mut R, size: usize, spread: i64) -> PromiseProfile {
    let mut values: Vec<Rational> = (0..size)
        .map(|_| frac(rng.gen_range(-spread..=spread), rng.gen_range(1..=3)))
        .collect();
    let total: Rational = values.iter().sum();
    if let Some(k) = (0..size).collect::<Vec<_>>().choose(rng) {
        values[*k] -= total;
    }
    PromiseProfile::new(values).unwrap()
}

/// `base + t * d` for a random zero-sum direction `d` and a step that is
/// often zero or small, so profiles land on and near the stability boundary.
pub fn perturb<R: Rng>(rng: &mut R, base: &PromiseProfile) -> PromiseProfile {
    let d = random_zero_sum(rng, base.len(), 3);
    let t = *[0, 0, 1, -1, 1, 4].choose(rng).unwrap();
    let t = frac(t, 4);
    PromiseProfile::new(
        base.values()
            .iter()
            .zip(d.values())
            .map(|(b, x)| b + &t * x)
            .collect(),
    )
    .unwrap()
}

/// A random paired profile, sometimes with status-quo promises.
pub fn random_paired<R: Rng>(rng: &mut R, c: &Committee) -> PairedProfile {
    let reform = match rng.gen_range(0..3) {
        0 => random_zero_sum(rng, c.size(), 8),
        _ => perturb(rng, &logroll_core::canonical_equilibrium(c)),
    };
    let status_quo = if rng.gen_bool(0.3) {
        random_zero_sum(rng, c.size(), 4)
    } else {
        PromiseProfile::zero(c.size())
    };
    PairedProfile::new(reform, status_quo).unwrap()
}

/// Direct enumeration of every coalition of at least `kappa_hat` members,
/// written independently of the library's enumeration.
pub fn stable_by_enumeration(c: &Committee, p: &PairedProfile) -> bool {
    let w: Vec<Rational> = (0..c.size())
        .map(|i| c.intensity(i) + &p.reform[i] - &p.status_quo[i])
        .collect();
    let size = c.size();
    (1u32..(1 << size)).all(|mask| {
        if (mask.count_ones() as usize) < c.kappa_hat() {
            return true;
        }
        let total: Rational = (0..size).filter(|k| mask >> k & 1 == 1).map(|k| &w[k]).sum();
        total >= Rational::zero()
    })
}

pub fn ex_post(c: &Committee, r: &PromiseProfile) -> Vec<Rational> {
    (0..c.size()).map(|i| c.intensity(i) + &r[i]).collect()
}

pub fn range(v: &[Rational]) -> Rational {
    v.iter().max().unwrap() - v.iter().min().unwrap()
}
