//! Least-cost stable profiles from linear programming.
//!
//! This is an oracle that knows nothing about regimes. It writes
//! `r = p - q` with `p, q >= 0`, minimizes `½Σ(p + q)` subject to
//! `Σr = 0` and `Σ_{i∈C} (u_i + r_i) >= 0` for every coalition `C` of
//! size `kappa_hat`, and solves it exactly. Coalition constraints are added
//! lazily: after each solve every coalition is enumerated and the most
//! violated ones join the program, until none is violated. The final
//! optimum is therefore the optimum of the full program.

pub mod simplex;

use crate::error::{Error, Result};
use crate::model::{Coalition, Committee, PromiseProfile};
use crate::rational::{common_denominator_numerators, half, int, Rational};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simplex::{Constraint, Outcome, Problem, Relation};

/// Largest committee the oracle accepts by default.
pub const DEFAULT_LP_CAP: usize = 16;

/// Which coalitions get a constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoalitionFamily {
    /// Exactly `kappa_hat` members.
    Smallest,
    /// Every size from `kappa_hat` to `I`.
    AllBlocking,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub optimum: Rational,
    pub profile: PromiseProfile,
    /// Generated coalition constraints that hold with equality at the
    /// optimum, in sorted positions.
    pub active: Vec<Coalition>,
}

pub fn lp_min_transfer(committee: &Committee) -> Result<LpSolution> {
    lp_min_transfer_with(committee, CoalitionFamily::Smallest, DEFAULT_LP_CAP)
}

pub fn lp_min_transfer_with(
    committee: &Committee,
    family: CoalitionFamily,
    cap: usize,
) -> Result<LpSolution> {
    let mut program = CutProgram::new(committee, family, cap)?;
    let size = committee.size();
    let r = program.solve(&half_weights(size), None)?;
    let optimum = r.total_transfer();
    let active = program
        .cuts
        .iter()
        .filter(|cut| program.slack(cut, &r).is_zero())
        .map(|cut| Coalition::new(cut.clone(), size).expect("nonempty"))
        .sorted()
        .collect();
    Ok(LpSolution {
        optimum,
        profile: r,
        active,
    })
}

/// `count` least-cost stable profiles drawn from the optimal face.
///
/// Vertices of the face are found by minimizing seeded random linear
/// objectives with the total transfer pinned to the optimum; samples are
/// random convex combinations of those vertices. The same seed always
/// yields the same samples.
pub fn sample_equilibria(
    committee: &Committee,
    count: usize,
    seed: u64,
) -> Result<Vec<PromiseProfile>> {
    sample_equilibria_with(committee, count, seed, DEFAULT_LP_CAP)
}

pub fn sample_equilibria_with(
    committee: &Committee,
    count: usize,
    seed: u64,
    cap: usize,
) -> Result<Vec<PromiseProfile>> {
    let size = committee.size();
    let mut program = CutProgram::new(committee, CoalitionFamily::Smallest, cap)?;
    let base = program.solve(&half_weights(size), None)?;
    let optimum = base.total_transfer();
    if optimum.is_zero() {
        return Ok(vec![PromiseProfile::zero(size); count]);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vertices = vec![base];
    for _ in 0..2 * count.max(2) {
        let weights: Vec<i64> = (0..size).map(|_| rng.gen_range(-10..=10)).collect();
        let objective: Vec<Rational> = weights
            .iter()
            .map(|&w| int(w))
            .chain(weights.iter().map(|&w| int(-w)))
            .collect();
        let vertex = program.solve(&objective, Some(&optimum))?;
        if !vertices.contains(&vertex) {
            vertices.push(vertex);
        }
    }

    let samples = (0..count)
        .map(|_| {
            let mut mix: Vec<(Rational, &PromiseProfile)> = vertices
                .iter()
                .map(|v| (int(rng.gen_range(0..=6)), v))
                .filter(|(w, _)| !w.is_zero())
                .collect();
            if mix.is_empty() {
                let pick = rng.gen_range(0..vertices.len());
                mix.push((Rational::one(), &vertices[pick]));
            }
            PromiseProfile::combination(&mix).expect("same length, positive weights")
        })
        .collect();
    Ok(samples)
}

fn half_weights(size: usize) -> Vec<Rational> {
    vec![half(); 2 * size]
}

struct CutProgram<'a> {
    committee: &'a Committee,
    family: CoalitionFamily,
    cuts: Vec<Vec<usize>>,
}

impl<'a> CutProgram<'a> {
    fn new(committee: &'a Committee, family: CoalitionFamily, cap: usize) -> Result<Self> {
        let members = committee.size();
        if members > cap {
            return Err(Error::InstanceTooLarge { members, cap });
        }
        // the weakest kappa_hat members are the usual first offenders
        let seed_cut = (0..committee.kappa_hat()).collect();
        Ok(CutProgram {
            committee,
            family,
            cuts: vec![seed_cut],
        })
    }

    fn slack(&self, cut: &[usize], r: &PromiseProfile) -> Rational {
        cut.iter()
            .map(|&i| self.committee.intensity(i) + &r[i])
            .sum()
    }

    fn coalitions(&self) -> Box<dyn Iterator<Item = Vec<usize>> + '_> {
        let size = self.committee.size();
        let smallest = self.committee.kappa_hat();
        let largest = match self.family {
            CoalitionFamily::Smallest => smallest,
            CoalitionFamily::AllBlocking => size,
        };
        Box::new((smallest..=largest).flat_map(move |k| (0..size).combinations(k)))
    }

    /// Most violated coalitions first, at most `I` of them.
    fn violated(&self, r: &PromiseProfile) -> Vec<Vec<usize>> {
        let payoffs: Vec<Rational> = (0..self.committee.size())
            .map(|i| self.committee.intensity(i) + &r[i])
            .collect();
        let scaled = common_denominator_numerators(&payoffs);
        let mut found: Vec<(BigInt, Vec<usize>)> = self
            .coalitions()
            .filter_map(|cut| {
                let total: BigInt = cut.iter().map(|&i| &scaled[i]).sum();
                total.is_negative().then_some((total, cut))
            })
            .collect();
        found.sort();
        found
            .into_iter()
            .take(self.committee.size())
            .map(|(_, cut)| cut)
            .collect()
    }

    fn solve(&mut self, objective: &[Rational], pinned: Option<&Rational>) -> Result<PromiseProfile> {
        let size = self.committee.size();
        let ones = |sign_q: i64| -> Vec<Rational> {
            (0..2 * size)
                .map(|j| if j < size { Rational::one() } else { int(sign_q) })
                .collect()
        };
        loop {
            let mut constraints = vec![Constraint {
                coeffs: ones(-1),
                relation: Relation::Eq,
                rhs: Rational::zero(),
            }];
            if let Some(total) = pinned {
                constraints.push(Constraint {
                    coeffs: ones(1),
                    relation: Relation::Eq,
                    rhs: total * int(2),
                });
            }
            for cut in &self.cuts {
                let mut coeffs = vec![Rational::zero(); 2 * size];
                for &i in cut {
                    coeffs[i] = Rational::one();
                    coeffs[size + i] = -Rational::one();
                }
                let need: Rational = cut.iter().map(|&i| self.committee.intensity(i)).sum();
                constraints.push(Constraint {
                    coeffs,
                    relation: Relation::Ge,
                    rhs: -need,
                });
            }
            let problem = Problem {
                objective: objective.to_vec(),
                constraints,
            };
            let x = match simplex::solve(&problem) {
                Outcome::Optimal { x, .. } => x,
                Outcome::Infeasible => return Err(Error::LpInfeasible),
                Outcome::Unbounded => return Err(Error::LpUnbounded),
            };
            let r = PromiseProfile::new((0..size).map(|i| &x[i] - &x[size + i]).collect())
                .expect("balance constraint");
            let missing = self.violated(&r);
            if missing.is_empty() {
                return Ok(r);
            }
            self.cuts.extend(missing);
        }
    }
}
