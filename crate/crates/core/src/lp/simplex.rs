//! Dense two-phase simplex over exact rationals.
//!
//! Entering and leaving variables follow Bland's rule (lowest eligible
//! index), so the method terminates on degenerate problems without any
//! perturbation.

use crate::rational::{sum, Rational};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Minimize `objective · x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone)]
pub struct Problem {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced costs of the current phase.
    costs: Vec<Rational>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = Rational::one() / &self.rows[row][col];
        for a in self.rows[row].iter_mut() {
            if !a.is_zero() {
                *a *= &inv;
            }
        }
        self.rhs[row] *= &inv;
        let support: Vec<usize> = (0..self.rows[row].len())
            .filter(|&j| !self.rows[row][j].is_zero())
            .collect();
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for &j in &support {
                let delta = &factor * &pivot_row[j];
                self.rows[i][j] -= delta;
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        if !self.costs[col].is_zero() {
            let factor = self.costs[col].clone();
            for &j in &support {
                let delta = &factor * &pivot_row[j];
                self.costs[j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Resets `costs` to the reduced costs of `c` under the current basis.
    fn price(&mut self, c: &[Rational]) {
        self.costs = c.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            if c[b].is_zero() {
                continue;
            }
            for (j, a) in self.rows[i].iter().enumerate() {
                if !a.is_zero() {
                    self.costs[j] -= &c[b] * a;
                }
            }
        }
    }

    /// Runs to optimality; `false` means unbounded.
    fn optimize(&mut self, allowed: impl Fn(usize) -> bool) -> bool {
        loop {
            let entering = (0..self.costs.len()).find(|&j| allowed(j) && self.costs[j].is_negative());
            let Some(col) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((k, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*k]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((row, _)) = best else {
                return false;
            };
            self.pivot(row, col);
        }
    }
}

pub fn solve(problem: &Problem) -> Outcome {
    let vars = problem.objective.len();
    let m = problem.constraints.len();
    let slacks = problem
        .constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let first_art = vars + slacks;
    let width = first_art + m;

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut slack = vars;
    for (i, con) in problem.constraints.iter().enumerate() {
        assert_eq!(con.coeffs.len(), vars, "constraint width");
        let flip = con.rhs.is_negative();
        let sign = if flip { -Rational::one() } else { Rational::one() };
        let mut row = vec![Rational::zero(); width];
        for (j, a) in con.coeffs.iter().enumerate() {
            row[j] = a * &sign;
        }
        match con.relation {
            Relation::Le => {
                row[slack] = sign.clone();
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -sign.clone();
                slack += 1;
            }
            Relation::Eq => {}
        }
        row[first_art + i] = Rational::one();
        rows.push(row);
        rhs.push(&con.rhs * &sign);
        basis.push(first_art + i);
    }

    let mut tab = Tableau {
        rows,
        rhs,
        basis,
        costs: Vec::new(),
    };

    let phase_one: Vec<Rational> = (0..width)
        .map(|j| if j >= first_art { Rational::one() } else { Rational::zero() })
        .collect();
    tab.price(&phase_one);
    tab.optimize(|_| true);
    let infeasibility = sum(
        tab.basis
            .iter()
            .zip(&tab.rhs)
            .filter(|(b, _)| **b >= first_art)
            .map(|(_, v)| v),
    );
    if infeasibility.is_positive() {
        return Outcome::Infeasible;
    }

    // pivot zero-valued artificials out, dropping rows that are redundant
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] < first_art {
            i += 1;
            continue;
        }
        match (0..first_art).find(|&j| !tab.rows[i][j].is_zero()) {
            Some(col) => {
                tab.pivot(i, col);
                i += 1;
            }
            None => {
                tab.rows.remove(i);
                tab.rhs.remove(i);
                tab.basis.remove(i);
            }
        }
    }

    let mut phase_two = problem.objective.clone();
    phase_two.resize(width, Rational::zero());
    tab.price(&phase_two);
    if !tab.optimize(|j| j < first_art) {
        return Outcome::Unbounded;
    }

    let mut x = vec![Rational::zero(); vars];
    for (b, v) in tab.basis.iter().zip(&tab.rhs) {
        if *b < vars {
            x[*b] = v.clone();
        }
    }
    let value = problem
        .objective
        .iter()
        .zip(&x)
        .map(|(c, xi)| c * xi)
        .sum();
    Outcome::Optimal { x, value }
}
