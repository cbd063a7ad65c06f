use crate::error::Result;
use crate::model::Committee;
use crate::rational::{from_usize, sum, Rational};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Which of the five shapes the least-cost stable profiles take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Fewer than `kappa - 1` supporters.
    FrustratedDeep,
    /// Exactly `kappa - 1` supporters.
    FrustratedPivotal,
    /// The reform survives without any promises.
    NoGainsFromTrade,
    /// Buying off the weakest supporters is enough.
    FirstOrderPreemption,
    /// Strong supporters must be levelled down to a common value.
    HigherOrderPreemption,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::FrustratedDeep => "frustrated-deep",
            Regime::FrustratedPivotal => "frustrated-pivotal",
            Regime::NoGainsFromTrade => "no-gains-from-trade",
            Regime::FirstOrderPreemption => "first-order-preemption",
            Regime::HigherOrderPreemption => "higher-order-preemption",
        }
    }

    pub fn is_frustrated(self) -> bool {
        matches!(self, Regime::FrustratedDeep | Regime::FrustratedPivotal)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Summary statistics of a committee. Positions are 0-based in sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aggregates {
    /// Number of opponents; opponents sit at `0..opponents`.
    pub opponents: usize,
    /// Total intensity of supporters.
    pub u_r: Rational,
    /// Total intensity of opponents, as a positive number.
    pub u_s: Rational,
    /// Opponents' total intensity net of the weak supporters at positions
    /// `opponents..kappa_hat`.
    pub g_s: Rational,
    /// For each weak supporter `k`: `Σ_{j >= kappa_hat} (u_j - u_k)`.
    pub delta_u: BTreeMap<usize, Rational>,
    /// The same sum evaluated at position `kappa_hat - 1`.
    pub delta_u_kappa_hat: Rational,
    /// `Σu / (kappa - 1)`, for `kappa >= 2`.
    pub u_star: Option<Rational>,
    /// First position whose intensity exceeds `u_star`; higher-order regime only.
    pub k_star: Option<usize>,
    /// `Σ_{j >= k_star} (u_j - u_star)`; higher-order regime only.
    pub t_star: Option<Rational>,
    pub regime: Regime,
}

pub fn aggregates(committee: &Committee) -> Aggregates {
    let u = committee.intensities();
    let size = committee.size();
    let kappa = committee.kappa();
    let kappa_hat = committee.kappa_hat();
    let n = committee.opponents();

    let u_r = sum(&u[n..]);
    let u_s = -sum(&u[..n]);
    let weak_end = kappa_hat.max(n);
    let g_s = &u_s - sum(&u[n..weak_end]);
    let delta_at = |k: usize| -> Rational {
        u[kappa_hat..size].iter().map(|x| x - &u[k]).sum()
    };
    let delta_u = (n..weak_end).map(|k| (k, delta_at(k))).collect();
    let delta_u_kappa_hat = delta_at(kappa_hat - 1);
    let u_star = (kappa >= 2).then(|| committee.total_intensity() / from_usize(kappa - 1));

    let supporters = size - n;
    let regime = if supporters + 1 < kappa {
        Regime::FrustratedDeep
    } else if supporters + 1 == kappa {
        Regime::FrustratedPivotal
    } else if !g_s.is_positive() {
        Regime::NoGainsFromTrade
    } else if g_s <= delta_u_kappa_hat {
        Regime::FirstOrderPreemption
    } else {
        Regime::HigherOrderPreemption
    };

    let (k_star, t_star) = match (&u_star, regime) {
        (Some(star), Regime::HigherOrderPreemption) => {
            let k = u.iter().position(|x| x > star).expect("u_star < u_I here");
            let t = u[k..].iter().map(|x| x - star).sum();
            (Some(k), Some(t))
        }
        _ => (None, None),
    };

    Aggregates {
        opponents: n,
        u_r,
        u_s,
        g_s,
        delta_u,
        delta_u_kappa_hat,
        u_star,
        k_star,
        t_star,
        regime,
    }
}

pub fn classify(committee: &Committee) -> Regime {
    aggregates(committee).regime
}

/// Least total transfer among stable profiles.
pub fn min_total_transfer(committee: &Committee) -> Rational {
    let agg = aggregates(committee);
    match agg.regime {
        Regime::FrustratedDeep | Regime::FrustratedPivotal => agg.u_s,
        Regime::NoGainsFromTrade => Rational::zero(),
        Regime::FirstOrderPreemption => agg.g_s,
        Regime::HigherOrderPreemption => agg.t_star.expect("set in this regime"),
    }
}

/// The position `k` splitting every least-cost stable profile into
/// promisees (`< k`) and promisers (`>= k`); `None` when no promises are
/// needed.
pub fn critical_member(committee: &Committee) -> Option<usize> {
    let agg = aggregates(committee);
    match agg.regime {
        Regime::FrustratedDeep | Regime::FrustratedPivotal => Some(agg.opponents),
        Regime::NoGainsFromTrade => None,
        Regime::FirstOrderPreemption => Some(committee.kappa_hat()),
        Regime::HigherOrderPreemption => agg.k_star,
    }
}

/// Fails unless `kappa >= 2`; several constructions divide by `kappa - 1`.
pub(crate) fn require_kappa_two(committee: &Committee) -> Result<()> {
    if committee.kappa() < 2 {
        return Err(crate::error::Error::KappaTooSmall);
    }
    Ok(())
}
