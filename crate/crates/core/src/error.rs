use crate::rational::Rational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("committee has no members")]
    EmptyCommittee,
    #[error("intensities sum to {total}, but the reform must be efficient (sum > 0)")]
    EfficiencyViolated { total: Rational },
    #[error("kappa = {kappa} is outside 1..={members}")]
    KappaOutOfRange { kappa: i64, members: usize },
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("promise profile sums to {sum}, not zero")]
    NotZeroSum { sum: Rational },
    #[error("coalition member {member} is outside 0..{members}")]
    MemberOutOfRange { member: usize, members: usize },
    #[error("{members} members exceeds the enumeration cap of {cap}")]
    InstanceTooLarge { members: usize, cap: usize },
    #[error("scale factor {lambda} is not positive")]
    NonpositiveScale { lambda: Rational },
    #[error("operation requires kappa >= 2")]
    KappaTooSmall,
    #[error("all entries are equal")]
    AllEqual,
    #[error("linear program is infeasible")]
    LpInfeasible,
    #[error("linear program is unbounded")]
    LpUnbounded,
}
