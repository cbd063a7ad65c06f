//! Committees, promise profiles and the vote they induce.

use crate::error::{Error, Result};
use crate::rational::{abs_sum, half, int, sum, Rational};
use num_traits::{Signed, Zero};
use std::fmt;
use std::ops::Index;

/// A committee with intensities sorted non-decreasingly.
///
/// Position `k` in sorted order corresponds to the caller's member
/// `permutation()[k]`. Equal intensities keep their input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Committee {
    intensities: Vec<Rational>,
    kappa: usize,
    permutation: Vec<usize>,
}

impl Committee {
    /// Sorts the intensities and validates the voting rule.
    pub fn new(raw: Vec<Rational>, kappa: i64) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyCommittee);
        }
        let members = raw.len();
        if kappa < 1 || kappa as u64 > members as u64 {
            return Err(Error::KappaOutOfRange { kappa, members });
        }
        let total = sum(&raw);
        if !total.is_positive() {
            return Err(Error::EfficiencyViolated { total });
        }
        let mut permutation: Vec<usize> = (0..members).collect();
        permutation.sort_by(|&a, &b| raw[a].cmp(&raw[b]));
        let intensities = permutation.iter().map(|&k| raw[k].clone()).collect();
        Ok(Committee {
            intensities,
            kappa: kappa as usize,
            permutation,
        })
    }

    /// Convenience constructor for integer intensities.
    pub fn from_integers(raw: &[i64], kappa: i64) -> Result<Self> {
        Self::new(raw.iter().map(|&x| int(x)).collect(), kappa)
    }

    pub fn size(&self) -> usize {
        self.intensities.len()
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    /// Size of the smallest coalition able to force the status quo.
    pub fn kappa_hat(&self) -> usize {
        self.size() - self.kappa + 1
    }

    pub fn intensities(&self) -> &[Rational] {
        &self.intensities
    }

    pub fn intensity(&self, member: usize) -> &Rational {
        &self.intensities[member]
    }

    /// Number of reform opponents (strictly negative intensity). Opponents
    /// occupy positions `0..opponents()`.
    pub fn opponents(&self) -> usize {
        self.intensities.iter().take_while(|u| u.is_negative()).count()
    }

    /// Number of reform supporters (non-negative intensity).
    pub fn supporters(&self) -> usize {
        self.size() - self.opponents()
    }

    pub fn total_intensity(&self) -> Rational {
        sum(&self.intensities)
    }

    /// Sorted position to caller index.
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// Reorders caller-indexed values into sorted order.
    pub fn to_sorted<T: Clone>(&self, user_order: &[T]) -> Result<Vec<T>> {
        self.check_len(user_order.len())?;
        Ok(self
            .permutation
            .iter()
            .map(|&k| user_order[k].clone())
            .collect())
    }

    /// Reorders sorted-order values back into caller order.
    pub fn to_user<T: Clone>(&self, sorted: &[T]) -> Result<Vec<T>> {
        self.check_len(sorted.len())?;
        let mut out: Vec<Option<T>> = vec![None; sorted.len()];
        for (pos, &k) in self.permutation.iter().enumerate() {
            out[k] = Some(sorted[pos].clone());
        }
        Ok(out.into_iter().map(|x| x.expect("permutation is a bijection")).collect())
    }

    pub(crate) fn check_len(&self, found: usize) -> Result<()> {
        if found != self.size() {
            return Err(Error::LengthMismatch {
                expected: self.size(),
                found,
            });
        }
        Ok(())
    }

    /// Same committee with every intensity multiplied by `lambda`.
    pub(crate) fn scaled_unchecked(&self, lambda: &Rational) -> Committee {
        Committee {
            intensities: self.intensities.iter().map(|u| u * lambda).collect(),
            kappa: self.kappa,
            permutation: self.permutation.clone(),
        }
    }
}

/// Zero-sum transfers, one per member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PromiseProfile(Vec<Rational>);

impl PromiseProfile {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        let total = sum(&values);
        if !total.is_zero() {
            return Err(Error::NotZeroSum { sum: total });
        }
        Ok(PromiseProfile(values))
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| int(x)).collect())
    }

    pub fn zero(members: usize) -> Self {
        PromiseProfile(vec![Rational::zero(); members])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.0
    }

    /// Half the sum of absolute entries: what promisers pay in total.
    pub fn total_transfer(&self) -> Rational {
        abs_sum(&self.0) * half()
    }

    pub fn scaled(&self, lambda: &Rational) -> PromiseProfile {
        PromiseProfile(self.0.iter().map(|x| x * lambda).collect())
    }

    /// Entrywise `self - other`; stays zero-sum.
    pub fn minus(&self, other: &PromiseProfile) -> Result<PromiseProfile> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(PromiseProfile(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Weighted average of profiles; the weights need not be normalized.
    pub fn combination(parts: &[(Rational, &PromiseProfile)]) -> Result<PromiseProfile> {
        let first = parts.first().ok_or(Error::EmptyCommittee)?.1;
        let total = sum(parts.iter().map(|(w, _)| w));
        let mut acc = vec![Rational::zero(); first.len()];
        for (w, p) in parts {
            if p.len() != first.len() {
                return Err(Error::LengthMismatch {
                    expected: first.len(),
                    found: p.len(),
                });
            }
            for (a, x) in acc.iter_mut().zip(&p.0) {
                *a += w * x;
            }
        }
        Ok(PromiseProfile(acc.into_iter().map(|a| a / &total).collect()))
    }
}

impl Index<usize> for PromiseProfile {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for PromiseProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// Reform-contingent promises `r` and status-quo-contingent promises `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairedProfile {
    pub reform: PromiseProfile,
    pub status_quo: PromiseProfile,
}

impl PairedProfile {
    pub fn new(reform: PromiseProfile, status_quo: PromiseProfile) -> Result<Self> {
        if reform.len() != status_quo.len() {
            return Err(Error::LengthMismatch {
                expected: reform.len(),
                found: status_quo.len(),
            });
        }
        Ok(PairedProfile { reform, status_quo })
    }

    /// Only reform-contingent promises.
    pub fn reform_only(reform: PromiseProfile) -> Self {
        let n = reform.len();
        PairedProfile {
            reform,
            status_quo: PromiseProfile::zero(n),
        }
    }

    pub fn len(&self) -> usize {
        self.reform.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reform.is_empty()
    }

    /// `½Σ|r| + ½Σ|s|`.
    pub fn total_transfer(&self) -> Rational {
        self.reform.total_transfer() + self.status_quo.total_transfer()
    }

    /// `r - s`, the single profile with the same stability.
    pub fn reduce_to_reform_contingent(&self) -> PromiseProfile {
        self.reform
            .minus(&self.status_quo)
            .expect("lengths checked at construction")
    }
}

/// Outcome of the vote.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Reform,
    StatusQuo,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Reform => "reform",
            Decision::StatusQuo => "status-quo",
        })
    }
}

/// Ex-post intensities, indexed like the committee.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntensityProfile(Vec<Rational>);

impl IntensityProfile {
    pub fn new(values: Vec<Rational>) -> Self {
        IntensityProfile(values)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<&Rational> {
        self.0.iter().min()
    }

    pub fn max(&self) -> Option<&Rational> {
        self.0.iter().max()
    }

    /// `max - min`; zero for an empty profile.
    pub fn range(&self) -> Rational {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => Rational::zero(),
        }
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }
}

impl Index<usize> for IntensityProfile {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for IntensityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// A nonempty set of members, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition(Vec<usize>);

impl Coalition {
    pub fn new(mut members: Vec<usize>, committee_size: usize) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::EmptyCommittee);
        }
        if let Some(&member) = members.iter().find(|&&m| m >= committee_size) {
            return Err(Error::MemberOutOfRange {
                member,
                members: committee_size,
            });
        }
        Ok(Coalition(members))
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, member: usize) -> bool {
        self.0.binary_search(&member).is_ok()
    }

    /// Members numbered from 1, for display.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|m| m + 1).collect()
    }
}

/// `R` iff at least `kappa` members have `u_i + r_i >= s_i`.
pub fn decision(committee: &Committee, profile: &PairedProfile) -> Result<Decision> {
    committee.check_len(profile.len())?;
    let yes = committee
        .intensities()
        .iter()
        .zip(profile.reform.values())
        .zip(profile.status_quo.values())
        .filter(|((u, r), s)| &(*u + *r) >= *s)
        .count();
    Ok(if yes >= committee.kappa() {
        Decision::Reform
    } else {
        Decision::StatusQuo
    })
}

/// `u + r` if the reform passes, otherwise `s`.
pub fn ex_post_intensities(
    committee: &Committee,
    profile: &PairedProfile,
) -> Result<IntensityProfile> {
    let values = match decision(committee, profile)? {
        Decision::Reform => committee
            .intensities()
            .iter()
            .zip(profile.reform.values())
            .map(|(u, r)| u + r)
            .collect(),
        Decision::StatusQuo => profile.status_quo.values().to_vec(),
    };
    Ok(IntensityProfile(values))
}

/// `u + r`, the ex-post intensities of a passing reform.
pub(crate) fn reform_payoffs(committee: &Committee, r: &PromiseProfile) -> Vec<Rational> {
    committee
        .intensities()
        .iter()
        .zip(r.values())
        .map(|(u, x)| u + x)
        .collect()
}

fn write_tuple(f: &mut fmt::Formatter<'_>, values: &[Rational]) -> fmt::Result {
    f.write_str("(")?;
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str(")")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn builds_sorted_committee_and_permutation() {
        let c = Committee::from_integers(&[5, -4, 1], 2).unwrap();
        assert_eq!(c.intensities(), ints(&[-4, 1, 5]).as_slice());
        assert_eq!(c.permutation(), &[1, 2, 0]);
        assert_eq!(c.kappa_hat(), 2);
        assert_eq!(c.opponents(), 1);
        assert_eq!(c.supporters(), 2);
        assert_eq!(c.to_user(c.intensities()).unwrap(), ints(&[5, -4, 1]));
    }

    #[test]
    fn zero_intensity_counts_as_supporter() {
        let c = Committee::from_integers(&[-1, 0, 3], 2).unwrap();
        assert_eq!(c.opponents(), 1);
    }

    #[test]
    fn rejects_inefficient_reform_and_bad_kappa() {
        assert!(matches!(
            Committee::from_integers(&[-3, 1, 2], 2),
            Err(Error::EfficiencyViolated { .. })
        ));
        assert!(matches!(
            Committee::from_integers(&[1, 2], 0),
            Err(Error::KappaOutOfRange { .. })
        ));
        assert!(matches!(
            Committee::from_integers(&[1, 2], 3),
            Err(Error::KappaOutOfRange { .. })
        ));
        assert_eq!(Committee::from_integers(&[], 1), Err(Error::EmptyCommittee));
    }

    #[test]
    fn profile_must_be_zero_sum() {
        assert!(PromiseProfile::from_integers(&[1, -1, 0]).is_ok());
        assert!(matches!(
            PromiseProfile::from_integers(&[1, 0, 0]),
            Err(Error::NotZeroSum { .. })
        ));
    }

    #[test]
    fn decision_without_promises_needs_kappa_supporters() {
        let c = Committee::from_integers(&[-4, 1, 5], 2).unwrap();
        let none = PairedProfile::reform_only(PromiseProfile::zero(3));
        assert_eq!(decision(&c, &none).unwrap(), Decision::Reform);
        let c3 = Committee::from_integers(&[-4, 1, 5], 3).unwrap();
        assert_eq!(decision(&c3, &none).unwrap(), Decision::StatusQuo);
    }

    #[test]
    fn ex_post_follows_decision() {
        let c = Committee::from_integers(&[-4, 1, 5], 2).unwrap();
        let r = PromiseProfile::from_integers(&[3, 0, -3]).unwrap();
        let v = ex_post_intensities(&c, &PairedProfile::reform_only(r)).unwrap();
        assert_eq!(v.values(), ints(&[-1, 1, 2]).as_slice());

        let s = PromiseProfile::from_integers(&[2, 2, -4]).unwrap();
        let r = PromiseProfile::from_integers(&[0, 0, 0]).unwrap();
        let p = PairedProfile::new(r, s.clone()).unwrap();
        // 1 + 0 < 2 and -4 + 0 < 2, only member 3 votes reform
        assert_eq!(decision(&c, &p).unwrap(), Decision::StatusQuo);
        assert_eq!(ex_post_intensities(&c, &p).unwrap().values(), s.values());
    }

    #[test]
    fn transfers_and_reduction() {
        let r = PromiseProfile::from_integers(&[3, 0, -3]).unwrap();
        let s = PromiseProfile::new(vec![frac(1, 2), frac(-1, 2), int(0)]).unwrap();
        let p = PairedProfile::new(r, s).unwrap();
        assert_eq!(p.total_transfer(), frac(7, 2));
        assert_eq!(
            p.reduce_to_reform_contingent().values(),
            &[frac(5, 2), frac(1, 2), int(-3)]
        );
    }

    #[test]
    fn coalition_normalizes_and_validates() {
        let c = Coalition::new(vec![3, 0, 3], 4).unwrap();
        assert_eq!(c.members(), &[0, 3]);
        assert_eq!(c.one_based(), vec![1, 4]);
        assert!(Coalition::new(vec![4], 4).is_err());
        assert!(Coalition::new(vec![], 4).is_err());
    }

    #[test]
    fn combination_is_weighted_mean() {
        let a = PromiseProfile::from_integers(&[2, -2]).unwrap();
        let b = PromiseProfile::from_integers(&[0, 0]).unwrap();
        let m = PromiseProfile::combination(&[(int(1), &a), (int(3), &b)]).unwrap();
        assert_eq!(m.values(), &[frac(1, 2), frac(-1, 2)]);
    }

    #[test]
    fn intensity_range() {
        let v = IntensityProfile::new(ints(&[-1, 1, 2]));
        assert_eq!(v.range(), int(3));
        assert!(v.is_non_decreasing());
    }
}
