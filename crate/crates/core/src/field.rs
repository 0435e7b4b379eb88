//! The base field configuration: which odd primes carry cohomological
//! dimension 1 or 2, and how deep the finite truncations go.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::arith;

/// Invariants of a formally real quasilocal field: the partition of its
/// relevant odd primes by cohomological dimension, plus a per-prime
/// truncation level gating how deep the finite lattice computations go.
///
/// `pi1` and `pi2` are disjoint sets of odd primes.  The derived support
/// is `{2} ∪ pi1 ∪ pi2`.  Levels are defined exactly on `pi1 ∪ pi2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldSpec {
    pi1: BTreeSet<u64>,
    pi2: BTreeSet<u64>,
    level: BTreeMap<u64, u32>,
}

/// How a prime relates to the field: 2 is always in the support, odd
/// primes are in `pi1`, in `pi2`, or outside.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PrimeClass {
    Two,
    Pi1,
    Pi2,
    Outside,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SpecError {
    NotPrime(u64),
    EvenMember(u64),
    SharedPrime(u64),
    MissingLevel(u64),
    UnknownLevelPrime(u64),
    ZeroLevel(u64),
    /// p^(2*level) must fit in u64 so that all intermediate lattice
    /// arithmetic stays exact.
    LevelTooLarge(u64),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::NotPrime(p) => write!(f, "{p} is not prime"),
            SpecError::EvenMember(p) => write!(f, "{p} is not an odd prime"),
            SpecError::SharedPrime(p) => write!(f, "prime {p} appears in both pi1 and pi2"),
            SpecError::MissingLevel(p) => write!(f, "no level given for prime {p}"),
            SpecError::UnknownLevelPrime(p) => {
                write!(f, "level given for {p}, which is in neither pi1 nor pi2")
            }
            SpecError::ZeroLevel(p) => write!(f, "level for prime {p} must be at least 1"),
            SpecError::LevelTooLarge(p) => write!(f, "level for prime {p} is too large"),
        }
    }
}

impl core::error::Error for SpecError {}

impl FieldSpec {
    pub fn new<I, J, L>(pi1: I, pi2: J, level: L) -> Result<Self, SpecError>
    where
        I: IntoIterator<Item = u64>,
        J: IntoIterator<Item = u64>,
        L: IntoIterator<Item = (u64, u32)>,
    {
        let pi1: BTreeSet<u64> = pi1.into_iter().collect();
        let pi2: BTreeSet<u64> = pi2.into_iter().collect();
        let level: BTreeMap<u64, u32> = level.into_iter().collect();
        for &p in pi1.iter().chain(&pi2) {
            if !arith::is_prime(p) {
                return Err(SpecError::NotPrime(p));
            }
            if p == 2 {
                return Err(SpecError::EvenMember(p));
            }
        }
        if let Some(&p) = pi1.intersection(&pi2).next() {
            return Err(SpecError::SharedPrime(p));
        }
        for &p in pi1.iter().chain(&pi2) {
            match level.get(&p) {
                None => return Err(SpecError::MissingLevel(p)),
                Some(0) => return Err(SpecError::ZeroLevel(p)),
                Some(&k) => {
                    if p.checked_pow(2 * k).is_none() {
                        return Err(SpecError::LevelTooLarge(p));
                    }
                }
            }
        }
        for &p in level.keys() {
            if !pi1.contains(&p) && !pi2.contains(&p) {
                return Err(SpecError::UnknownLevelPrime(p));
            }
        }
        Ok(FieldSpec { pi1, pi2, level })
    }

    pub fn pi1(&self) -> &BTreeSet<u64> {
        &self.pi1
    }

    pub fn pi2(&self) -> &BTreeSet<u64> {
        &self.pi2
    }

    pub fn levels(&self) -> &BTreeMap<u64, u32> {
        &self.level
    }

    /// The support `{2} ∪ pi1 ∪ pi2`, ascending.
    pub fn support(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.pi1.union(&self.pi2).copied().collect();
        out.insert(0, 2);
        out.sort_unstable();
        out
    }

    /// The primes carrying lattice data, i.e. `pi1 ∪ pi2`, ascending.
    pub fn lattice_primes(&self) -> Vec<u64> {
        self.pi1.union(&self.pi2).copied().collect()
    }

    pub fn classify(&self, p: u64) -> Result<PrimeClass, SpecError> {
        if !arith::is_prime(p) {
            return Err(SpecError::NotPrime(p));
        }
        Ok(if p == 2 {
            PrimeClass::Two
        } else if self.pi1.contains(&p) {
            PrimeClass::Pi1
        } else if self.pi2.contains(&p) {
            PrimeClass::Pi2
        } else {
            PrimeClass::Outside
        })
    }

    /// Module rank of the lattice data at p: 1 on pi1, 2 on pi2.
    pub fn rank(&self, p: u64) -> Option<u8> {
        if self.pi1.contains(&p) {
            Some(1)
        } else if self.pi2.contains(&p) {
            Some(2)
        } else {
            None
        }
    }

    pub fn level(&self, p: u64) -> Option<u32> {
        self.level.get(&p).copied()
    }

    /// A field is strictly quasilocal exactly when no prime has
    /// cohomological dimension 1, i.e. pi1 is empty.
    pub fn is_strictly_quasilocal(&self) -> bool {
        self.pi1.is_empty()
    }

    /// Copy of the spec with each listed level raised to at least the
    /// given value.  Levels only control truncation depth, never the
    /// field being modelled, so verifiers use this to provision the
    /// depth their sweeps need.  Primes outside `pi1 ∪ pi2` are ignored.
    pub fn with_levels_at_least<I: IntoIterator<Item = (u64, u32)>>(&self, wanted: I) -> Self {
        let mut spec = self.clone();
        for (p, k) in wanted {
            if let Some(cur) = spec.level.get_mut(&p) {
                *cur = (*cur).max(k);
            }
        }
        spec
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> FieldSpec {
        FieldSpec::new([3], [5], [(3, 1), (5, 2)]).unwrap()
    }

    #[test]
    fn accepts_valid_spec() {
        let s = reference();
        assert_eq!(s.support(), [2, 3, 5]);
        assert_eq!(s.lattice_primes(), [3, 5]);
        assert_eq!(s.level(5), Some(2));
        assert_eq!(s.rank(3), Some(1));
        assert_eq!(s.rank(5), Some(2));
        assert_eq!(s.rank(7), None);
        assert!(!s.is_strictly_quasilocal());
        assert!(FieldSpec::new([], [5], [(5, 1)]).unwrap().is_strictly_quasilocal());
        assert!(FieldSpec::new([], [], []).unwrap().is_strictly_quasilocal());
    }

    #[test]
    fn classification() {
        let s = reference();
        assert_eq!(s.classify(2), Ok(PrimeClass::Two));
        assert_eq!(s.classify(3), Ok(PrimeClass::Pi1));
        assert_eq!(s.classify(5), Ok(PrimeClass::Pi2));
        assert_eq!(s.classify(7), Ok(PrimeClass::Outside));
        assert_eq!(s.classify(6), Err(SpecError::NotPrime(6)));
        assert_eq!(s.classify(1), Err(SpecError::NotPrime(1)));
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(
            FieldSpec::new([9], [], [(9, 1)]),
            Err(SpecError::NotPrime(9))
        );
        assert_eq!(
            FieldSpec::new([2], [], [(2, 1)]),
            Err(SpecError::EvenMember(2))
        );
        assert_eq!(
            FieldSpec::new([5], [5], [(5, 1)]),
            Err(SpecError::SharedPrime(5))
        );
        assert_eq!(FieldSpec::new([3], [], []), Err(SpecError::MissingLevel(3)));
        assert_eq!(
            FieldSpec::new([3], [], [(3, 0)]),
            Err(SpecError::ZeroLevel(3))
        );
        assert_eq!(
            FieldSpec::new([3], [], [(3, 1), (7, 1)]),
            Err(SpecError::UnknownLevelPrime(7))
        );
        assert_eq!(
            FieldSpec::new([3], [], [(3, 40)]),
            Err(SpecError::LevelTooLarge(3))
        );
    }

    #[test]
    fn level_raising() {
        let s = reference().with_levels_at_least([(3, 4), (5, 1), (7, 9)]);
        assert_eq!(s.level(3), Some(4));
        assert_eq!(s.level(5), Some(2));
        assert_eq!(s.level(7), None);
        assert_eq!(s.pi1(), reference().pi1());
    }
}
