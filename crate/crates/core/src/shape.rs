//! Isomorphism types of finite abelian groups as invariant factor lists.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::arith;

/// A finite abelian group up to isomorphism: invariant factors
/// `d_1 | d_2 | ... | d_r`, ascending, with trivial factors dropped.
/// The trivial group is the empty list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct GroupShape {
    factors: Vec<u64>,
}

impl GroupShape {
    pub fn trivial() -> Self {
        GroupShape { factors: Vec::new() }
    }

    /// Shape of a direct product of cyclic groups of the given orders.
    /// Accepts any orders (composite, repeated, or 1) and normalises.
    pub fn from_cyclic_orders<I: IntoIterator<Item = u64>>(orders: I) -> Self {
        // Per prime, the descending exponent lists; column j across all
        // primes assembles the j-th largest invariant factor.
        let mut exps: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for n in orders {
            debug_assert!(n > 0, "cyclic order must be positive");
            for (p, e) in arith::factorize(n) {
                exps.entry(p).or_default().push(e);
            }
        }
        let mut rank = 0;
        for list in exps.values_mut() {
            list.sort_unstable_by(|x, y| y.cmp(x));
            rank = rank.max(list.len());
        }
        let mut factors = Vec::with_capacity(rank);
        for j in 0..rank {
            let mut d = 1u64;
            for (&p, list) in &exps {
                if let Some(&e) = list.get(j) {
                    d *= arith::pow(p, e);
                }
            }
            if d > 1 {
                factors.push(d);
            }
        }
        factors.reverse();
        GroupShape { factors }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Exponent: the largest invariant factor (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Shape of the direct product of two groups.
    pub fn product(&self, other: &GroupShape) -> GroupShape {
        GroupShape::from_cyclic_orders(self.factors.iter().chain(&other.factors).copied())
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "C{d}")?;
        }
        Ok(())
    }
}
