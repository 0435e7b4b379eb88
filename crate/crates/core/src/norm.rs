//! Norm groups of finite extensions and the class-field correspondence.
//!
//! Every norm group is a finite-index subgroup of the multiplicative
//! group modulo its maximal divisible subgroup, full on every pi1
//! coordinate (norm limitation): it is determined by an index in the
//! 2-torsion part (1 or 2) and one rank-2 component per pi2 prime.
//! The class fields are exactly the extension classes on which the norm
//! group has index equal to the degree, and they biject with the norm
//! subgroups; compositum maps to intersection and intersection to
//! product under this bijection.
//!
//! The `*_over_i` half describes the same correspondence one level up,
//! over the quadratic class obtained by adjoining a square root of -1,
//! where no 2-part is left.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::arith;
use crate::component::{ComponentError, PrimeComponent};
use crate::extension::{components_with_exponent, FiniteExtension, Reality};
use crate::field::FieldSpec;
use crate::shape::GroupShape;

/// A norm group of the base field: the index on the 2-torsion part
/// (1 or 2) plus one canonical rank-2 component per pi2 prime.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NormSubgroup {
    two_part: u8,
    components: BTreeMap<u64, PrimeComponent>,
}

/// A norm group over the i-adjoined base: the 2-part is gone and the
/// pi1 coordinates are still forced full, so only pi2 components remain.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NormSubgroupOverI {
    components: BTreeMap<u64, PrimeComponent>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NormError {
    /// two_part must be 1 or 2.
    TwoPart(u8),
    /// Norm groups only carry components at pi2 primes.
    NotPi2 { prime: u64 },
    Component(ComponentError),
}

impl fmt::Display for NormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormError::TwoPart(t) => write!(f, "two_part must be 1 or 2, got {t}"),
            NormError::NotPi2 { prime } => {
                write!(f, "prime {prime} is not a pi2 prime of the spec")
            }
            NormError::Component(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for NormError {}

impl From<ComponentError> for NormError {
    fn from(e: ComponentError) -> Self {
        NormError::Component(e)
    }
}

fn validated_pi2_components<I: IntoIterator<Item = PrimeComponent>>(
    spec: &FieldSpec,
    components: I,
) -> Result<BTreeMap<u64, PrimeComponent>, NormError> {
    let mut map = BTreeMap::new();
    for comp in components {
        if !spec.pi2().contains(&comp.prime()) {
            return Err(NormError::NotPi2 { prime: comp.prime() });
        }
        comp.validate(spec)?;
        map.insert(comp.prime(), comp);
    }
    for &p in spec.pi2() {
        map.entry(p).or_insert(PrimeComponent::plane(p, 0, 0, 0));
    }
    Ok(map)
}

impl NormSubgroup {
    /// Build from explicit components; absent pi2 primes become full.
    pub fn new<I: IntoIterator<Item = PrimeComponent>>(
        spec: &FieldSpec,
        two_part: u8,
        components: I,
    ) -> Result<Self, NormError> {
        if !(1..=2).contains(&two_part) {
            return Err(NormError::TwoPart(two_part));
        }
        Ok(NormSubgroup { two_part, components: validated_pi2_components(spec, components)? })
    }

    /// The whole group (index 1).
    pub fn full(spec: &FieldSpec) -> Self {
        Self::new(spec, 1, []).expect("empty component list is valid")
    }

    pub fn two_part(&self) -> u8 {
        self.two_part
    }

    pub fn component(&self, p: u64) -> Option<&PrimeComponent> {
        self.components.get(&p)
    }

    pub fn components(&self) -> impl Iterator<Item = &PrimeComponent> {
        self.components.values()
    }

    pub fn index(&self) -> u64 {
        let mut n: u128 = self.two_part as u128;
        for comp in self.components.values() {
            n *= comp.index() as u128;
        }
        u64::try_from(n).expect("index fits in u64")
    }

    pub fn is_full(&self) -> bool {
        self.index() == 1
    }

    /// Invariant factors of the quotient of the multiplicative group by
    /// this subgroup.
    pub fn quotient_shape(&self) -> GroupShape {
        GroupShape::from_cyclic_orders(
            core::iter::once(self.two_part as u64)
                .chain(self.components.values().flat_map(|c| c.quotient_cyclic_orders())),
        )
    }

    /// Whether other is a subgroup of self.
    pub fn contains(&self, other: &NormSubgroup) -> bool {
        self.two_part <= other.two_part
            && self.components.iter().all(|(p, mine)| {
                let theirs = other.components.get(p).expect("same spec primes");
                mine.contains(theirs)
            })
    }

    /// Intersection of subgroups: the norm group of the compositum of
    /// the two class fields.  Fails on level overflow.
    pub fn meet(&self, other: &NormSubgroup, spec: &FieldSpec) -> Result<Self, ComponentError> {
        let mut components = BTreeMap::new();
        for (&p, mine) in &self.components {
            let theirs = other.components.get(&p).expect("same spec primes");
            components.insert(p, mine.intersect(theirs, spec)?);
        }
        Ok(NormSubgroup { two_part: self.two_part.max(other.two_part), components })
    }

    /// Product of subgroups: the norm group of the intersection of the
    /// two class fields.
    pub fn join(&self, other: &NormSubgroup) -> Self {
        let mut components = BTreeMap::new();
        for (&p, mine) in &self.components {
            let theirs = other.components.get(&p).expect("same spec primes");
            components.insert(p, mine.sum(theirs));
        }
        NormSubgroup { two_part: self.two_part.min(other.two_part), components }
    }
}

impl fmt::Display for NormSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "index {} (2-part {})", self.index(), self.two_part)?;
        for comp in self.components.values().filter(|c| !c.is_full()) {
            write!(f, " {comp}")?;
        }
        Ok(())
    }
}

impl NormSubgroupOverI {
    pub fn new<I: IntoIterator<Item = PrimeComponent>>(
        spec: &FieldSpec,
        components: I,
    ) -> Result<Self, NormError> {
        Ok(NormSubgroupOverI { components: validated_pi2_components(spec, components)? })
    }

    pub fn full(spec: &FieldSpec) -> Self {
        Self::new(spec, []).expect("empty component list is valid")
    }

    pub fn component(&self, p: u64) -> Option<&PrimeComponent> {
        self.components.get(&p)
    }

    pub fn components(&self) -> impl Iterator<Item = &PrimeComponent> {
        self.components.values()
    }

    pub fn index(&self) -> u64 {
        let mut n: u128 = 1;
        for comp in self.components.values() {
            n *= comp.index() as u128;
        }
        u64::try_from(n).expect("index fits in u64")
    }

    pub fn quotient_shape(&self) -> GroupShape {
        GroupShape::from_cyclic_orders(
            self.components.values().flat_map(|c| c.quotient_cyclic_orders()),
        )
    }

    pub fn contains(&self, other: &NormSubgroupOverI) -> bool {
        self.components
            .iter()
            .all(|(&p, mine)| other.component(p).is_some_and(|theirs| mine.contains(theirs)))
    }
}

impl fmt::Display for NormSubgroupOverI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "index {}", self.index())?;
        for comp in self.components.values().filter(|c| !c.is_full()) {
            write!(f, " {comp}")?;
        }
        Ok(())
    }
}

/// The norm group of an extension class over the base field.  The pi1
/// components of the class contribute nothing (norm limitation), and
/// the 2-part is 2 exactly for nonreal classes.
pub fn norm_group(spec: &FieldSpec, ext: &FiniteExtension) -> NormSubgroup {
    let two_part = if ext.reality().is_real() { 1 } else { 2 };
    let components = spec
        .pi2()
        .iter()
        .map(|&p| *ext.component(p).expect("extension covers spec primes"));
    NormSubgroup::new(spec, two_part, components).expect("extension components are valid")
}

/// The unique class field with the given norm group.
pub fn class_field_of(spec: &FieldSpec, u: &NormSubgroup) -> FiniteExtension {
    let reality = if u.two_part == 2 { Reality::Nonreal } else { Reality::Real };
    FiniteExtension::new(spec, reality, u.components.values().copied())
        .expect("norm components are valid")
}

/// The class-field core of an extension: the largest class field inside
/// it, the unique one with the same norm group.
pub fn class_field_core(spec: &FieldSpec, ext: &FiniteExtension) -> FiniteExtension {
    class_field_of(spec, &norm_group(spec, ext))
}

/// Why no norm group of the requested index can exist over the spec.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InfeasibleReason {
    ZeroIndex,
    /// Norm indices have 2-part at most 2.
    DivisibleByFour,
    /// Norm indices are never divisible by a pi1 prime.
    Pi1Prime(u64),
    /// The prime divides no admissible index over this spec.
    UnsupportedPrime(u64),
    /// Feasible in principle but beyond the spec's truncation level.
    LevelInsufficient { prime: u64, required: u32, available: u32 },
}

impl fmt::Display for InfeasibleReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfeasibleReason::ZeroIndex => write!(f, "index 0 is not an index"),
            InfeasibleReason::DivisibleByFour => write!(f, "index divisible by 4"),
            InfeasibleReason::Pi1Prime(p) => write!(f, "index divisible by pi1 prime {p}"),
            InfeasibleReason::UnsupportedPrime(p) => {
                write!(f, "index divisible by {p}, which is outside {{2}} and pi2")
            }
            InfeasibleReason::LevelInsufficient { prime, required, available } => write!(
                f,
                "index needs level {required} at prime {prime}, spec allows {available}"
            ),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IndexFeasibility {
    Feasible(Vec<NormSubgroup>),
    Infeasible(InfeasibleReason),
}

impl IndexFeasibility {
    pub fn unwrap_feasible(self) -> Vec<NormSubgroup> {
        match self {
            IndexFeasibility::Feasible(v) => v,
            IndexFeasibility::Infeasible(r) => panic!("infeasible index: {r}"),
        }
    }
}

/// All norm groups of index exactly n, sorted, or the reason none exist.
pub fn norm_groups_of_index(spec: &FieldSpec, n: u64) -> IndexFeasibility {
    if n == 0 {
        return IndexFeasibility::Infeasible(InfeasibleReason::ZeroIndex);
    }
    let mut two_part = 1u8;
    let mut exponents: Vec<(u64, u32)> = Vec::new();
    for (p, e) in arith::factorize(n) {
        if p == 2 {
            if e >= 2 {
                return IndexFeasibility::Infeasible(InfeasibleReason::DivisibleByFour);
            }
            two_part = 2;
        } else if spec.pi1().contains(&p) {
            return IndexFeasibility::Infeasible(InfeasibleReason::Pi1Prime(p));
        } else if !spec.pi2().contains(&p) {
            return IndexFeasibility::Infeasible(InfeasibleReason::UnsupportedPrime(p));
        } else {
            let available = spec.level(p).expect("pi2 prime has a level");
            if e > available {
                return IndexFeasibility::Infeasible(InfeasibleReason::LevelInsufficient {
                    prime: p,
                    required: e,
                    available,
                });
            }
            exponents.push((p, e));
        }
    }

    let mut out = Vec::new();
    let mut chosen: Vec<PrimeComponent> = Vec::new();
    fn fill(
        spec: &FieldSpec,
        two_part: u8,
        exponents: &[(u64, u32)],
        chosen: &mut Vec<PrimeComponent>,
        out: &mut Vec<NormSubgroup>,
    ) {
        match exponents.split_first() {
            None => out.push(
                NormSubgroup::new(spec, two_part, chosen.iter().copied())
                    .expect("enumerated components are valid"),
            ),
            Some((&(p, e), rest)) => {
                for comp in components_with_exponent(spec, p, e) {
                    chosen.push(comp);
                    fill(spec, two_part, rest, chosen, out);
                    chosen.pop();
                }
            }
        }
    }
    fill(spec, two_part, &exponents, &mut chosen, &mut out);
    out.sort();
    IndexFeasibility::Feasible(out)
}

/// The norm group of ext(i) over the i-adjoined base.  Norm limitation
/// holds there too, so only the pi2 components survive.
pub fn norm_group_over_i(spec: &FieldSpec, ext: &FiniteExtension) -> NormSubgroupOverI {
    let components = spec
        .pi2()
        .iter()
        .map(|&p| *ext.component(p).expect("extension covers spec primes"));
    NormSubgroupOverI::new(spec, components).expect("extension components are valid")
}

/// Pull a norm group over the i-adjoined base down to the base field.
/// The flag picks the fiber: whether the extension it came from
/// contains a square root of -1.
pub fn restrict_to_base(u1: &NormSubgroupOverI, nonreal: bool) -> NormSubgroup {
    NormSubgroup { two_part: if nonreal { 2 } else { 1 }, components: u1.components.clone() }
}

/// Push a norm group of the base up over the i-adjoined base.  Inverse
/// of restrict_to_base in both fibers.
pub fn extend_over_i(u: &NormSubgroup) -> NormSubgroupOverI {
    NormSubgroupOverI { components: u.components.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::SigmaClass;
    use alloc::vec;

    fn spec() -> FieldSpec {
        FieldSpec::new([3], [5], [(3, 2), (5, 2)]).unwrap()
    }

    fn ext(s: &FieldSpec, real: bool, comps: Vec<PrimeComponent>) -> FiniteExtension {
        let r = if real { Reality::Real } else { Reality::Nonreal };
        FiniteExtension::new(s, r, comps).unwrap()
    }

    #[test]
    fn norm_groups_of_extensions() {
        let s = spec();
        assert!(norm_group(&s, &FiniteExtension::base(&s)).is_full());

        // A class field keeps its full index.
        let quintic = ext(&s, true, vec![PrimeComponent::plane(5, 1, 0, 0)]);
        let u = norm_group(&s, &quintic);
        assert_eq!(u.index(), 5);
        assert_eq!(u.index(), quintic.degree());

        // pi1 components are invisible to the norm group.
        let nonic = ext(&s, true, vec![PrimeComponent::line(3, 2)]);
        assert!(norm_group(&s, &nonic).is_full());

        let mixed = ext(
            &s,
            false,
            vec![PrimeComponent::line(3, 1), PrimeComponent::plane(5, 1, 0, 0)],
        );
        let v = norm_group(&s, &mixed);
        assert_eq!(v.two_part(), 2);
        assert_eq!(v.index(), 10);
        assert_eq!(mixed.degree(), 30);
    }

    #[test]
    fn quotient_shapes() {
        let s = spec();
        assert!(NormSubgroup::full(&s).quotient_shape().is_trivial());
        let i_adj = FiniteExtension::i_adjoined_base(&s);
        assert_eq!(norm_group(&s, &i_adj).quotient_shape().factors(), [2]);
        let big = ext(&s, false, vec![PrimeComponent::plane(5, 1, 1, 0)]);
        assert_eq!(norm_group(&s, &big).quotient_shape().factors(), [5, 10]);
    }

    #[test]
    fn lattice_operations() {
        let s = spec();
        let full = NormSubgroup::full(&s);
        let u = NormSubgroup::new(&s, 1, [PrimeComponent::plane(5, 1, 0, 0)]).unwrap();
        let v = NormSubgroup::new(&s, 2, [PrimeComponent::plane(5, 0, 1, 0)]).unwrap();

        assert_eq!(full.meet(&u, &s).unwrap(), u);
        assert_eq!(full.join(&u), full);
        assert!(full.contains(&u));
        assert!(!u.contains(&full));

        let m = u.meet(&v, &s).unwrap();
        assert_eq!(m.two_part(), 2);
        assert_eq!(m.component(5).unwrap().plane_triple(), Some((1, 1, 0)));
        assert_eq!(m.index(), 50);
        assert!(u.contains(&m) && v.contains(&m));

        let j = u.join(&v);
        assert_eq!(j, full);
    }

    #[test]
    fn class_field_round_trips() {
        let s = spec();
        assert_eq!(class_field_of(&s, &NormSubgroup::full(&s)), FiniteExtension::base(&s));

        let u = NormSubgroup::new(&s, 2, [PrimeComponent::plane(5, 1, 0, 0)]).unwrap();
        let cf = class_field_of(&s, &u);
        assert!(!cf.reality().is_real());
        assert_eq!(cf.degree(), 10);
        assert_eq!(norm_group(&s, &cf), u);
        assert_ne!(cf.sigma_class(&s), SigmaClass::Neither);

        // The core strips exactly the pi1 part.
        let mixed = ext(
            &s,
            false,
            vec![PrimeComponent::line(3, 1), PrimeComponent::plane(5, 1, 0, 0)],
        );
        let core = class_field_core(&s, &mixed);
        assert_eq!(core, cf);
        assert!(core.embeds_in(&mixed));
        assert_eq!(class_field_core(&s, &core), core);

        let pure_pi1 = ext(&s, true, vec![PrimeComponent::line(3, 1)]);
        assert_eq!(class_field_core(&s, &pure_pi1), FiniteExtension::base(&s));
    }

    #[test]
    fn index_enumeration() {
        let s = spec();
        assert_eq!(
            norm_groups_of_index(&s, 1),
            IndexFeasibility::Feasible(vec![NormSubgroup::full(&s)])
        );
        let ten = norm_groups_of_index(&s, 10).unwrap_feasible();
        assert_eq!(ten.len(), 6);
        assert!(ten.iter().all(|u| u.two_part() == 2 && u.index() == 10));
        let quarter = norm_groups_of_index(&s, 25).unwrap_feasible();
        assert_eq!(quarter.len(), 31);

        let infeasible = |n| match norm_groups_of_index(&s, n) {
            IndexFeasibility::Infeasible(r) => r,
            IndexFeasibility::Feasible(_) => panic!("expected infeasible for {n}"),
        };
        assert_eq!(infeasible(0), InfeasibleReason::ZeroIndex);
        assert_eq!(infeasible(4), InfeasibleReason::DivisibleByFour);
        assert_eq!(infeasible(3), InfeasibleReason::Pi1Prime(3));
        assert_eq!(infeasible(7), InfeasibleReason::UnsupportedPrime(7));
        assert_eq!(
            infeasible(125),
            InfeasibleReason::LevelInsufficient { prime: 5, required: 3, available: 2 }
        );
    }

    #[test]
    fn two_level_correspondence() {
        let s = spec();
        let e1_full = NormSubgroupOverI::full(&s);
        assert_eq!(norm_group_over_i(&s, &FiniteExtension::base(&s)), e1_full);
        assert_eq!(norm_group_over_i(&s, &FiniteExtension::i_adjoined_base(&s)), e1_full);
        let pi1_only = ext(&s, true, vec![PrimeComponent::line(3, 2)]);
        assert_eq!(norm_group_over_i(&s, &pi1_only), e1_full);

        let u1 = NormSubgroupOverI::new(&s, [PrimeComponent::plane(5, 1, 1, 0)]).unwrap();
        assert_eq!(u1.index(), 25);
        for nonreal in [false, true] {
            let down = restrict_to_base(&u1, nonreal);
            assert_eq!(down.index(), if nonreal { 50 } else { 25 });
            assert_eq!(extend_over_i(&down), u1);
        }
        // Real-fiber quotient shapes agree across the two levels.
        assert_eq!(
            restrict_to_base(&u1, false).quotient_shape(),
            u1.quotient_shape()
        );
    }
}
