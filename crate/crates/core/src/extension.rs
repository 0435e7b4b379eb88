//! The lattice of finite extension classes of the base field.
//!
//! A class is a reality flag (does the extension embed in the fixed real
//! closure?) together with one canonical submodule per lattice prime.
//! Compositum and intersection act componentwise in the opposite order
//! (smaller submodule = larger field), and only the nonreal classes and
//! the base field itself are normal.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::arith;
use crate::component::{ComponentError, PrimeComponent};
use crate::field::FieldSpec;
use crate::shape::GroupShape;

/// Whether the class embeds in the fixed real closure of the base field.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Reality {
    Real,
    Nonreal,
}

impl Reality {
    pub fn is_real(self) -> bool {
        matches!(self, Reality::Real)
    }
}

/// Position relative to the two canonical towers: Sigma0 collects the
/// real classes trivial at every pi1 prime, Sigma1 the nonreal ones.
/// Together they are exactly the class fields.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SigmaClass {
    Sigma0,
    Sigma1,
    Neither,
}

impl fmt::Display for SigmaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaClass::Sigma0 => write!(f, "S0"),
            SigmaClass::Sigma1 => write!(f, "S1"),
            SigmaClass::Neither => write!(f, "-"),
        }
    }
}

/// A finite extension class: reality flag plus one canonical component
/// for every lattice prime of the spec.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteExtension {
    reality: Reality,
    components: BTreeMap<u64, PrimeComponent>,
}

impl FiniteExtension {
    /// Build a class from the given components; primes of the spec that
    /// are not mentioned get the full (index 1) component.
    pub fn new<I: IntoIterator<Item = PrimeComponent>>(
        spec: &FieldSpec,
        reality: Reality,
        components: I,
    ) -> Result<Self, ComponentError> {
        let mut map = BTreeMap::new();
        for comp in components {
            comp.validate(spec)?;
            map.insert(comp.prime(), comp);
        }
        for p in spec.lattice_primes() {
            map.entry(p).or_insert(PrimeComponent::full(spec, p).expect("lattice prime"));
        }
        Ok(FiniteExtension { reality, components: map })
    }

    /// The base field itself.
    pub fn base(spec: &FieldSpec) -> Self {
        Self::new(spec, Reality::Real, []).expect("no components to validate")
    }

    /// The quadratic class obtained by adjoining a square root of -1.
    pub fn i_adjoined_base(spec: &FieldSpec) -> Self {
        Self::base(spec).adjoin_i()
    }

    pub fn reality(&self) -> Reality {
        self.reality
    }

    pub fn component(&self, p: u64) -> Option<&PrimeComponent> {
        self.components.get(&p)
    }

    pub fn components(&self) -> impl Iterator<Item = &PrimeComponent> {
        self.components.values()
    }

    pub fn degree(&self) -> u64 {
        let mut d: u128 = if self.reality.is_real() { 1 } else { 2 };
        for comp in self.components.values() {
            d *= comp.index() as u128;
        }
        u64::try_from(d).expect("degree fits in u64")
    }

    /// Normal over the base exactly for nonreal classes and the base
    /// field itself.
    pub fn is_normal(&self) -> bool {
        !self.reality.is_real() || self.degree() == 1
    }

    pub fn adjoin_i(&self) -> Self {
        FiniteExtension { reality: Reality::Nonreal, components: self.components.clone() }
    }

    /// The real class with the same components (the odd-degree part).
    pub fn odd_part(&self) -> Self {
        FiniteExtension { reality: Reality::Real, components: self.components.clone() }
    }

    /// Whether self embeds in target over the base field: target must
    /// have smaller components everywhere, and a nonreal class only
    /// embeds in nonreal classes.
    pub fn embeds_in(&self, target: &FiniteExtension) -> bool {
        if !self.reality.is_real() && target.reality.is_real() {
            return false;
        }
        self.components.iter().all(|(p, mine)| {
            let theirs = target.components.get(p).expect("same spec primes");
            mine.contains(theirs)
        })
    }

    /// Compositum: componentwise intersection of submodules; real only
    /// when both factors are real.  Fails when an intersection needs a
    /// deeper truncation level than the spec provides.
    pub fn compositum(
        &self,
        other: &FiniteExtension,
        spec: &FieldSpec,
    ) -> Result<Self, ComponentError> {
        let reality = if self.reality.is_real() && other.reality.is_real() {
            Reality::Real
        } else {
            Reality::Nonreal
        };
        let mut components = BTreeMap::new();
        for (&p, mine) in &self.components {
            let theirs = other.components.get(&p).expect("same spec primes");
            components.insert(p, mine.intersect(theirs, spec)?);
        }
        Ok(FiniteExtension { reality, components })
    }

    /// Intersection: componentwise sum of submodules; nonreal only when
    /// both factors are nonreal.
    pub fn intersect(&self, other: &FiniteExtension) -> Self {
        let reality = if self.reality.is_real() || other.reality.is_real() {
            Reality::Real
        } else {
            Reality::Nonreal
        };
        let mut components = BTreeMap::new();
        for (&p, mine) in &self.components {
            let theirs = other.components.get(&p).expect("same spec primes");
            components.insert(p, mine.sum(theirs));
        }
        FiniteExtension { reality, components }
    }

    /// Shape of the Galois group of the i-adjoined class over the
    /// i-adjoined base (the abelian layer of the full Galois group).
    pub fn galois_shape(&self) -> GroupShape {
        GroupShape::from_cyclic_orders(
            self.components.values().flat_map(|c| c.quotient_cyclic_orders()),
        )
    }

    pub fn sigma_class(&self, spec: &FieldSpec) -> SigmaClass {
        let pi1_full = spec.pi1().iter().all(|p| self.components[p].is_full());
        match (pi1_full, self.reality) {
            (true, Reality::Real) => SigmaClass::Sigma0,
            (true, Reality::Nonreal) => SigmaClass::Sigma1,
            (false, _) => SigmaClass::Neither,
        }
    }

    fn sort_key(&self) -> (u64, Reality, Vec<PrimeComponent>) {
        (self.degree(), self.reality, self.components.values().copied().collect())
    }
}

impl PartialOrd for FiniteExtension {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteExtension {
    /// Degree first, then reality, then canonical component data; the
    /// order used by the deterministic enumerations.
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for FiniteExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} deg {}",
            if self.reality.is_real() { "real" } else { "nonreal" },
            self.degree()
        )?;
        for comp in self.components.values().filter(|c| !c.is_full()) {
            write!(f, " {comp}")?;
        }
        Ok(())
    }
}

/// Structure of the relative Brauer group of the class: nonreal classes
/// see the full quasicyclic sum over pi2, real ones only 2-torsion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BrauerDescriptor {
    QuasicyclicSum(BTreeSet<u64>),
    ExponentAtMostTwo,
}

pub fn brauer_descriptor(spec: &FieldSpec, ext: &FiniteExtension) -> BrauerDescriptor {
    if ext.reality().is_real() {
        BrauerDescriptor::ExponentAtMostTwo
    } else {
        BrauerDescriptor::QuasicyclicSum(spec.pi2().clone())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnumerationError {
    /// The requested degree bound reaches index exponents beyond the
    /// truncation level of some prime.
    LevelInsufficient { prime: u64, required: u32, available: u32 },
}

impl fmt::Display for EnumerationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerationError::LevelInsufficient { prime, required, available } => write!(
                f,
                "degree bound needs level {required} at prime {prime}, spec allows {available}"
            ),
        }
    }
}

impl core::error::Error for EnumerationError {}

/// All components at p with index exponent exactly e, in canonical order.
pub(crate) fn components_with_exponent(spec: &FieldSpec, p: u64, e: u32) -> Vec<PrimeComponent> {
    match spec.rank(p).expect("lattice prime") {
        1 => [PrimeComponent::line(p, e)].into(),
        _ => {
            let mut out = Vec::new();
            for a in 0..=e {
                let b = e - a;
                for c in 0..arith::pow(p, b) {
                    out.push(PrimeComponent::plane(p, a, b, c));
                }
            }
            out
        }
    }
}

/// Every extension class of degree at most max_degree, sorted by degree
/// and then by canonical data.
pub fn enumerate_extensions(
    spec: &FieldSpec,
    max_degree: u64,
) -> Result<Vec<FiniteExtension>, EnumerationError> {
    let primes = spec.lattice_primes();
    let mut per_prime: Vec<Vec<PrimeComponent>> = Vec::with_capacity(primes.len());
    for &p in &primes {
        let required = arith::ilog(p, max_degree.max(1));
        let available = spec.level(p).expect("lattice prime");
        if required > available {
            return Err(EnumerationError::LevelInsufficient { prime: p, required, available });
        }
        let mut comps = Vec::new();
        for e in 0..=required {
            comps.extend(components_with_exponent(spec, p, e));
        }
        per_prime.push(comps);
    }

    let mut out = Vec::new();
    let mut chosen: Vec<PrimeComponent> = Vec::with_capacity(primes.len());
    fn fill(
        spec: &FieldSpec,
        per_prime: &[Vec<PrimeComponent>],
        chosen: &mut Vec<PrimeComponent>,
        product: u64,
        max_degree: u64,
        out: &mut Vec<FiniteExtension>,
    ) {
        match per_prime.split_first() {
            None => {
                let real = FiniteExtension::new(spec, Reality::Real, chosen.iter().copied())
                    .expect("enumerated components are valid");
                if 2 * product <= max_degree {
                    out.push(real.adjoin_i());
                }
                out.push(real);
            }
            Some((head, rest)) => {
                for comp in head {
                    let next = product.saturating_mul(comp.index());
                    if next > max_degree {
                        continue;
                    }
                    chosen.push(*comp);
                    fill(spec, rest, chosen, next, max_degree, out);
                    chosen.pop();
                }
            }
        }
    }
    if max_degree >= 1 {
        fill(spec, &per_prime, &mut chosen, 1, max_degree, &mut out);
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn spec() -> FieldSpec {
        FieldSpec::new([3], [5], [(3, 2), (5, 2)]).unwrap()
    }

    fn real_ext(s: &FieldSpec, comps: Vec<PrimeComponent>) -> FiniteExtension {
        FiniteExtension::new(s, Reality::Real, comps).unwrap()
    }

    #[test]
    fn degree_and_normality() {
        let s = spec();
        let base = FiniteExtension::base(&s);
        assert_eq!(base.degree(), 1);
        assert!(base.is_normal());
        assert!(base.reality().is_real());

        let cubic = real_ext(&s, vec![PrimeComponent::line(3, 1)]);
        assert_eq!(cubic.degree(), 3);
        assert!(!cubic.is_normal());

        let sextic = cubic.adjoin_i();
        assert_eq!(sextic.degree(), 6);
        assert!(sextic.is_normal());
        assert_eq!(sextic.odd_part(), cubic);
    }

    #[test]
    fn compositum_and_intersection() {
        let s = spec();
        let x = real_ext(&s, vec![PrimeComponent::plane(5, 1, 0, 0)]);
        let y = real_ext(&s, vec![PrimeComponent::plane(5, 0, 1, 0)]);
        let xy = x.compositum(&y, &s).unwrap();
        assert_eq!(xy.degree(), 25);
        assert!(xy.reality().is_real());
        assert_eq!(xy.component(5).unwrap().plane_triple(), Some((1, 1, 0)));
        assert_eq!(x.intersect(&y), FiniteExtension::base(&s));

        let cubic = real_ext(&s, vec![PrimeComponent::line(3, 1)]);
        let quad = FiniteExtension::i_adjoined_base(&s);
        let mixed = cubic.compositum(&quad, &s).unwrap();
        assert_eq!(mixed.degree(), 6);
        assert!(!mixed.reality().is_real());

        // Compositum overflows the level when intersections go too deep.
        let a = real_ext(&s, vec![PrimeComponent::plane(5, 2, 0, 0)]);
        let b = real_ext(&s, vec![PrimeComponent::plane(5, 0, 2, 0)]);
        assert_eq!(
            a.compositum(&b, &s),
            Err(ComponentError::LevelExceeded { prime: 5, required: 4, available: 2 })
        );
    }

    #[test]
    fn embedding_order() {
        let s = spec();
        let base = FiniteExtension::base(&s);
        let x = real_ext(&s, vec![PrimeComponent::plane(5, 1, 0, 0)]);
        let big = real_ext(&s, vec![PrimeComponent::plane(5, 1, 1, 0)]).adjoin_i();
        assert!(base.embeds_in(&x));
        assert!(x.embeds_in(&big));
        assert!(!big.embeds_in(&x));
        // Nonreal classes never embed in real ones.
        assert!(!FiniteExtension::i_adjoined_base(&s).embeds_in(&x));
        assert!(x.embeds_in(&x));
    }

    #[test]
    fn galois_shapes() {
        let s = spec();
        let m = real_ext(&s, vec![PrimeComponent::line(3, 2)]).adjoin_i();
        assert_eq!(m.galois_shape().factors(), [9]);
        let n = real_ext(
            &s,
            vec![PrimeComponent::line(3, 1), PrimeComponent::plane(5, 1, 1, 0)],
        );
        assert_eq!(n.galois_shape().factors(), [5, 15]);
        assert!(FiniteExtension::base(&s).galois_shape().is_trivial());
    }

    #[test]
    fn sigma_classes() {
        let s = spec();
        assert_eq!(FiniteExtension::base(&s).sigma_class(&s), SigmaClass::Sigma0);
        assert_eq!(FiniteExtension::i_adjoined_base(&s).sigma_class(&s), SigmaClass::Sigma1);
        let five = real_ext(&s, vec![PrimeComponent::plane(5, 1, 0, 0)]);
        assert_eq!(five.sigma_class(&s), SigmaClass::Sigma0);
        let three = real_ext(&s, vec![PrimeComponent::line(3, 1)]);
        assert_eq!(three.sigma_class(&s), SigmaClass::Neither);
        assert_eq!(three.adjoin_i().sigma_class(&s), SigmaClass::Neither);
    }

    #[test]
    fn brauer_descriptors() {
        let s = spec();
        let odd = real_ext(&s, vec![PrimeComponent::line(3, 1)]);
        assert_eq!(brauer_descriptor(&s, &odd), BrauerDescriptor::ExponentAtMostTwo);
        assert_eq!(
            brauer_descriptor(&s, &odd.adjoin_i()),
            BrauerDescriptor::QuasicyclicSum([5].into())
        );
    }

    #[test]
    fn enumeration_small() {
        let s = FieldSpec::new([3], [5], [(3, 1), (5, 2)]).unwrap();
        let all = enumerate_extensions(&s, 5).unwrap();
        assert_eq!(all.len(), 9, "1 + 1 + 1 + 6 classes up to degree 5");
        let degrees: Vec<u64> = all.iter().map(|e| e.degree()).collect();
        assert_eq!(degrees, [1, 2, 3, 5, 5, 5, 5, 5, 5]);
        assert_eq!(all[0], FiniteExtension::base(&s));
        assert_eq!(all[1], FiniteExtension::i_adjoined_base(&s));
        // All degree-5 classes are real with the six index-5 components.
        assert!(all[3..].iter().all(|e| e.reality().is_real()));
    }

    #[test]
    fn enumeration_degenerate() {
        let s = FieldSpec::new([], [], []).unwrap();
        let all = enumerate_extensions(&s, 1000).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0], FiniteExtension::base(&s));
        assert_eq!(all[1], FiniteExtension::i_adjoined_base(&s));
    }

    #[test]
    fn enumeration_level_check() {
        let s = spec();
        assert_eq!(
            enumerate_extensions(&s, 100),
            Err(EnumerationError::LevelInsufficient { prime: 3, required: 4, available: 2 })
        );
        assert!(enumerate_extensions(&s, 26).is_ok());
    }
}
