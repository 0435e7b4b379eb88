//! Agreement between the canonical (closed-form) enumerations and the
//! brute-force oracle: extension classes against conjugacy classes of
//! subgroups of the truncated Galois model, and canonical submodules
//! against exhaustive subgroup enumeration of the matching block.

use std::collections::BTreeSet;

use quasilocal::{
    component_generators, enumerate_extensions, enumerate_submodules, FieldSpec,
    FiniteAbelianGroup, FiniteExtension, PrimeComponent, Reality, TruncatedGaloisGroup, UnitModel,
};

fn conjugated(g: &TruncatedGaloisGroup, sub: &[u64], by: u64) -> Vec<u64> {
    let mut out: Vec<u64> = sub.iter().map(|&h| g.conjugate(by, h)).collect();
    out.sort_unstable();
    out
}

/// Smallest member of the conjugation orbit of a subgroup, by closure
/// under the group generators.
fn orbit_representative(g: &TruncatedGaloisGroup, sub: Vec<u64>) -> Vec<u64> {
    let gens = g.group_generators();
    let mut orbit: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut queue = vec![sub];
    while let Some(s) = queue.pop() {
        if orbit.insert(s.clone()) {
            for &c in &gens {
                queue.push(conjugated(g, &s, c));
            }
        }
    }
    orbit.into_iter().next().expect("orbit is nonempty")
}

fn has_involution(sub: &[u64]) -> bool {
    sub.iter().any(|&h| h & 1 == 1)
}

#[test]
fn extension_classes_are_the_representable_subgroup_classes() {
    let spec = FieldSpec::new([3], [5], [(3, 1), (5, 1)]).unwrap();
    let g = TruncatedGaloisGroup::new(&spec);
    assert_eq!(g.order(), 150);

    let all = g.enumerate_subgroups(1_000_000).unwrap();
    let orbits: BTreeSet<Vec<u64>> =
        all.iter().map(|s| orbit_representative(&g, s.clone())).collect();
    assert_eq!(orbits.len(), 32, "16 subgroups of the odd part, each with and without involution");

    // Every class these levels represent, built from canonical data:
    // two realities, two line exponents at 3, seven submodules at 5.
    let mut classes = Vec::new();
    for reality in [Reality::Real, Reality::Nonreal] {
        for e in 0..=1 {
            for m in enumerate_submodules(5, 2, 1) {
                classes.push(
                    FiniteExtension::new(&spec, reality, [PrimeComponent::line(3, e), m])
                        .unwrap(),
                );
            }
        }
    }
    assert_eq!(classes.len(), 28);

    let mut hit = BTreeSet::new();
    for x in &classes {
        let sub = g.subgroup_for_extension(x);
        assert_eq!(g.order() / sub.len() as u64, x.degree(), "degree is the index of {x}");
        assert_eq!(has_involution(&sub), x.reality() == Reality::Real, "reality of {x}");
        let rep = orbit_representative(&g, sub);
        assert!(orbits.contains(&rep));
        assert!(hit.insert(rep), "distinct classes land in distinct subgroup classes: {x}");
    }
    assert_eq!(hit.len(), classes.len());

    // The four orbits without a class need a deeper truncation: their
    // odd part has index exponent past the level at some prime.
    for rep in orbits.difference(&hit) {
        let odd_part = rep.iter().filter(|&&h| h & 1 == 0).count() as u64;
        let index = (g.order() / 2) / odd_part;
        let too_deep = spec
            .lattice_primes()
            .into_iter()
            .any(|p| {
                let mut v = 0;
                let mut n = index;
                while n % p == 0 {
                    v += 1;
                    n /= p;
                }
                v > spec.levels()[&p]
            });
        assert!(too_deep, "unmatched subgroup class must be out of level: {rep:?}");
    }
    assert_eq!(orbits.len() - hit.len(), 4);
}

#[test]
fn depth_two_classes_have_distinct_subgroup_orbits() {
    // Rank-2 components with nonzero mixing coefficients only appear
    // from level 2 up, so this exercises the part the level-1 spec
    // above cannot.
    let spec = FieldSpec::new([], [5], [(5, 2)]).unwrap();
    let g = TruncatedGaloisGroup::new(&spec);
    assert_eq!(g.order(), 1250);

    // Degree 50 covers every class these levels can represent.
    let classes = enumerate_extensions(&spec, 50).unwrap();
    assert_eq!(classes.len(), 76, "two realities times 38 components");

    let mut reps = BTreeSet::new();
    for x in &classes {
        let sub = g.subgroup_for_extension(x);
        assert_eq!(g.order() / sub.len() as u64, x.degree(), "degree is the index of {x}");
        assert_eq!(has_involution(&sub), x.reality() == Reality::Real, "reality of {x}");
        assert!(
            reps.insert(orbit_representative(&g, sub)),
            "distinct classes land in distinct subgroup classes: {x}"
        );
    }
}

#[test]
fn submodules_at_depth_three_agree_with_subgroup_enumeration() {
    let comps = enumerate_submodules(3, 2, 3);
    assert_eq!(comps.len(), 58, "1 + 4 + 13 + 40 canonical triples");

    let block = FiniteAbelianGroup::new([27, 27]);
    let subs = block.enumerate_subgroups(1_000_000).unwrap();
    let shallow: BTreeSet<&[u64]> = subs
        .iter()
        .filter(|s| block.order() / s.order() <= 27)
        .map(|s| s.elements())
        .collect();
    assert_eq!(shallow.len(), comps.len());

    let mut spans = BTreeSet::new();
    for comp in &comps {
        let span = block.span(&component_generators(&block, comp));
        assert_eq!(block.order() / span.len() as u64, comp.index(), "index of {comp}");
        assert!(shallow.contains(&span[..]), "{comp} must be an enumerated subgroup");
        assert!(spans.insert(span), "canonical triples are distinct as sets: {comp}");
    }
}

#[test]
fn blockwise_and_flat_subgroup_enumeration_agree() {
    // The unit model enumerates per coprime block and recombines; a
    // flat mixed-radix group of the same shape enumerates by plain
    // breadth-first closure.  Counts must match.
    let spec = FieldSpec::new([3], [5], [(3, 1), (5, 1)]).unwrap();
    let w = UnitModel::for_base(&spec);
    let blockwise = w.enumerate_subgroups(1_000_000).unwrap();
    let flat = FiniteAbelianGroup::new([2, 3, 5, 5]);
    let direct = flat.enumerate_subgroups(1_000_000).unwrap();
    assert_eq!(blockwise.len(), direct.len());
    assert_eq!(blockwise.len(), 32);

    // Index multisets agree as well.
    let mut a: Vec<u64> = blockwise.iter().map(|s| w.index_of(s)).collect();
    let mut b: Vec<u64> = direct.iter().map(|s| flat.order() / s.order()).collect();
    a.sort_unstable();
    b.sort_unstable();
    assert_eq!(a, b);
}
