//! Lattice axioms for the three layers of the correspondence: prime
//! components, norm subgroups, and extension classes.  The pair and
//! triple sweeps are exhaustive at desk scale; presentation invariance
//! of the canonical form is property-tested.

use proptest::prelude::*;
use quasilocal::{
    canonical_component, enumerate_extensions, norm_groups_of_index, FieldSpec, FiniteExtension,
    IndexFeasibility, NormSubgroup, PrimeComponent,
};

fn component_spec() -> FieldSpec {
    // Level 4 keeps every pairwise intersection of exponent-2
    // components representable (meets can double the depth).
    FieldSpec::new([], [5], [(5, 4)]).unwrap()
}

fn plane_components() -> Vec<PrimeComponent> {
    quasilocal::enumerate_submodules(5, 2, 2)
}

#[test]
fn component_meet_and_join_satisfy_the_lattice_axioms() {
    let spec = component_spec();
    let comps = plane_components();
    assert_eq!(comps.len(), 38);

    for a in &comps {
        assert_eq!(a.sum(a), *a);
        assert_eq!(a.intersect(a, &spec).unwrap(), *a);
        for b in &comps {
            let meet = a.intersect(b, &spec).unwrap();
            let join = a.sum(b);
            assert_eq!(meet, b.intersect(a, &spec).unwrap());
            assert_eq!(join, b.sum(a));
            assert_eq!(a.sum(&meet), *a, "absorption over {a} and {b}");
            assert_eq!(a.intersect(&join, &spec).unwrap(), *a, "absorption over {a} and {b}");
            assert!(a.contains(&meet) && b.contains(&meet));
            assert!(join.contains(a) && join.contains(b));
            // Second isomorphism theorem on indices.
            assert_eq!(
                meet.index() as u128 * join.index() as u128,
                a.index() as u128 * b.index() as u128,
                "index law over {a} and {b}"
            );
            if a.contains(b) && b.contains(a) {
                assert_eq!(a, b, "antisymmetry");
            }
        }
    }
}

#[test]
fn component_operations_are_associative() {
    let spec = component_spec();
    let comps = plane_components();
    for a in &comps {
        for b in &comps {
            let ab_meet = a.intersect(b, &spec).unwrap();
            let ab_join = a.sum(b);
            for c in &comps {
                assert_eq!(
                    ab_meet.intersect(c, &spec).unwrap(),
                    a.intersect(&b.intersect(c, &spec).unwrap(), &spec).unwrap(),
                );
                assert_eq!(ab_join.sum(c), a.sum(&b.sum(c)));
            }
        }
    }
}

#[test]
fn line_components_form_a_chain() {
    let spec = FieldSpec::new([3], [], [(3, 4)]).unwrap();
    let lines: Vec<PrimeComponent> = (0..=4).map(|e| PrimeComponent::line(3, e)).collect();
    for a in &lines {
        for b in &lines {
            let meet = a.intersect(b, &spec).unwrap();
            let join = a.sum(b);
            assert!(a.contains(&meet) && b.contains(&meet));
            assert!(join.contains(a) && join.contains(b));
            assert!(meet == *a || meet == *b, "a chain has no proper meets");
            assert!(join == *a || join == *b);
        }
    }
}

fn norm_lattice_spec() -> FieldSpec {
    FieldSpec::new([3], [5], [(3, 4), (5, 4)]).unwrap()
}

fn norm_subgroups_up_to(spec: &FieldSpec, bound: u64) -> Vec<NormSubgroup> {
    let mut out = Vec::new();
    for n in 1..=bound {
        if let IndexFeasibility::Feasible(list) = norm_groups_of_index(spec, n) {
            out.extend(list);
        }
    }
    out
}

#[test]
fn norm_subgroup_lattice_axioms() {
    let spec = norm_lattice_spec();
    let subs = norm_subgroups_up_to(&spec, 30);
    assert_eq!(subs.len(), 45, "indices 1, 2, 5, 10, 25 contribute 1 + 1 + 6 + 6 + 31");

    for a in &subs {
        assert_eq!(a.meet(a, &spec).unwrap(), *a);
        assert_eq!(a.join(a), *a);
        for b in &subs {
            let meet = a.meet(b, &spec).unwrap();
            let join = a.join(b);
            assert_eq!(meet, b.meet(a, &spec).unwrap());
            assert_eq!(join, b.join(a));
            assert_eq!(a.join(&meet), *a);
            assert_eq!(a.meet(&join, &spec).unwrap(), *a);
            assert!(a.contains(&meet) && join.contains(a));
            assert_eq!(
                meet.index() as u128 * join.index() as u128,
                a.index() as u128 * b.index() as u128,
                "index law over {a} and {b}"
            );
            if a.contains(b) && b.contains(a) {
                assert_eq!(a, b);
            }
        }
    }
}

#[test]
fn norm_subgroup_meet_and_join_are_associative() {
    let spec = norm_lattice_spec();
    // Exponent-1 components keep triple meets within level 4.
    let subs: Vec<NormSubgroup> =
        norm_subgroups_up_to(&spec, 30).into_iter().filter(|u| u.index() <= 10).collect();
    for a in &subs {
        for b in &subs {
            let ab_meet = a.meet(b, &spec).unwrap();
            let ab_join = a.join(b);
            for c in &subs {
                assert_eq!(
                    ab_meet.meet(c, &spec).unwrap(),
                    a.meet(&b.meet(c, &spec).unwrap(), &spec).unwrap(),
                );
                assert_eq!(ab_join.join(c), a.join(&b.join(c)));
            }
        }
    }
}

#[test]
fn extension_classes_form_a_lattice_under_embedding()
{
    let spec = norm_lattice_spec();
    let classes = enumerate_extensions(&spec, 20).unwrap();
    let base = FiniteExtension::base(&spec);

    for x in &classes {
        assert!(base.embeds_in(x), "the base class is the bottom");
        assert!(x.embeds_in(x));
        for y in &classes {
            let compositum = x.compositum(y, &spec).unwrap();
            let intersection = x.intersect(y);
            assert_eq!(compositum, y.compositum(x, &spec).unwrap());
            assert_eq!(intersection, y.intersect(x));
            assert!(x.embeds_in(&compositum) && y.embeds_in(&compositum));
            assert!(intersection.embeds_in(x) && intersection.embeds_in(y));
            assert_eq!(x.compositum(&intersection, &spec).unwrap(), *x, "absorption");
            assert_eq!(x.intersect(&compositum), *x, "absorption");
            if x.embeds_in(y) {
                assert_eq!(y.degree() % x.degree(), 0, "degrees divide along embeddings");
                if y.embeds_in(x) {
                    assert_eq!(x, y);
                }
            }
            for z in classes.iter().filter(|z| y.embeds_in(z)) {
                if x.embeds_in(y) {
                    assert!(x.embeds_in(z), "transitivity");
                }
            }
        }
    }
}

/// Presentation of a component as explicit generators, for the
/// invariance tests below.
fn presentation(comp: &PrimeComponent) -> Vec<Vec<i64>> {
    let p = comp.prime() as i64;
    match (comp.line_exp(), comp.plane_triple()) {
        (Some(e), _) => vec![vec![p.pow(e)]],
        (_, Some((a, b, c))) => vec![vec![p.pow(a), c as i64], vec![0, p.pow(b)]],
        _ => unreachable!("a component is a line or a plane"),
    }
}

fn proptest_spec() -> FieldSpec {
    FieldSpec::new([3], [5, 7], [(3, 3), (5, 3), (7, 2)]).unwrap()
}

/// A valid component for the proptest spec together with the modulus
/// its generators live in.
fn arbitrary_component() -> impl Strategy<Value = PrimeComponent> {
    prop_oneof![
        (0u32..=3).prop_map(|e| PrimeComponent::line(3, e)),
        (0u32..=3, 0u32..=3, 0u64..125)
            .prop_filter("within level", |(a, b, _)| a + b <= 3)
            .prop_map(|(a, b, c)| PrimeComponent::plane(5, a, b, c)),
        (0u32..=2, 0u32..=2, 0u64..49)
            .prop_filter("within level", |(a, b, _)| a + b <= 2)
            .prop_map(|(a, b, c)| PrimeComponent::plane(7, a, b, c)),
    ]
}

#[derive(Clone, Debug)]
enum Op {
    AddMultiple { from: usize, to: usize, factor: i64 },
    ScaleByUnit { row: usize, unit: i64 },
    Swap,
    AppendCombination { c0: i64, c1: i64 },
}

fn arbitrary_ops() -> impl Strategy<Value = Vec<Op>> {
    let op = prop_oneof![
        (0usize..2, 0usize..2, -6i64..=6).prop_map(|(from, to, factor)| Op::AddMultiple {
            from,
            to,
            factor
        }),
        (0usize..2, 1i64..=40).prop_map(|(row, unit)| Op::ScaleByUnit { row, unit }),
        Just(Op::Swap),
        (-4i64..=4, -4i64..=4).prop_map(|(c0, c1)| Op::AppendCombination { c0, c1 }),
    ];
    proptest::collection::vec(op, 1..12)
}

/// Apply span-preserving operations over the integers (no modular
/// reduction: the canonical form spans the literal vectors).  Any op
/// that would push an entry past the overflow guard is skipped, which
/// also preserves the span.
fn apply_ops(rows: Vec<Vec<i64>>, ops: &[Op], p: i64) -> Vec<Vec<i64>> {
    const LIMIT: i64 = 1 << 50;
    let mut rows = rows;
    for op in ops {
        let mut next = rows.clone();
        match *op {
            Op::AddMultiple { from, to, factor } => {
                if from != to && from < next.len() && to < next.len() {
                    let source = next[from].clone();
                    for (t, s) in next[to].iter_mut().zip(source) {
                        *t += factor * s;
                    }
                }
            }
            Op::ScaleByUnit { row, unit } => {
                let unit = if unit % p == 0 { unit + 1 } else { unit };
                if row < next.len() {
                    for t in next[row].iter_mut() {
                        *t *= unit;
                    }
                }
            }
            Op::Swap => {
                let last = next.len() - 1;
                next.swap(0, last);
            }
            Op::AppendCombination { c0, c1 } => {
                let extra: Vec<i64> = (0..next[0].len())
                    .map(|i| {
                        let second = if next.len() > 1 { next[1][i] } else { 0 };
                        c0 * next[0][i] + c1 * second
                    })
                    .collect();
                next.push(extra);
            }
        }
        if next.iter().flatten().all(|&e| e.abs() <= LIMIT) {
            rows = next;
        }
    }
    rows
}

proptest! {
    /// The canonical form of a generator presentation does not depend
    /// on the presentation: row operations, unit scalings, and
    /// redundant generators leave it unchanged.
    #[test]
    fn canonical_component_ignores_presentation(
        comp in arbitrary_component(),
        ops in arbitrary_ops(),
    ) {
        let spec = proptest_spec();
        let p = comp.prime();

        let rows = presentation(&comp);
        prop_assert_eq!(canonical_component(&spec, p, &rows).unwrap(), comp);

        let transformed = apply_ops(rows, &ops, p as i64);
        prop_assert_eq!(canonical_component(&spec, p, &transformed).unwrap(), comp);
    }

    /// Meet and join on random component pairs respect the containment
    /// order and the index law, across mixed depths.
    #[test]
    fn canonical_component_respects_containment(
        comp in arbitrary_component(),
        other in arbitrary_component(),
    ) {
        // Levels doubled so meets of the generated components always fit.
        let spec = FieldSpec::new([3], [5, 7], [(3, 6), (5, 6), (7, 4)]).unwrap();
        if comp.prime() == other.prime() {
            let join = comp.sum(&other);
            let meet = comp.intersect(&other, &spec).unwrap();
            prop_assert!(join.contains(&comp) && join.contains(&other));
            prop_assert!(comp.contains(&meet) && other.contains(&meet));
            prop_assert_eq!(
                meet.index() as u128 * join.index() as u128,
                comp.index() as u128 * other.index() as u128
            );
        }
    }
}
