//! Brute-force ground truth for the closed-form modules.
//!
//! Everything here works on explicit element sets of finite truncated
//! groups: subgroups are enumerated, intersected and spanned element by
//! element, and quotient shapes are obtained by counting solutions of
//! p^j x ∈ S.  None of the canonical-form algebra (normal forms, meet,
//! join, containment formulas) is consulted, so agreement between the
//! two sides is meaningful evidence.
//!
//! The module provides three substrates:
//!   * [`FiniteAbelianGroup`] with [`Subgroup`]: a generic engine for
//!     groups given by cyclic factor orders, elements encoded as mixed
//!     radix codes.
//!   * [`UnitModel`] with [`ModelSubgroup`]: the truncated model of the
//!     multiplicative group modulo its maximal divisible subgroup, one
//!     coordinate block per supported prime, subgroups as per-block bit
//!     sets.  Blocks have pairwise coprime orders, so product
//!     decomposition across blocks is exact.
//!   * [`TruncatedGaloisGroup`]: the finite quotient of the absolute
//!     Galois group, a semidirect product of an odd abelian group with
//!     an order-2 element acting by inversion; ground truth for
//!     normality and conjugacy questions.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith;
use crate::component::PrimeComponent;
use crate::extension::FiniteExtension;
use crate::field::FieldSpec;
use crate::norm::{NormSubgroup, NormSubgroupOverI};
use crate::shape::GroupShape;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleError {
    /// The computation would store more element/subgroup data than the
    /// configured budget allows.
    BudgetExceeded { required: u64, budget: u64 },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::BudgetExceeded { required, budget } => {
                write!(f, "oracle budget exceeded: needs at least {required}, allowed {budget}")
            }
        }
    }
}

impl core::error::Error for OracleError {}

/// A finite abelian group presented by cyclic factor orders.  Elements
/// are mixed-radix codes in 0..order: digit i (radix orders[i]) is the
/// coordinate in the i-th cyclic factor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
    order: u64,
}

impl FiniteAbelianGroup {
    pub fn new<I: IntoIterator<Item = u64>>(orders: I) -> Self {
        let orders: Vec<u64> = orders.into_iter().collect();
        let mut order: u128 = 1;
        for &o in &orders {
            assert!(o >= 1, "cyclic factor orders must be positive");
            order *= o as u128;
        }
        let order = u64::try_from(order).expect("group order fits in u64");
        FiniteAbelianGroup { orders, order }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.order
    }

    pub fn encode(&self, coords: &[u64]) -> u64 {
        assert_eq!(coords.len(), self.orders.len());
        let mut code = 0u64;
        let mut stride = 1u64;
        for (&c, &o) in coords.iter().zip(&self.orders) {
            code += (c % o) * stride;
            stride *= o;
        }
        code
    }

    pub fn decode(&self, code: u64) -> Vec<u64> {
        let mut rem = code;
        self.orders
            .iter()
            .map(|&o| {
                let d = rem % o;
                rem /= o;
                d
            })
            .collect()
    }

    /// The generator of the i-th cyclic factor.
    pub fn coordinate_generator(&self, i: usize) -> u64 {
        self.orders[..i].iter().product()
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        let (mut rx, mut ry) = (x, y);
        let mut code = 0u64;
        let mut stride = 1u64;
        for &o in &self.orders {
            let d = (rx % o + ry % o) % o;
            rx /= o;
            ry /= o;
            code += d * stride;
            stride *= o;
        }
        code
    }

    pub fn neg(&self, x: u64) -> u64 {
        let mut rx = x;
        let mut code = 0u64;
        let mut stride = 1u64;
        for &o in &self.orders {
            let d = rx % o;
            rx /= o;
            code += if d == 0 { 0 } else { o - d } * stride;
            stride *= o;
        }
        code
    }

    pub fn scale(&self, n: u64, x: u64) -> u64 {
        let mut rx = x;
        let mut code = 0u64;
        let mut stride = 1u64;
        for &o in &self.orders {
            let d = rx % o;
            rx /= o;
            code += (n as u128 * d as u128 % o as u128) as u64 * stride;
            stride *= o;
        }
        code
    }

    /// Order of a single element.
    pub fn element_order(&self, x: u64) -> u64 {
        let mut rx = x;
        let mut ord = 1u64;
        for &o in &self.orders {
            let d = rx % o;
            rx /= o;
            let k = o / arith::gcd(o, d.max(1));
            let co = if d == 0 { 1 } else { k };
            ord = ord / arith::gcd(ord, co) * co;
        }
        ord
    }

    /// All elements generated by the given codes, sorted.
    pub fn span(&self, gens: &[u64]) -> Vec<u64> {
        let mut seen = vec![false; self.order as usize];
        seen[0] = true;
        let mut out = vec![0u64];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for &g in gens {
                let y = self.add(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn subgroup(&self, gens: &[u64]) -> Subgroup {
        let elements = self.span(gens);
        let generators = self.canonical_generators(&elements);
        Subgroup { elements, generators }
    }

    /// The subgroup of n-th multiples.
    pub fn power_subgroup(&self, n: u64) -> Subgroup {
        let gens: Vec<u64> =
            (0..self.orders.len()).map(|i| self.scale(n, self.coordinate_generator(i))).collect();
        self.subgroup(&gens)
    }

    /// Greedy minimal generating codes: scan elements in code order and
    /// keep those outside the span of the previous picks.
    fn canonical_generators(&self, elements: &[u64]) -> Vec<u64> {
        let mut gens: Vec<u64> = Vec::new();
        let mut have = 1usize;
        if elements.len() == 1 {
            return gens;
        }
        for &x in elements {
            if x == 0 || self.span(&gens).binary_search(&x).is_ok() {
                continue;
            }
            gens.push(x);
            have = self.span(&gens).len();
            if have == elements.len() {
                break;
            }
        }
        debug_assert_eq!(have, elements.len());
        gens
    }

    /// Every subgroup exactly once, sorted by (order, elements).  Works
    /// prime by prime: subgroups of the p-primary parts are enumerated
    /// by breadth-first closure and recombined across coprime parts.
    pub fn enumerate_subgroups(&self, budget: u64) -> Result<Vec<Subgroup>, OracleError> {
        if self.order > budget {
            return Err(OracleError::BudgetExceeded { required: self.order, budget });
        }
        let mut stored: u64 = 0;
        let mut per_prime: Vec<Vec<Vec<u64>>> = Vec::new();
        for (p, e) in arith::factorize(self.order) {
            let m = self.order / arith::pow(p, e);
            let part = self.power_subgroup(m).elements;
            let mut found: BTreeSet<Vec<u64>> = BTreeSet::new();
            found.insert(vec![0]);
            let mut queue: Vec<Vec<u64>> = vec![vec![0]];
            let mut head = 0;
            while head < queue.len() {
                let s = queue[head].clone();
                head += 1;
                for &x in &part {
                    // Every strictly larger subgroup is reached through
                    // some x with p·x inside the current one.
                    if s.binary_search(&x).is_ok()
                        || s.binary_search(&self.scale(p, x)).is_err()
                    {
                        continue;
                    }
                    let mut t: BTreeSet<u64> = s.iter().copied().collect();
                    let mut shift = x;
                    while !t.contains(&shift) {
                        t.extend(s.iter().map(|&a| self.add(a, shift)));
                        shift = self.add(shift, x);
                    }
                    let t: Vec<u64> = t.into_iter().collect();
                    if found.insert(t.clone()) {
                        stored += t.len() as u64;
                        if stored > budget {
                            return Err(OracleError::BudgetExceeded { required: stored, budget });
                        }
                        queue.push(t);
                    }
                }
            }
            per_prime.push(found.into_iter().collect());
        }

        let mut combined: Vec<Vec<u64>> = vec![vec![0]];
        for part_subs in &per_prime {
            let mut next = Vec::with_capacity(combined.len() * part_subs.len());
            for base in &combined {
                for s in part_subs {
                    let mut t = Vec::with_capacity(base.len() * s.len());
                    for &a in base {
                        for &b in s {
                            t.push(self.add(a, b));
                        }
                    }
                    t.sort_unstable();
                    stored += t.len() as u64;
                    if stored > budget {
                        return Err(OracleError::BudgetExceeded { required: stored, budget });
                    }
                    next.push(t);
                }
            }
            combined = next;
        }
        combined.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(combined
            .into_iter()
            .map(|elements| {
                let generators = self.canonical_generators(&elements);
                Subgroup { elements, generators }
            })
            .collect())
    }

    /// Cyclic prime-power orders of the quotient by the subgroup with
    /// the given sorted elements, found by counting solutions of
    /// p^j·x ∈ S within each primary part.
    pub fn quotient_primary_orders(&self, sub: &[u64]) -> Vec<u64> {
        let m = self.order / sub.len() as u64;
        let mut out = Vec::new();
        for (p, _) in arith::factorize(m) {
            let pe = arith::pow(p, arith::valuation(self.order, p));
            let part = self.power_subgroup(self.order / pe).elements;
            let sub_part: Vec<u64> =
                sub.iter().copied().filter(|x| part.binary_search(x).is_ok()).collect();
            // r[j] = number of cyclic factors of the quotient part with
            // order at least p^(j+1), from the counts of annihilated
            // cosets.
            let mut r: Vec<u32> = Vec::new();
            let mut prev = 0u32;
            for j in 1.. {
                let pj = arith::pow(p, j);
                let count =
                    part.iter().filter(|&&x| sub_part.binary_search(&self.scale(pj, x)).is_ok()).count();
                let s_j = arith::valuation(count as u64 / sub_part.len() as u64, p);
                if s_j == prev {
                    break;
                }
                r.push(s_j - prev);
                prev = s_j;
            }
            for j in 1..=r.len() {
                let exact = r[j - 1] - r.get(j).copied().unwrap_or(0);
                for _ in 0..exact {
                    out.push(arith::pow(p, j as u32));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn quotient_shape(&self, sub: &Subgroup) -> GroupShape {
        GroupShape::from_cyclic_orders(self.quotient_primary_orders(&sub.elements))
    }

    pub fn intersect_subgroups(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let elements: Vec<u64> =
            a.elements.iter().copied().filter(|x| b.elements.binary_search(x).is_ok()).collect();
        let generators = self.canonical_generators(&elements);
        Subgroup { elements, generators }
    }

    pub fn join_subgroups(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let gens: Vec<u64> =
            a.generators.iter().chain(&b.generators).copied().collect();
        self.subgroup(&gens)
    }
}

/// A subgroup as a sorted element list plus greedy canonical generators.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Subgroup {
    elements: Vec<u64>,
    generators: Vec<u64>,
}

impl Subgroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn contains(&self, code: u64) -> bool {
        self.elements.binary_search(&code).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|x| other.elements.binary_search(x).is_ok())
    }
}

/// All finite-index submodules of Z_p^rank with index at most
/// p^max_index_exponent, generated exhaustively from the triple space
/// (rank 2) or the exponent chain (rank 1).
pub fn enumerate_submodules(p: u64, rank: u8, max_index_exponent: u32) -> Vec<PrimeComponent> {
    let mut out = Vec::new();
    match rank {
        1 => {
            for e in 0..=max_index_exponent {
                out.push(PrimeComponent::line(p, e));
            }
        }
        2 => {
            for e in 0..=max_index_exponent {
                for a in 0..=e {
                    let b = e - a;
                    for c in 0..arith::pow(p, b) {
                        out.push(PrimeComponent::plane(p, a, b, c));
                    }
                }
            }
        }
        _ => panic!("rank must be 1 or 2"),
    }
    out
}

/// Generator codes of a canonical submodule inside the matching cyclic
/// block group: `[p^k]` for rank 1, `[p^k, p^k]` for rank 2.  Exponents
/// at or above the truncation level clamp to zero.
pub fn component_generators(group: &FiniteAbelianGroup, comp: &PrimeComponent) -> Vec<u64> {
    let p = comp.prime();
    let pk = group.orders()[0];
    let reduce = |e: u32| {
        let mut v = 1u64;
        for _ in 0..e {
            v = v.saturating_mul(p);
            if v >= pk {
                return 0;
            }
        }
        v
    };
    match comp.plane_triple() {
        Some((a, b, c)) => vec![group.encode(&[reduce(a), c]), group.encode(&[0, reduce(b)])],
        None => {
            let e = comp.line_exp().expect("rank-1 component");
            vec![reduce(e)]
        }
    }
}

/// A fixed-size bit set over 0..len, the working representation of
/// block subgroups.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitSet {
    words: Vec<u64>,
    len: u64,
    count: u64,
}

impl BitSet {
    pub fn new(len: u64) -> Self {
        BitSet { words: vec![0; (len as usize).div_ceil(64)], len, count: 0 }
    }

    pub fn insert(&mut self, i: u64) -> bool {
        let (w, b) = ((i / 64) as usize, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        if fresh {
            self.words[w] |= 1 << b;
            self.count += 1;
        }
        fresh
    }

    pub fn contains(&self, i: u64) -> bool {
        self.words[(i / 64) as usize] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        debug_assert_eq!(self.len, other.len);
        let words: Vec<u64> =
            self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        let count = words.iter().map(|w| w.count_ones() as u64).sum();
        BitSet { words, len: self.len, count }
    }

    pub fn is_subset_of(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).filter(|&i| self.contains(i))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum BlockKind {
    /// The order-2 torsion coordinate of the base-level model.
    Two,
    /// Rank-1 coordinate at a pi1 prime.
    Pi1(u64),
    /// Rank-2 coordinate pair at a pi2 prime.
    Pi2(u64),
}

struct Block {
    kind: BlockKind,
    group: FiniteAbelianGroup,
}

/// Truncated model of the multiplicative group modulo its maximal
/// divisible subgroup: C_2 x (one C_{p^k} per pi1 prime) x (one
/// (C_{p^k})^2 per pi2 prime).  The over-i variant drops the C_2.
pub struct UnitModel {
    blocks: Vec<Block>,
}

/// A subgroup of a [`UnitModel`], one bit set per block, plus the
/// generator codes it was built from (empty for derived sets such as
/// intersections).  Equality compares the element sets only.
#[derive(Clone, Debug)]
pub struct ModelSubgroup {
    blocks: Vec<BitSet>,
    generators: Vec<Vec<u64>>,
}

impl PartialEq for ModelSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks
    }
}

impl Eq for ModelSubgroup {}

impl UnitModel {
    /// Base-level model, with the 2-torsion coordinate.
    pub fn for_base(spec: &FieldSpec) -> Self {
        let mut blocks = vec![Block { kind: BlockKind::Two, group: FiniteAbelianGroup::new([2]) }];
        blocks.extend(Self::odd_blocks(spec));
        UnitModel { blocks }
    }

    /// Model over the i-adjoined base: no 2-torsion left.
    pub fn over_i(spec: &FieldSpec) -> Self {
        UnitModel { blocks: Self::odd_blocks(spec) }
    }

    fn odd_blocks(spec: &FieldSpec) -> Vec<Block> {
        let mut blocks = Vec::new();
        for p in spec.lattice_primes() {
            let pk = arith::pow(p, spec.level(p).expect("lattice prime"));
            let (kind, group) = if spec.pi1().contains(&p) {
                (BlockKind::Pi1(p), FiniteAbelianGroup::new([pk]))
            } else {
                (BlockKind::Pi2(p), FiniteAbelianGroup::new([pk, pk]))
            };
            blocks.push(Block { kind, group });
        }
        blocks
    }

    pub fn order(&self) -> u128 {
        self.blocks.iter().map(|b| b.group.order() as u128).product()
    }

    fn from_block_gens(&self, gens: Vec<Vec<u64>>) -> ModelSubgroup {
        let blocks = self
            .blocks
            .iter()
            .zip(&gens)
            .map(|(block, g)| {
                let mut set = BitSet::new(block.group.order());
                for e in block.group.span(g) {
                    set.insert(e);
                }
                set
            })
            .collect();
        ModelSubgroup { blocks, generators: gens }
    }

    pub fn full_subgroup(&self) -> ModelSubgroup {
        let gens = self
            .blocks
            .iter()
            .map(|b| (0..b.group.orders().len()).map(|i| b.group.coordinate_generator(i)).collect())
            .collect();
        self.from_block_gens(gens)
    }

    /// The subgroup of n-th multiples.
    pub fn power_subgroup(&self, n: u64) -> ModelSubgroup {
        let gens = self
            .blocks
            .iter()
            .map(|b| {
                (0..b.group.orders().len())
                    .map(|i| b.group.scale(n, b.group.coordinate_generator(i)))
                    .collect()
            })
            .collect();
        self.from_block_gens(gens)
    }

    /// The element set of a norm subgroup in the base-level model.
    pub fn embed(&self, u: &NormSubgroup) -> ModelSubgroup {
        let gens = self
            .blocks
            .iter()
            .map(|b| match b.kind {
                BlockKind::Two => {
                    if u.two_part() == 2 {
                        vec![]
                    } else {
                        vec![1]
                    }
                }
                BlockKind::Pi1(_) => vec![1],
                BlockKind::Pi2(p) => {
                    component_generators(&b.group, u.component(p).expect("pi2 component"))
                }
            })
            .collect();
        self.from_block_gens(gens)
    }

    /// The element set of an over-i norm subgroup in the over-i model.
    pub fn embed_over_i(&self, u: &NormSubgroupOverI) -> ModelSubgroup {
        let gens = self
            .blocks
            .iter()
            .map(|b| match b.kind {
                BlockKind::Two => panic!("over-i model has no 2-torsion block"),
                BlockKind::Pi1(_) => vec![1],
                BlockKind::Pi2(p) => {
                    component_generators(&b.group, u.component(p).expect("pi2 component"))
                }
            })
            .collect();
        self.from_block_gens(gens)
    }

    pub fn index_of(&self, s: &ModelSubgroup) -> u64 {
        let mut idx: u128 = 1;
        for (block, set) in self.blocks.iter().zip(&s.blocks) {
            idx *= (block.group.order() / set.count()) as u128;
        }
        u64::try_from(idx).expect("index fits in u64")
    }

    pub fn contains(&self, a: &ModelSubgroup, b: &ModelSubgroup) -> bool {
        b.blocks.iter().zip(&a.blocks).all(|(x, y)| x.is_subset_of(y))
    }

    pub fn intersect(&self, a: &ModelSubgroup, b: &ModelSubgroup) -> ModelSubgroup {
        let blocks: Vec<BitSet> =
            a.blocks.iter().zip(&b.blocks).map(|(x, y)| x.intersection(y)).collect();
        let generators = blocks.iter().map(|_| Vec::new()).collect();
        ModelSubgroup { blocks, generators }
    }

    /// Span of the union; both operands must carry their generators.
    pub fn join(&self, a: &ModelSubgroup, b: &ModelSubgroup) -> ModelSubgroup {
        let gens = a
            .generators
            .iter()
            .zip(&b.generators)
            .map(|(x, y)| x.iter().chain(y).copied().collect())
            .collect();
        self.from_block_gens(gens)
    }

    /// Invariant factors of the model modulo the subgroup, counted
    /// block by block.
    pub fn quotient_shape(&self, s: &ModelSubgroup) -> GroupShape {
        let mut orders = Vec::new();
        for (block, set) in self.blocks.iter().zip(&s.blocks) {
            let elements: Vec<u64> = set.iter_ones().collect();
            orders.extend(block.group.quotient_primary_orders(&elements));
        }
        GroupShape::from_cyclic_orders(orders)
    }

    /// Every subgroup of the model, as the cartesian product of the
    /// per-block subgroup lattices (blocks have coprime orders).
    pub fn enumerate_subgroups(&self, budget: u64) -> Result<Vec<ModelSubgroup>, OracleError> {
        let mut per_block: Vec<Vec<Subgroup>> = Vec::new();
        for block in &self.blocks {
            per_block.push(block.group.enumerate_subgroups(budget)?);
        }
        let mut out: Vec<ModelSubgroup> = vec![ModelSubgroup { blocks: vec![], generators: vec![] }];
        for (block, subs) in self.blocks.iter().zip(&per_block) {
            let mut next = Vec::with_capacity(out.len() * subs.len());
            for partial in &out {
                for s in subs {
                    let mut set = BitSet::new(block.group.order());
                    for &e in s.elements() {
                        set.insert(e);
                    }
                    let mut blocks = partial.blocks.clone();
                    let mut gens = partial.generators.clone();
                    blocks.push(set);
                    gens.push(s.generators().to_vec());
                    next.push(ModelSubgroup { blocks, generators: gens });
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// True when every pi1 block of the subgroup is full.
    pub fn pi1_full(&self, s: &ModelSubgroup) -> bool {
        self.blocks
            .iter()
            .zip(&s.blocks)
            .all(|(b, set)| !matches!(b.kind, BlockKind::Pi1(_)) || set.count() == b.group.order())
    }

    /// Human-readable block layout, for verification reports.
    pub fn describe(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                s.push_str(" x ");
            }
            match b.kind {
                BlockKind::Two => s.push_str("C2"),
                BlockKind::Pi1(_) => {
                    let _ = write!(s, "C{}", b.group.orders()[0]);
                }
                BlockKind::Pi2(_) => {
                    let _ = write!(s, "C{0}xC{0}", b.group.orders()[0]);
                }
            }
        }
        s
    }
}

/// Finite quotient of the absolute Galois group: the odd abelian part
/// at the spec's truncation levels, extended by an order-2 element
/// acting by inversion.  Element code = abelian code << 1 | inversion
/// bit.
pub struct TruncatedGaloisGroup {
    abelian: FiniteAbelianGroup,
    coord_of: Vec<(u64, usize)>,
}

impl TruncatedGaloisGroup {
    pub fn new(spec: &FieldSpec) -> Self {
        let mut orders = Vec::new();
        let mut coord_of = Vec::new();
        for p in spec.lattice_primes() {
            let pk = arith::pow(p, spec.level(p).expect("lattice prime"));
            coord_of.push((p, orders.len()));
            orders.push(pk);
            if spec.pi2().contains(&p) {
                orders.push(pk);
            }
        }
        TruncatedGaloisGroup { abelian: FiniteAbelianGroup::new(orders), coord_of }
    }

    pub fn order(&self) -> u64 {
        2 * self.abelian.order()
    }

    pub fn identity(&self) -> u64 {
        0
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.order()
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        let (a, s) = (x >> 1, x & 1);
        let (b, t) = (y >> 1, y & 1);
        let b = if s == 1 { self.abelian.neg(b) } else { b };
        (self.abelian.add(a, b) << 1) | (s ^ t)
    }

    pub fn inv(&self, x: u64) -> u64 {
        let (a, s) = (x >> 1, x & 1);
        if s == 1 {
            x
        } else {
            (self.abelian.neg(a) << 1) | 0
        }
    }

    pub fn conjugate(&self, g: u64, h: u64) -> u64 {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// Generators of the whole group: the abelian coordinate
    /// generators and the inverting element.
    pub fn group_generators(&self) -> Vec<u64> {
        let mut gens: Vec<u64> =
            (0..self.abelian.orders().len()).map(|i| self.abelian.coordinate_generator(i) << 1).collect();
        gens.push(1);
        gens
    }

    /// Generator codes of the open subgroup attached to an extension
    /// class: the per-prime submodule generators, plus the canonical
    /// inverting element for real classes.
    pub fn extension_generators(&self, ext: &FiniteExtension) -> Vec<u64> {
        let mut gens = Vec::new();
        for &(p, coord) in &self.coord_of {
            let comp = ext.component(p).expect("extension covers spec primes");
            let pk = self.abelian.orders()[coord];
            let reduce = |e: u32| if arith::pow(p, e) >= pk { 0 } else { arith::pow(p, e) };
            match comp.plane_triple() {
                Some((a, b, c)) => {
                    let ex = self.abelian.coordinate_generator(coord);
                    let ey = self.abelian.coordinate_generator(coord + 1);
                    gens.push(
                        self.abelian.add(self.abelian.scale(reduce(a), ex), self.abelian.scale(c, ey))
                            << 1,
                    );
                    gens.push(self.abelian.scale(reduce(b), ey) << 1);
                }
                None => {
                    let e = comp.line_exp().expect("rank-1 component");
                    gens.push(self.abelian.scale(reduce(e), self.abelian.coordinate_generator(coord)) << 1);
                }
            }
        }
        if ext.reality().is_real() {
            gens.push(1);
        }
        gens
    }

    /// Closure of the generators under multiplication, sorted.
    pub fn span(&self, gens: &[u64]) -> Vec<u64> {
        let mut seen = vec![false; self.order() as usize];
        seen[0] = true;
        let mut out = vec![0u64];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn subgroup_for_extension(&self, ext: &FiniteExtension) -> Vec<u64> {
        self.span(&self.extension_generators(ext))
    }

    /// Normality by conjugation: it is enough to conjugate subgroup
    /// generators by group generators, since conjugation by a fixed
    /// element is an automorphism.
    pub fn is_normal(&self, elements: &[u64], gens: &[u64]) -> bool {
        self.group_generators()
            .iter()
            .all(|&g| gens.iter().all(|&h| elements.binary_search(&self.conjugate(g, h)).is_ok()))
    }

    /// Every subgroup, by breadth-first closure; intended for small
    /// groups only (conjugacy ground-truth tests).
    pub fn enumerate_subgroups(&self, budget: u64) -> Result<Vec<Vec<u64>>, OracleError> {
        if self.order() > budget {
            return Err(OracleError::BudgetExceeded { required: self.order(), budget });
        }
        let mut found: BTreeSet<Vec<u64>> = BTreeSet::new();
        found.insert(vec![0]);
        let mut queue: Vec<(Vec<u64>, Vec<u64>)> = vec![(vec![0], vec![])];
        let mut stored = 0u64;
        let mut head = 0;
        while head < queue.len() {
            let (s, gens) = queue[head].clone();
            head += 1;
            for x in self.elements() {
                if s.binary_search(&x).is_ok() {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(x);
                let t = self.span(&g2);
                if found.insert(t.clone()) {
                    stored += t.len() as u64;
                    if stored > budget {
                        return Err(OracleError::BudgetExceeded { required: stored, budget });
                    }
                    queue.push((t, g2));
                }
            }
        }
        let mut out: Vec<Vec<u64>> = found.into_iter().collect();
        out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::Reality;
    use alloc::collections::BTreeMap;

    #[test]
    fn group_arithmetic() {
        let g = FiniteAbelianGroup::new([4, 9]);
        assert_eq!(g.order(), 36);
        let x = g.encode(&[3, 7]);
        assert_eq!(g.decode(x), [3, 7]);
        assert_eq!(g.decode(g.add(x, g.encode(&[2, 5]))), [1, 3]);
        assert_eq!(g.decode(g.neg(x)), [1, 2]);
        assert_eq!(g.decode(g.scale(10, x)), [2, 7]);
        assert_eq!(g.element_order(x), 36);
        assert_eq!(g.element_order(g.encode(&[2, 3])), 6);
        assert_eq!(g.element_order(0), 1);
    }

    #[test]
    fn span_and_power() {
        let g = FiniteAbelianGroup::new([25, 25]);
        let diag = g.subgroup(&[g.encode(&[1, 1])]);
        assert_eq!(diag.order(), 25);
        assert_eq!(g.power_subgroup(5).order(), 25);
        assert_eq!(g.power_subgroup(1).order(), 625);
        assert_eq!(
            g.power_subgroup(30).elements(),
            g.power_subgroup(5).elements(),
            "scaling reduces mod factor orders"
        );
        assert_eq!(g.power_subgroup(25).order(), 1);
        assert_eq!(g.power_subgroup(75).order(), 1);
    }

    #[test]
    fn subgroup_counts() {
        let budget = 1_000_000;
        assert_eq!(FiniteAbelianGroup::new([2]).enumerate_subgroups(budget).unwrap().len(), 2);
        assert_eq!(FiniteAbelianGroup::new([5, 5]).enumerate_subgroups(budget).unwrap().len(), 8);
        assert_eq!(FiniteAbelianGroup::new([2, 9]).enumerate_subgroups(budget).unwrap().len(), 6);
        assert_eq!(
            FiniteAbelianGroup::new([450, 25]).enumerate_subgroups(budget).unwrap().len(),
            270
        );
        assert_eq!(
            FiniteAbelianGroup::new([5, 5]).enumerate_subgroups(20),
            Err(OracleError::BudgetExceeded { required: 25, budget: 20 })
        );
    }

    #[test]
    fn quotient_shapes_by_counting() {
        let g = FiniteAbelianGroup::new([25, 25]);
        let diag = g.subgroup(&[g.encode(&[1, 1])]);
        assert_eq!(g.quotient_shape(&diag).factors(), [25]);
        let fives = g.power_subgroup(5);
        assert_eq!(g.quotient_shape(&fives).factors(), [5, 5]);
        let mixed = FiniteAbelianGroup::new([2, 9, 25]);
        let h = mixed.subgroup(&[mixed.encode(&[1, 3, 5])]);
        assert_eq!(h.order(), 30);
        assert_eq!(mixed.quotient_shape(&h).factors(), [15]);
        assert_eq!(mixed.quotient_shape(&mixed.power_subgroup(1)).factors(), [] as [u64; 0]);
    }

    #[test]
    fn lattice_operations_on_element_sets() {
        let g = FiniteAbelianGroup::new([25, 25]);
        let a = g.subgroup(&[g.encode(&[5, 0]), g.encode(&[0, 1])]);
        let b = g.subgroup(&[g.encode(&[1, 0]), g.encode(&[0, 5])]);
        let meet = g.intersect_subgroups(&a, &b);
        assert_eq!(meet.order(), 625 / 25);
        let join = g.join_subgroups(&a, &b);
        assert_eq!(join.order(), 625);
        assert!(meet.is_subset_of(&a) && meet.is_subset_of(&b));
        // Second isomorphism law on explicit sets.
        assert_eq!(meet.order() * join.order(), a.order() * b.order());
    }

    #[test]
    fn submodule_counts_and_three_way_agreement() {
        assert_eq!(enumerate_submodules(5, 2, 1).len(), 7);
        assert_eq!(enumerate_submodules(3, 1, 2).len(), 3);
        let triples = enumerate_submodules(5, 2, 2);
        assert_eq!(triples.len(), 38);

        // The image sets of the 38 triples in (Z/25)^2 match the
        // subgroups of order >= 25 exactly, one for one.
        let g = FiniteAbelianGroup::new([25, 25]);
        let mut images = BTreeSet::new();
        for comp in &triples {
            let (a, b, c) = comp.plane_triple().unwrap();
            let pa = if a >= 2 { 0 } else { arith::pow(5, a) };
            let pb = if b >= 2 { 0 } else { arith::pow(5, b) };
            let span = g.span(&[g.encode(&[pa, c]), g.encode(&[0, pb])]);
            assert_eq!(span.len() as u64, 625 / comp.index(), "triple {comp} spans its index");
            assert!(images.insert(span), "distinct triples span distinct sets");
        }
        let filtered: BTreeSet<Vec<u64>> = g
            .enumerate_subgroups(1_000_000)
            .unwrap()
            .into_iter()
            .filter(|s| s.order() >= 25)
            .map(|s| s.elements().to_vec())
            .collect();
        assert_eq!(images, filtered);
        let by_index = |e: u32| triples.iter().filter(|c| c.index_exponent() == e).count();
        assert_eq!(by_index(1), 6);
        assert_eq!(by_index(2), 31);
    }

    fn spec() -> FieldSpec {
        FieldSpec::new([3], [5], [(3, 1), (5, 2)]).unwrap()
    }

    #[test]
    fn unit_model_power_quotients() {
        let s = spec();
        let w = UnitModel::for_base(&s);
        assert_eq!(w.order(), 2 * 3 * 625);
        assert_eq!(w.describe(), "C2 x C3 x C25xC25");
        assert_eq!(w.quotient_shape(&w.power_subgroup(5)).factors(), [5, 5]);
        assert_eq!(w.quotient_shape(&w.power_subgroup(3)).factors(), [3]);
        assert_eq!(w.quotient_shape(&w.power_subgroup(2)).factors(), [2]);
        assert_eq!(w.quotient_shape(&w.power_subgroup(30)).factors(), [5, 30]);
        assert_eq!(w.power_subgroup(60), w.power_subgroup(30), "fourth powers collapse");
        assert_eq!(w.quotient_shape(&w.full_subgroup()).factors(), [] as [u64; 0]);

        let w1 = UnitModel::over_i(&s);
        assert_eq!(w1.order(), 3 * 625);
        // The pi1 block is still present over i; only norm groups of
        // extensions erase it, power subgroups do not.
        assert_eq!(w1.quotient_shape(&w1.power_subgroup(15)).factors(), [5, 15]);
        assert_eq!(w1.quotient_shape(&w1.power_subgroup(5)).factors(), [5, 5]);
    }

    #[test]
    fn unit_model_norm_subgroups() {
        let s = spec();
        let w = UnitModel::for_base(&s);
        let u = NormSubgroup::new(&s, 2, [PrimeComponent::plane(5, 1, 0, 0)]).unwrap();
        let v = NormSubgroup::new(&s, 1, [PrimeComponent::plane(5, 0, 1, 0)]).unwrap();
        let su = w.embed(&u);
        let sv = w.embed(&v);
        assert_eq!(w.index_of(&su), 10);
        assert_eq!(w.index_of(&sv), 5);
        assert_eq!(w.quotient_shape(&su).factors(), [10]);
        assert!(w.contains(&w.embed(&NormSubgroup::full(&s)), &su));
        assert!(!w.contains(&su, &sv));

        let meet = w.intersect(&su, &sv);
        assert_eq!(w.index_of(&meet), 50);
        assert_eq!(meet, w.embed(&u.meet(&v, &s).unwrap()));
        // The two planes together span everything, and the smaller
        // 2-part wins, so the join is the whole group.
        let join = w.join(&su, &sv);
        assert_eq!(w.index_of(&join), 1);
        assert_eq!(join, w.embed(&u.join(&v)));
        assert!(w.pi1_full(&su));
    }

    #[test]
    fn unit_model_subgroup_enumeration() {
        let s = spec();
        let w = UnitModel::for_base(&s);
        let subs = w.enumerate_subgroups(1_000_000).unwrap();
        // 2 * 2 * 45 subgroups blockwise.
        assert_eq!(subs.len(), 180);
        let full_on_pi1 = subs.iter().filter(|s| w.pi1_full(s)).count();
        assert_eq!(full_on_pi1, 90);
        let of_index = |n: u64| subs.iter().filter(|s| w.index_of(s) == n).count();
        assert_eq!(of_index(1), 1);
        assert_eq!(of_index(10), 6);
        assert_eq!(of_index(25), 31);
        assert_eq!(of_index(3), 1);
    }

    #[test]
    fn galois_model_normality() {
        let s = spec();
        let g = TruncatedGaloisGroup::new(&s);
        assert_eq!(g.order(), 2 * 3 * 625);

        let base = FiniteExtension::base(&s);
        let whole = g.subgroup_for_extension(&base);
        assert_eq!(whole.len() as u64, g.order());
        assert!(g.is_normal(&whole, &g.extension_generators(&base)));

        let cubic =
            FiniteExtension::new(&s, Reality::Real, [PrimeComponent::line(3, 1)]).unwrap();
        let h = g.subgroup_for_extension(&cubic);
        assert_eq!(h.len() as u64, g.order() / 3);
        assert!(!g.is_normal(&h, &g.extension_generators(&cubic)));

        let sextic = cubic.adjoin_i();
        let h = g.subgroup_for_extension(&sextic);
        assert_eq!(h.len() as u64, g.order() / 6);
        assert!(g.is_normal(&h, &g.extension_generators(&sextic)));

        let quintic = FiniteExtension::new(
            &s,
            Reality::Real,
            [PrimeComponent::plane(5, 1, 0, 0)],
        )
        .unwrap();
        assert!(!g.is_normal(
            &g.subgroup_for_extension(&quintic),
            &g.extension_generators(&quintic)
        ));
    }

    #[test]
    fn conjugacy_classes_match_canonical_data() {
        // Order-18 truncation: abelian part C3 x C3 from one pi2 prime.
        let s = FieldSpec::new([], [3], [(3, 1)]).unwrap();
        let g = TruncatedGaloisGroup::new(&s);
        assert_eq!(g.order(), 18);
        let subs = g.enumerate_subgroups(10_000).unwrap();

        // Involutions form a single conjugacy class.
        let involutions: Vec<u64> =
            g.elements().filter(|&x| x != 0 && g.mul(x, x) == 0).collect();
        assert_eq!(involutions.len(), 9);
        let orbit: BTreeSet<u64> =
            g.elements().map(|u| g.conjugate(u, involutions[0])).collect();
        assert_eq!(orbit.into_iter().collect::<Vec<_>>(), involutions);

        // Subgroups up to conjugacy are classified by (abelian part,
        // has-involution): 6 subgroups of C3 x C3 times 2 flags.
        let mut classes: BTreeSet<Vec<u64>> = BTreeSet::new();
        for sub in &subs {
            let orbit: BTreeSet<Vec<u64>> = g
                .elements()
                .map(|u| {
                    let mut c: Vec<u64> =
                        sub.iter().map(|&h| g.conjugate(u, h)).collect();
                    c.sort_unstable();
                    c
                })
                .collect();
            classes.insert(orbit.into_iter().next().unwrap());
        }
        assert_eq!(classes.len(), 12);
        let mut keys = BTreeSet::new();
        for sub in &subs {
            let abelian: Vec<u64> = sub.iter().copied().filter(|x| x & 1 == 0).collect();
            let has_inv = sub.iter().any(|x| x & 1 == 1);
            keys.insert((abelian, has_inv));
        }
        assert_eq!(keys.len(), 12, "conjugacy classes biject with (module, reality) pairs");

        // Normality matches the reality rule on every subgroup.
        for sub in &subs {
            let gens: Vec<u64> = sub.clone();
            let has_inv = sub.iter().any(|x| x & 1 == 1);
            let abelian_count = sub.iter().filter(|&&x| x & 1 == 0).count();
            let expected = !has_inv || abelian_count == 9 || sub.len() == 1;
            assert_eq!(g.is_normal(sub, &gens), expected, "subgroup {sub:?}");
        }
    }

    #[test]
    fn degenerate_spec_models() {
        let s = FieldSpec::new([], [], []).unwrap();
        let w = UnitModel::for_base(&s);
        assert_eq!(w.order(), 2);
        assert_eq!(w.quotient_shape(&w.power_subgroup(6)).factors(), [2]);
        assert_eq!(UnitModel::over_i(&s).order(), 1);
        let g = TruncatedGaloisGroup::new(&s);
        assert_eq!(g.order(), 2);
        assert_eq!(g.enumerate_subgroups(100).unwrap().len(), 2);
        let levels: BTreeMap<u64, u32> = BTreeMap::new();
        assert_eq!(s.levels().clone(), levels);
    }
}
