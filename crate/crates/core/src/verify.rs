//! Exhaustive verification sweeps for the closed-form laws.
//!
//! Each verifier fixes a finite universe from the requested bounds
//! (degrees, indices, power moduli), raises truncation levels so the
//! universe is represented faithfully, and then checks every instance,
//! comparing the closed-form modules against the element-set oracle
//! wherever the two can disagree.  A sweep never samples: within its
//! bounds it is complete, and it refuses to run (rather than silently
//! shrinking) when the oracle structures would outgrow the budget.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::arith;
use crate::extension::{enumerate_extensions, FiniteExtension, Reality, SigmaClass};
use crate::field::{FieldSpec, SpecError};
use crate::norm::{
    class_field_core, class_field_of, extend_over_i, norm_group, norm_group_over_i,
    norm_groups_of_index, restrict_to_base, IndexFeasibility, NormSubgroup, NormSubgroupOverI,
};
use crate::oracle::{
    component_generators, BitSet, FiniteAbelianGroup, ModelSubgroup, OracleError,
    TruncatedGaloisGroup, UnitModel,
};
use crate::power::{admissible_pair, finite_index_shape, power_collapse, unit_quotient_shape};
use crate::shape::GroupShape;

/// Identifiers for the verifiable statements.  The wire names accepted
/// and printed on the command line (`THM_1_1`, `LEMMA_2_2`, ...) are a
/// stable external contract; the Rust names describe what each sweep
/// actually checks.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TheoremId {
    /// Norm subgroups classify class fields: existence, uniqueness,
    /// the embedding criterion, and the index characterisation.
    ClassFields,
    /// Class-field classes against the norm-subgroup lattice:
    /// bijection plus both duality laws (compositum/meet,
    /// intersection/join).
    LatticeDuality,
    /// Power quotients of the unit model: the admissible divisor pair,
    /// power collapse, and the two-factor quotient shape.
    PowerQuotients,
    /// The nonreal pi1-full classes are exactly the normal extensions
    /// inside the odd tower, and each contains the quadratic base.
    NormalClassFields,
    /// Coprime-degree composita: norm groups meet, quotient shapes
    /// multiply.
    CoprimeProducts,
    /// Nonreal classes decompose into single-prime pieces: norm group
    /// is the meet of the pieces', shapes multiply.
    PrimaryDecomposition,
    /// For odd exponents the power quotients at the base level and
    /// over the quadratic extension are isomorphic.
    OddQuotientTransfer,
    /// Prime-power quotients are homocyclic of rank c(p).
    PrimePowerShapes,
    /// Normality equals nonreality, and the norm quotient matches the
    /// Galois shape of the pi1-free core times the reality factor.
    NormalityAndQuotients,
    /// The two-level norm correspondence: restriction/extension round
    /// trips, the shape transfer, the power-law join, and the interval
    /// order isomorphism.
    TwoLevelCorrespondence,
    /// Every finite-index subgroup quotient has at most two invariant
    /// factors subject to the index/exponent law.
    FiniteIndexShapes,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::ClassFields,
        TheoremId::LatticeDuality,
        TheoremId::PowerQuotients,
        TheoremId::NormalClassFields,
        TheoremId::CoprimeProducts,
        TheoremId::PrimaryDecomposition,
        TheoremId::OddQuotientTransfer,
        TheoremId::PrimePowerShapes,
        TheoremId::NormalityAndQuotients,
        TheoremId::TwoLevelCorrespondence,
        TheoremId::FiniteIndexShapes,
    ];

    /// Stable wire identifier.
    pub fn id(self) -> &'static str {
        match self {
            TheoremId::ClassFields => "THM_1_1",
            TheoremId::LatticeDuality => "THM_1_2_I",
            TheoremId::PowerQuotients => "THM_1_2_II",
            TheoremId::NormalClassFields => "THM_1_2_III",
            TheoremId::CoprimeProducts => "LEMMA_2_1",
            TheoremId::PrimaryDecomposition => "LEMMA_2_2",
            TheoremId::OddQuotientTransfer => "LEMMA_2_4_II",
            TheoremId::PrimePowerShapes => "LEMMA_2_4_III",
            TheoremId::NormalityAndQuotients => "PROP_3_1",
            TheoremId::TwoLevelCorrespondence => "STMT_3_1",
            TheoremId::FiniteIndexShapes => "REMARK_3_2_I",
        }
    }

    /// One-line description of what the sweep checks.
    pub fn summary(self) -> &'static str {
        match self {
            TheoremId::ClassFields => {
                "norm subgroups of pi1-free index classify class fields, with the embedding criterion"
            }
            TheoremId::LatticeDuality => {
                "class-field classes biject with norm subgroups; composita meet, intersections join"
            }
            TheoremId::PowerQuotients => {
                "power quotients collapse to the admissible divisor pair with a two-factor shape"
            }
            TheoremId::NormalClassFields => {
                "nonreal pi1-full classes are exactly the normal odd-tower extensions"
            }
            TheoremId::CoprimeProducts => {
                "coprime composita: norm groups intersect and quotient shapes multiply"
            }
            TheoremId::PrimaryDecomposition => {
                "nonreal classes split into single-prime pieces with multiplicative shapes"
            }
            TheoremId::OddQuotientTransfer => {
                "odd power quotients agree at the base level and over the quadratic extension"
            }
            TheoremId::PrimePowerShapes => "prime-power quotients are homocyclic of rank c(p)",
            TheoremId::NormalityAndQuotients => {
                "normality equals nonreality; norm quotients match the core's Galois shape"
            }
            TheoremId::TwoLevelCorrespondence => {
                "norm subgroups over the quadratic extension correspond to base-level ones"
            }
            TheoremId::FiniteIndexShapes => {
                "finite-index quotients have at most two invariant factors under the index law"
            }
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Unrecognised theorem identifier.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnknownTheorem(pub String);

impl fmt::Display for UnknownTheorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown theorem id `{}`; expected one of", self.0)?;
        for (i, t) in TheoremId::ALL.iter().enumerate() {
            write!(f, "{} {}", if i == 0 { "" } else { "," }, t.id())?;
        }
        Ok(())
    }
}

impl core::error::Error for UnknownTheorem {}

impl core::str::FromStr for TheoremId {
    type Err = UnknownTheorem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownTheorem(s.to_string()))
    }
}

/// Sweep bounds.  Every verifier draws its universe from these; the
/// budget caps the size of the oracle structures (stored elements) a
/// sweep may build.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Bounds {
    /// Extension classes are enumerated up to this degree.
    pub max_degree: u64,
    /// Norm subgroups are enumerated up to this index.
    pub max_index: u64,
    /// Pairwise sweeps (duality, coprime products) cap both degrees
    /// here.
    pub pair_degree: u64,
    /// Power sweeps run over the divisors of this modulus.
    pub modulus: u64,
    /// Upper bound on oracle element storage; sweeps refuse to run
    /// past it instead of shrinking silently.
    pub budget: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_degree: 100, max_index: 50, pair_degree: 50, modulus: 900, budget: 1_000_000 }
    }
}

/// A single failed check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub instance: String,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected {}, got {}", self.instance, self.expected, self.actual)
    }
}

/// Outcome of one verification sweep.  `violations` keeps at most
/// [`MAX_RECORDED_VIOLATIONS`] examples; `violations_total` counts all
/// of them.  `elapsed_ms` is filled in by the caller that owns a
/// clock.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub universe: String,
    pub levels_used: BTreeMap<u64, u32>,
    pub instances: u64,
    pub violations: Vec<Violation>,
    pub violations_total: u64,
    pub elapsed_ms: u64,
}

pub const MAX_RECORDED_VIOLATIONS: usize = 20;

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.violations_total == 0
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} — {} checks over {}",
            self.theorem,
            if self.pass() { "pass" } else { "FAIL" },
            self.instances,
            self.universe
        )?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        if self.violations_total > self.violations.len() as u64 {
            write!(f, "\n  (+{} more)", self.violations_total - self.violations.len() as u64)?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum VerifyError {
    /// The sweep would need larger oracle structures than the budget
    /// allows.
    BudgetExceeded { required: u64, budget: u64 },
    /// Bounds that define no meaningful universe (zeros).
    InvalidBounds(&'static str),
    /// Raising the truncation levels produced an unusable spec.
    Spec(SpecError),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::BudgetExceeded { required, budget } => write!(
                f,
                "oracle budget too small: this sweep needs at least {required}, budget is {budget}"
            ),
            VerifyError::InvalidBounds(what) => write!(f, "invalid bounds: {what}"),
            VerifyError::Spec(e) => write!(f, "unusable spec after level raise: {e}"),
        }
    }
}

impl core::error::Error for VerifyError {}

impl From<OracleError> for VerifyError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded { required, budget } => {
                VerifyError::BudgetExceeded { required, budget }
            }
        }
    }
}

impl From<SpecError> for VerifyError {
    fn from(e: SpecError) -> Self {
        VerifyError::Spec(e)
    }
}

/// Run one verification sweep.  `elapsed_ms` in the report is zero;
/// time it from the calling side if wanted.
pub fn verify(
    spec: &FieldSpec,
    theorem: TheoremId,
    bounds: &Bounds,
) -> Result<VerificationReport, VerifyError> {
    if bounds.max_degree == 0 || bounds.max_index == 0 || bounds.pair_degree == 0 {
        return Err(VerifyError::InvalidBounds("degree and index bounds must be positive"));
    }
    if bounds.modulus == 0 {
        return Err(VerifyError::InvalidBounds("power modulus must be positive"));
    }
    if bounds.budget == 0 {
        return Err(VerifyError::InvalidBounds("budget must be positive"));
    }
    let run = match theorem {
        TheoremId::ClassFields => run_class_fields(spec, bounds),
        TheoremId::LatticeDuality => run_lattice_duality(spec, bounds),
        TheoremId::PowerQuotients => run_power_quotients(spec, bounds),
        TheoremId::NormalClassFields => run_normal_class_fields(spec, bounds),
        TheoremId::CoprimeProducts => run_coprime_products(spec, bounds),
        TheoremId::PrimaryDecomposition => run_primary_decomposition(spec, bounds),
        TheoremId::OddQuotientTransfer => run_odd_quotient_transfer(spec, bounds),
        TheoremId::PrimePowerShapes => run_prime_power_shapes(spec, bounds),
        TheoremId::NormalityAndQuotients => run_normality_and_quotients(spec, bounds),
        TheoremId::TwoLevelCorrespondence => run_two_level_correspondence(spec, bounds),
        TheoremId::FiniteIndexShapes => run_finite_index_shapes(spec, bounds),
    }?;
    Ok(VerificationReport {
        theorem,
        universe: run.universe,
        levels_used: run.raised.levels().clone(),
        instances: run.sweep.instances,
        violations: run.sweep.violations,
        violations_total: run.sweep.violations_total,
        elapsed_ms: 0,
    })
}

struct Run {
    raised: FieldSpec,
    universe: String,
    sweep: Sweep,
}

#[derive(Default)]
struct Sweep {
    instances: u64,
    violations_total: u64,
    violations: Vec<Violation>,
}

impl Sweep {
    fn claim<F>(&mut self, ok: bool, detail: F)
    where
        F: FnOnce() -> Violation,
    {
        self.instances += 1;
        if !ok {
            self.violations_total += 1;
            if self.violations.len() < MAX_RECORDED_VIOLATIONS {
                self.violations.push(detail());
            }
        }
    }
}

fn fail(instance: String, expected: String, actual: String) -> Violation {
    Violation { instance, expected, actual }
}

/// Levels needed so every component of index <= d fits.
fn degree_targets(spec: &FieldSpec, d: u64) -> Vec<(u64, u32)> {
    spec.lattice_primes().into_iter().map(|p| (p, arith::ilog(p, d.max(1)))).collect()
}

/// Levels needed so exponents dividing m act faithfully.
fn modulus_targets(spec: &FieldSpec, m: u64) -> Vec<(u64, u32)> {
    spec.lattice_primes().into_iter().map(|p| (p, arith::valuation(m, p))).collect()
}

fn upow(p: u64, e: u32) -> u128 {
    let mut v: u128 = 1;
    for _ in 0..e {
        v = v.saturating_mul(p as u128);
    }
    v
}

/// Total order of the truncated unit model at the raised levels; the
/// budget refuses sweeps whose element tables would not fit.
fn model_order(spec: &FieldSpec, with_two_torsion: bool) -> u128 {
    let mut order: u128 = if with_two_torsion { 2 } else { 1 };
    for p in spec.lattice_primes() {
        let k = spec.level(p).expect("lattice prime");
        let c = spec.rank(p).expect("lattice prime") as u32;
        order = order.saturating_mul(upow(p, c * k));
    }
    order
}

fn guard_model(spec: &FieldSpec, with_two_torsion: bool, budget: u64) -> Result<(), VerifyError> {
    let order = model_order(spec, with_two_torsion);
    if order > budget as u128 {
        return Err(VerifyError::BudgetExceeded {
            required: u64::try_from(order).unwrap_or(u64::MAX),
            budget,
        });
    }
    Ok(())
}

fn is_pi1_free(spec: &FieldSpec, n: u64) -> bool {
    spec.pi1().iter().all(|&p| n % p != 0)
}

/// All norm subgroups of index <= bound, ascending by index.
fn norm_subgroups_up_to(spec: &FieldSpec, bound: u64) -> Vec<NormSubgroup> {
    let mut out = Vec::new();
    for n in 1..=bound {
        if let IndexFeasibility::Feasible(list) = norm_groups_of_index(spec, n) {
            out.extend(list);
        }
    }
    out
}

fn two_torsion_shape() -> GroupShape {
    GroupShape::from_cyclic_orders([2])
}

fn run_class_fields(spec: &FieldSpec, bounds: &Bounds) -> Result<Run, VerifyError> {
    let mut targets = degree_targets(spec, bounds.max_degree);
    targets.extend(degree_targets(spec, bounds.max_index));
    let raised = spec.with_levels_at_least(targets);
    guard_model(&raised, true, bounds.budget)?;

    let w = UnitModel::for_base(&raised);
    let subs = w.enumerate_subgroups(bounds.budget)?;
    let exts = enumerate_extensions(&raised, bounds.max_degree).expect("levels provisioned");
    let norms = norm_subgroups_up_to(&raised, bounds.max_index);
    let embeds: Vec<ModelSubgroup> = norms.iter().map(|u| w.embed(u)).collect();
    let ext_norms: Vec<NormSubgroup> = exts.iter().map(|x| norm_group(&raised, x)).collect();
    let ext_embeds: Vec<ModelSubgroup> = ext_norms.iter().map(|u| w.embed(u)).collect();
    let is_sigma: Vec<bool> =
        exts.iter().map(|x| x.sigma_class(&raised) != SigmaClass::Neither).collect();

    let mut sweep = Sweep::default();

    // Existence and uniqueness: every subgroup of pi1-free index is the
    // image of exactly one norm subgroup, everything else of none.
    let mut scanned = 0u64;
    for s in &subs {
        let idx = w.index_of(s);
        if idx > bounds.max_index {
            continue;
        }
        scanned += 1;
        let free = is_pi1_free(&raised, idx);
        sweep.claim(w.pi1_full(s) == free, || {
            fail(
                format!("subgroup of index {idx}"),
                format!("pi1 blocks full iff index is pi1-free ({free})"),
                format!("{}", w.pi1_full(s)),
            )
        });
        let matches: Vec<usize> = embeds.iter().enumerate().filter(|(_, e)| *e == s).map(|(i, _)| i).collect();
        if free {
            sweep.claim(matches.len() == 1, || {
                fail(
                    format!("subgroup of pi1-free index {idx}"),
                    "exactly one norm subgroup with this element set".to_string(),
                    format!("{} matches", matches.len()),
                )
            });
            if let [m] = matches[..] {
                let u = &norms[m];
                let cf = class_field_of(&raised, u);
                sweep.claim(cf.degree() == idx, || {
                    fail(
                        format!("class field of {u}"),
                        format!("degree {idx}"),
                        format!("degree {}", cf.degree()),
                    )
                });
                sweep.claim(norm_group(&raised, &cf) == *u, || {
                    fail(
                        format!("class field of {u}"),
                        "norm group returns the subgroup".to_string(),
                        format!("{}", norm_group(&raised, &cf)),
                    )
                });
                if idx <= bounds.max_degree {
                    let copies = exts
                        .iter()
                        .zip(&is_sigma)
                        .zip(&ext_norms)
                        .filter(|((_, &sig), n)| sig && **n == *u)
                        .count();
                    sweep.claim(copies == 1, || {
                        fail(
                            format!("representative classes with norm group {u}"),
                            "exactly one".to_string(),
                            format!("{copies}"),
                        )
                    });
                }
            }
        } else {
            sweep.claim(matches.is_empty(), || {
                fail(
                    format!("subgroup of pi1-divisible index {idx}"),
                    "no norm subgroup matches".to_string(),
                    format!("{} matches", matches.len()),
                )
            });
        }
    }

    // Embedding criterion: the class field of U embeds in X exactly
    // when U contains the norm group of X; containment is also checked
    // on element sets.
    for (ui, u) in norms.iter().enumerate() {
        let cf = class_field_of(&raised, u);
        for (xi, x) in exts.iter().enumerate() {
            let module = u.contains(&ext_norms[xi]);
            let oracle = w.contains(&embeds[ui], &ext_embeds[xi]);
            sweep.claim(oracle == module, || {
                fail(
                    format!("containment of norm({x}) in {u}"),
                    format!("element sets agree with the component rule ({module})"),
                    format!("{oracle}"),
                )
            });
            let embeds_cf = cf.embeds_in(x);
            sweep.claim(embeds_cf == module, || {
                fail(
                    format!("class field of {u} vs {x}"),
                    format!("embeds iff norm group contained ({module})"),
                    format!("{embeds_cf}"),
                )
            });
        }
    }

    // Index characterisation on the extension side.
    for (xi, x) in exts.iter().enumerate() {
        let d = x.degree();
        let free = is_pi1_free(&raised, d);
        sweep.claim((ext_norms[xi].index() == d) == free, || {
            fail(
                format!("{x}"),
                format!("norm index equals degree iff degree pi1-free ({free})"),
                format!("index {}", ext_norms[xi].index()),
            )
        });
        sweep.claim(is_sigma[xi] == free, || {
            fail(
                format!("{x}"),
                format!("class field iff degree pi1-free ({free})"),
                format!("{}", is_sigma[xi]),
            )
        });
    }

    let universe = format!(
        "{scanned} subgroups of index <= {} in {}, {} classes of degree <= {}",
        bounds.max_index,
        w.describe(),
        exts.len(),
        bounds.max_degree
    );
    Ok(Run { raised, universe, sweep })
}

fn run_lattice_duality(spec: &FieldSpec, bounds: &Bounds) -> Result<Run, VerifyError> {
    // Meets of pair components can double the depth, so pi2 levels are
    // raised twice as far as the pair bound needs.
    let mut targets = degree_targets(spec, bounds.max_degree);
    for p in spec.pi2().iter().copied() {
        targets.push((p, 2 * arith::ilog(p, bounds.pair_degree)));
    }
    let raised = spec.with_levels_at_least(targets);
    for p in raised.pi2().iter().copied() {
        let block = upow(p, 2 * raised.level(p).expect("pi2 prime"));
        if block > bounds.budget as u128 {
            return Err(VerifyError::BudgetExceeded {
                required: u64::try_from(block).unwrap_or(u64::MAX),
                budget: bounds.budget,
            });
        }
    }

    let exts = enumerate_extensions(&raised, bounds.max_degree).expect("levels provisioned");
    let sigma: Vec<&FiniteExtension> =
        exts.iter().filter(|x| x.sigma_class(&raised) != SigmaClass::Neither).collect();
    let images: Vec<NormSubgroup> = sigma.iter().map(|x| norm_group(&raised, x)).collect();
    let enumerated = norm_subgroups_up_to(&raised, bounds.max_degree);

    let mut sweep = Sweep::default();

    // Bijection between representatives and the norm lattice.
    let image_set: BTreeSet<&NormSubgroup> = images.iter().collect();
    sweep.claim(image_set.len() == images.len(), || {
        fail(
            "norm map on representative classes".to_string(),
            "injective".to_string(),
            format!("{} classes, {} distinct norm groups", images.len(), image_set.len()),
        )
    });
    let enum_set: BTreeSet<&NormSubgroup> = enumerated.iter().collect();
    for u in &enumerated {
        sweep.claim(image_set.contains(u), || {
            fail(
                format!("norm subgroup {u}"),
                "hit by some representative class".to_string(),
                "missed".to_string(),
            )
        });
    }
    for (x, u) in sigma.iter().zip(&images) {
        sweep.claim(enum_set.contains(u), || {
            fail(
                format!("norm group of {x}"),
                format!("an enumerated subgroup of index <= {}", bounds.max_degree),
                format!("{u}"),
            )
        });
        sweep.claim(u.index() == x.degree(), || {
            fail(format!("{x}"), format!("norm index {}", x.degree()), format!("{}", u.index()))
        });
    }

    // Duality laws on all representative pairs within the pair bound.
    let small: Vec<usize> =
        (0..sigma.len()).filter(|&i| sigma[i].degree() <= bounds.pair_degree).collect();
    let mut pairs = 0u64;
    for (a, &i) in small.iter().enumerate() {
        for &j in &small[a..] {
            pairs += 1;
            let (x, y) = (sigma[i], sigma[j]);
            let compositum = x.compositum(y, &raised).expect("levels provisioned");
            let meet = images[i].meet(&images[j], &raised).expect("levels provisioned");
            sweep.claim(norm_group(&raised, &compositum) == meet, || {
                fail(
                    format!("compositum of {x} and {y}"),
                    format!("norm group {meet}"),
                    format!("{}", norm_group(&raised, &compositum)),
                )
            });
            let intersection = x.intersect(y);
            let join = images[i].join(&images[j]);
            sweep.claim(norm_group(&raised, &intersection) == join, || {
                fail(
                    format!("intersection of {x} and {y}"),
                    format!("norm group {join}"),
                    format!("{}", norm_group(&raised, &intersection)),
                )
            });
        }
    }

    // Element-set ground truth, block by block: component meets against
    // bit-set intersections at doubled depth, component sums against
    // explicit spans at single depth.
    for p in raised.pi2().iter().copied() {
        let comps: Vec<_> = {
            let mut set = BTreeSet::new();
            for &i in &small {
                set.insert(*images[i].component(p).expect("pi2 component"));
            }
            set.into_iter().collect::<Vec<_>>()
        };

        let k_hi = raised.level(p).expect("pi2 prime");
        let hi = FiniteAbelianGroup::new([arith::pow(p, k_hi), arith::pow(p, k_hi)]);
        let hi_sets: Vec<BitSet> = comps
            .iter()
            .map(|c| {
                let mut set = BitSet::new(hi.order());
                for e in hi.span(&component_generators(&hi, c)) {
                    set.insert(e);
                }
                set
            })
            .collect();

        let k_lo = arith::ilog(p, bounds.pair_degree).max(1);
        let lo = FiniteAbelianGroup::new([arith::pow(p, k_lo), arith::pow(p, k_lo)]);
        let lo_sets: Vec<Vec<u64>> =
            comps.iter().map(|c| lo.span(&component_generators(&lo, c))).collect();

        for i in 0..comps.len() {
            for j in i..comps.len() {
                let meet = comps[i].intersect(&comps[j], &raised).expect("levels provisioned");
                let lhs = hi_sets[i].intersection(&hi_sets[j]);
                let gens = component_generators(&hi, &meet);
                // <g1, g2> inside the intersection has the same size
                // exactly when the canonical meet spans the whole set.
                let span1 = hi.span(&gens[..1]);
                let span2 = hi.span(&gens[1..]);
                let common =
                    span1.iter().filter(|e| span2.binary_search(e).is_ok()).count() as u64;
                let span_size = span1.len() as u64 * span2.len() as u64 / common;
                let ok = gens.iter().all(|&g| lhs.contains(g)) && lhs.count() == span_size;
                sweep.claim(ok, || {
                    fail(
                        format!("meet of {} and {} at {p}", comps[i], comps[j]),
                        format!("element-set intersection of size {}", lhs.count()),
                        format!("{meet} spanning {span_size}"),
                    )
                });

                let sum = comps[i].sum(&comps[j]);
                let mut union_gens = lo_sets[i].clone();
                union_gens.extend(lo_sets[j].iter().copied());
                let joined = lo.span(&union_gens);
                let sum_set = lo.span(&component_generators(&lo, &sum));
                sweep.claim(joined == sum_set, || {
                    fail(
                        format!("sum of {} and {} at {p}", comps[i], comps[j]),
                        format!("span of the union ({} elements)", joined.len()),
                        format!("{sum} spanning {}", sum_set.len()),
                    )
                });
            }
        }
    }

    let universe = format!(
        "{} representative classes of degree <= {}, {pairs} pairs of degree <= {}",
        sigma.len(),
        bounds.max_degree,
        bounds.pair_degree
    );
    Ok(Run { raised, universe, sweep })
}

fn run_power_quotients(spec: &FieldSpec, bounds: &Bounds) -> Result<Run, VerifyError> {
    let raised = spec.with_levels_at_least(modulus_targets(spec, bounds.modulus));
    guard_model(&raised, true, bounds.budget)?;
    let w = UnitModel::for_base(&raised);

    let mut sweep = Sweep::default();
    let divisors = arith::divisors(bounds.modulus);
    for &n in &divisors {
        let (d, d1) = admissible_pair(&raised, n).expect("n positive");

        // Independent maximisation over qualifying divisor pairs.
        let in_support =
            |q: u64| q == 2 || raised.pi1().contains(&q) || raised.pi2().contains(&q);
        let q_d: Vec<u64> = arith::divisors(n)
            .into_iter()
            .filter(|&dd| dd % 4 != 0 && arith::factorize(dd).iter().all(|&(q, _)| in_support(q)))
            .collect();
        let brute_d = q_d.iter().copied().find(|&cand| q_d.iter().all(|&dd| cand % dd == 0));
        let q_d1: Vec<u64> = q_d
            .iter()
            .copied()
            .filter(|&dd1| dd1 % 2 != 0 && raised.pi1().iter().all(|&q| dd1 % q != 0))
            .collect();
        let brute_d1 = q_d1.iter().copied().find(|&cand| q_d1.iter().all(|&dd| cand % dd == 0));
        sweep.claim(brute_d == Some(d) && brute_d1 == Some(d1), || {
            fail(
                format!("admissible pair for n = {n}"),
                format!("brute-force maxima ({brute_d:?}, {brute_d1:?})"),
                format!("({d}, {d1})"),
            )
        });

        // The power subgroup collapses to the admissible exponent.
        let wn = w.power_subgroup(n);
        sweep.claim(wn == w.power_subgroup(d), || {
            fail(
                format!("power subgroup at n = {n}"),
                format!("same element set as at {d}"),
                "different sets".to_string(),
            )
        });

        // Counted quotient shape against the closed form.
        let counted = w.quotient_shape(&wn);
        let closed = unit_quotient_shape(&raised, n).expect("n positive");
        sweep.claim(counted == closed, || {
            fail(
                format!("quotient shape at n = {n}"),
                format!("{closed}"),
                format!("{counted}"),
            )
        });
        sweep.claim(counted.order() == d as u128 as u64 * d1, || {
            fail(
                format!("quotient order at n = {n}"),
                format!("{}", d * d1),
                format!("{}", counted.order()),
            )
        });
    }

    let universe =
        format!("{} divisors of {} against {}", divisors.len(), bounds.modulus, w.describe());
    Ok(Run { raised, universe, sweep })
}

fn run_normal_class_fields(spec: &FieldSpec, bounds: &Bounds) -> Result<Run, VerifyError> {
    let raised = spec.with_levels_at_least(degree_targets(spec, bounds.max_degree));
    guard_model(&raised, true, bounds.budget)?;
    let g = TruncatedGaloisGroup::new(&raised);
    let exts = enumerate_extensions(&raised, bounds.max_degree).expect("levels provisioned");
    let quadratic_base = FiniteExtension::i_adjoined_base(&raised);

    let mut sweep = Sweep::default();
    let mut scanned = 0u64;
    for x in exts.iter().filter(|x| x.degree() >= 2) {
        scanned += 1;
        let gens = g.extension_generators(x);
        let sub = g.span(&gens);
        let normal = g.is_normal(&sub, &gens);
        sweep.claim(normal == x.is_normal(), || {
            fail(
                format!("{x}"),
                format!("conjugation-stable in the Galois model ({})", x.is_normal()),
                format!("{normal}"),
            )
        });
        let pi1_full =
            raised.pi1().iter().all(|&p| x.component(p).expect("spec prime").is_full());
        let in_sigma1 = x.sigma_class(&raised) == SigmaClass::Sigma1;
        sweep.claim(in_sigma1 == (normal && pi1_full), || {
            fail(
                format!("{x}"),
                format!("nonreal representative iff normal and pi1-full ({})", normal && pi1_full),
                format!("{in_sigma1}"),
            )
        });
        if in_sigma1 {
            sweep.claim(quadratic_base.embeds_in(x), || {
                fail(
                    format!("{x}"),
                    "contains the quadratic base".to_string(),
                    "does not embed".to_string(),
                )
            });
        }
    }

    let universe =
        format!("{scanned} classes of degree 2..={} in a Galois model of order {}", bounds.max_degree, g.order());
    Ok(Run { raised, universe, sweep })
}

fn run_coprime_products(spec: &FieldSpec, bounds: &Bounds) -> Result<Run, VerifyError> {
    let raised = spec.with_levels_at_least(degree_targets(spec, bounds.pair_degree));
    guard_model(&raised, true, bounds.budget)?;
    let w = UnitModel::for_base(&raised);
    let exts = enumerate_extensions(&raised, bounds.pair_degree).expect("levels provisioned");
    let norms: Vec<NormSubgroup> = exts.iter().map(|x| norm_group(&raised, x)).collect();
    let embeds: Vec<ModelSubgroup> = norms.iter().map(|u| w.embed(u)).collect();
    let counted: Vec<GroupShape> = embeds.iter().map(|e| w.quotient_shape(e)).collect();

    let mut sweep = Sweep::default();
    let mut pairs = 0u64;
    for i in 0..exts.len() {
        for j in i..exts.len() {
            if arith::gcd(exts[i].degree(), exts[j].degree()) != 1 {
                continue;
            }
            pairs += 1;
            let (x, y) = (&exts[i], &exts[j]);
            let compositum = x.compositum(y, &raised).expect("coprime meets stay in level");
            let meet = norms[i].meet(&norms[j], &raised).expect("coprime meets stay in level");
            sweep.claim(norm_group(&raised, &compositum) == meet, || {
                fail(
                    format!("compositum of {x} and {y}"),
                    format!("norm group {meet}"),
                    format!("{}", norm_group(&raised, &compositum)),
                )
            });
            let product = norms[i].quotient_shape().product(&norms[j].quotient_shape());
            sweep.claim(meet.quotient_shape() == product, || {
                fail(
                    format!("norm quotient of {x}{y} compositum"),
                    format!("{product}"),
                    format!("{}", meet.quotient_shape()),
                )
            });
            // Ground truth: counted shape of the set intersection.
            let set_meet = w.intersect(&embeds[i], &embeds[j]);
            let counted_meet = w.quotient_shape(&set_meet);
            let counted_product = counted[i].product(&counted[j]);
            sweep.claim(counted_meet == counted_product && set_meet == w.embed(&meet), || {
                fail(
                    format!("element sets for {x} and {y}"),
                    format!("counted shape {counted_product} on the canonical meet"),
                    format!("{counted_meet}"),
                )
            });
        }
    }

    let universe =
        format!("{pairs} coprime-degree pairs of classes of degree <= {}", bounds.pair_degree);
    Ok(Run { raised, universe, sweep })
}

fn run_primary_decomposition(spec: &FieldSpec, bounds: &Bounds) -> Result<Run, VerifyError> {
    let raised = spec.with_levels_at_least(degree_targets(spec, bounds.max_degree));
    guard_model(&raised, true, bounds.budget)?;
    let w = UnitModel::for_base(&raised);
    let exts = enumerate_extensions(&raised, bounds.max_degree).expect("levels provisioned");

    let mut sweep = Sweep::default();
    let mut scanned = 0u64;
    for x in exts.iter().filter(|x| x.reality() == Reality::Nonreal) {
        scanned += 1;
        // Single-prime pieces: the quadratic base plus one real class
        // per odd prime actually present in the degree.
        let mut pieces = Vec::new();
        pieces.push(FiniteExtension::i_adjoined_base(&raised));
        for p in raised.lattice_primes() {
            let comp = *x.component(p).expect("spec prime");
            if !comp.is_full() {
                pieces.push(
                    FiniteExtension::new(&raised, Reality::Real, [comp])
                        .expect("component already valid"),
                );
            }
        }

        let u = norm_group(&raised, x);
        let mut meet = norm_group(&raised, &pieces[0]);
        for piece in &pieces[1..] {
            meet = meet.meet(&norm_group(&raised, piece), &raised).expect("levels provisioned");
        }
        sweep.claim(u == meet, || {
            fail(
                format!("{x}"),
                format!("norm group is the meet of {} pieces: {meet}", pieces.len()),
                format!("{u}"),
            )
        });

        let mut product = GroupShape::trivial();
        for piece in &pieces {
            product = product.product(&norm_group(&raised, piece).quotient_shape());
        }
        sweep.claim(u.quotient_shape() == product, || {
            fail(format!("{x}"), format!("shape {product}"), format!("{}", u.quotient_shape()))
        });

        // Ground truth on element sets.
        let mut set_meet = w.embed(&norm_group(&raised, &pieces[0]));
        let mut counted_product = w.quotient_shape(&set_meet);
        for piece in &pieces[1..] {
            let pe = w.embed(&norm_group(&raised, piece));
            counted_product = counted_product.product(&w.quotient_shape(&pe));
            set_meet = w.intersect(&set_meet, &pe);
        }
        let ue = w.embed(&u);
        let counted = w.quotient_shape(&ue);
        sweep.claim(set_meet == ue && counted == counted_product, || {
            fail(
                format!("element sets for {x}"),
                format!("piecewise intersection with counted shape {counted_product}"),
                format!("{counted}"),
            )
        });
    }

    let universe =
        format!("{scanned} nonreal classes of degree <= {}", bounds.max_degree);
    Ok(Run { raised, universe, sweep })
}

fn run_odd_quotient_transfer(spec: &FieldSpec, bounds: &Bounds) -> Result<Run, VerifyError> {
    let raised = spec.with_levels_at_least(modulus_targets(spec, bounds.modulus));
    guard_model(&raised, true, bounds.budget)?;
    let w = UnitModel::for_base(&raised);
    let w1 = UnitModel::over_i(&raised);

    let mut sweep = Sweep::default();
    let odd: Vec<u64> = arith::divisors(bounds.modulus).into_iter().filter(|n| n % 2 == 1).collect();
    for &n in &odd {
        let base = w.quotient_shape(&w.power_subgroup(n));
        let upper = w1.quotient_shape(&w1.power_subgroup(n));
        sweep.claim(base == upper, || {
            fail(
                format!("odd exponent {n}"),
                format!("both levels share the quotient shape {base}"),
                format!("{upper} over the quadratic extension"),
            )
        });
        let closed = unit_quotient_shape(&raised, n).expect("n positive");
        sweep.claim(base == closed, || {
            fail(format!("odd exponent {n}"), format!("{closed}"), format!("{base}"))
        });
    }

    let universe = format!(
        "{} odd divisors of {} against {} and {}",
        odd.len(),
        bounds.modulus,
        w.describe(),
        w1.describe()
    );
    Ok(Run { raised, universe, sweep })
}

fn run_prime_power_shapes(spec: &FieldSpec, bounds: &Bounds) -> Result<Run, VerifyError> {
    let raised = spec.with_levels_at_least(modulus_targets(spec, bounds.modulus));
    guard_model(&raised, true, bounds.budget)?;
    let w = UnitModel::for_base(&raised);

    let mut sweep = Sweep::default();
    let mut swept = 0u64;
    for p in raised.lattice_primes() {
        let rank = raised.rank(p).expect("lattice prime") as usize;
        for j in 1..=raised.level(p).expect("lattice prime") {
            swept += 1;
            let n = arith::pow(p, j);
            let expected = GroupShape::from_cyclic_orders(core::iter::repeat(n).take(rank));
            let counted = w.quotient_shape(&w.power_subgroup(n));
            sweep.claim(counted == expected, || {
                fail(
                    format!("exponent {p}^{j}"),
                    format!("homocyclic {expected}"),
                    format!("{counted}"),
                )
            });
            let closed = unit_quotient_shape(&raised, n).expect("n positive");
            sweep.claim(closed == expected, || {
                fail(
                    format!("closed form at {p}^{j}"),
                    format!("{expected}"),
                    format!("{closed}"),
                )
            });
        }
    }

    let universe = format!("{swept} prime powers within the levels of {}", w.describe());
    Ok(Run { raised, universe, sweep })
}

fn run_normality_and_quotients(spec: &FieldSpec, bounds: &Bounds) -> Result<Run, VerifyError> {
    let raised = spec.with_levels_at_least(degree_targets(spec, bounds.max_degree));
    guard_model(&raised, true, bounds.budget)?;
    let g = TruncatedGaloisGroup::new(&raised);
    let w = UnitModel::for_base(&raised);
    let exts = enumerate_extensions(&raised, bounds.max_degree).expect("levels provisioned");

    let mut sweep = Sweep::default();
    let mut scanned = 0u64;
    for x in exts.iter().filter(|x| x.degree() >= 2) {
        scanned += 1;
        let gens = g.extension_generators(x);
        let sub = g.span(&gens);
        let normal = g.is_normal(&sub, &gens);
        let nonreal = x.reality() == Reality::Nonreal;
        sweep.claim(normal == nonreal, || {
            fail(
                format!("{x}"),
                format!("normal iff nonreal ({nonreal})"),
                format!("{normal}"),
            )
        });

        let core = class_field_core(&raised, x);
        let dc = core.degree();
        let odd_index = x.degree() / dc;
        let core_primes_ok =
            arith::factorize(dc).iter().all(|&(q, _)| q == 2 || raised.pi2().contains(&q));
        let index_primes_ok =
            arith::factorize(odd_index).iter().all(|&(q, _)| raised.pi1().contains(&q));
        sweep.claim(
            core.embeds_in(x) && x.degree() % dc == 0 && core_primes_ok && index_primes_ok,
            || {
                fail(
                    format!("{x}"),
                    "core splits the degree into pi2-and-2 times pi1 parts".to_string(),
                    format!("core degree {dc} inside degree {}", x.degree()),
                )
            },
        );
        let u = norm_group(&raised, x);
        sweep.claim(norm_group(&raised, &core) == u, || {
            fail(
                format!("{x}"),
                "core shares the norm group".to_string(),
                format!("{}", norm_group(&raised, &core)),
            )
        });

        let mut expected = core.galois_shape();
        if nonreal {
            expected = expected.product(&two_torsion_shape());
        }
        sweep.claim(u.quotient_shape() == expected, || {
            fail(
                format!("norm quotient of {x}"),
                format!("{expected}"),
                format!("{}", u.quotient_shape()),
            )
        });
        let counted = w.quotient_shape(&w.embed(&u));
        sweep.claim(counted == expected, || {
            fail(
                format!("counted norm quotient of {x}"),
                format!("{expected}"),
                format!("{counted}"),
            )
        });
    }

    let universe = format!(
        "{scanned} classes of degree 2..={} in a Galois model of order {}",
        bounds.max_degree,
        g.order()
    );
    Ok(Run { raised, universe, sweep })
}

fn run_two_level_correspondence(spec: &FieldSpec, bounds: &Bounds) -> Result<Run, VerifyError> {
    let mut targets = degree_targets(spec, bounds.pair_degree);
    for p in spec.pi2().iter().copied() {
        targets.push((p, arith::ilog(p, bounds.max_index)));
    }
    let raised = spec.with_levels_at_least(targets);
    guard_model(&raised, true, bounds.budget)?;
    let w = UnitModel::for_base(&raised);
    let w1 = UnitModel::over_i(&raised);

    // Norm subgroups over the quadratic extension, via the odd
    // base-level ones.
    let uppers: Vec<NormSubgroupOverI> = norm_subgroups_up_to(&raised, bounds.max_index)
        .iter()
        .filter(|u| u.index() % 2 == 1)
        .map(extend_over_i)
        .collect();

    let mut sweep = Sweep::default();
    for u1 in &uppers {
        let real_fiber = restrict_to_base(u1, false);
        let nonreal_fiber = restrict_to_base(u1, true);
        sweep.claim(extend_over_i(&real_fiber) == *u1 && extend_over_i(&nonreal_fiber) == *u1, || {
            fail(
                format!("{u1}"),
                "restriction then extension is the identity".to_string(),
                format!("{} / {}", extend_over_i(&real_fiber), extend_over_i(&nonreal_fiber)),
            )
        });
        sweep.claim(
            real_fiber.index() == u1.index() && nonreal_fiber.index() == 2 * u1.index(),
            || {
                fail(
                    format!("{u1}"),
                    format!("fiber indices {} and {}", u1.index(), 2 * u1.index()),
                    format!("{} and {}", real_fiber.index(), nonreal_fiber.index()),
                )
            },
        );
        sweep.claim(real_fiber.quotient_shape() == u1.quotient_shape(), || {
            fail(
                format!("{u1}"),
                format!("real fiber shape {}", u1.quotient_shape()),
                format!("{}", real_fiber.quotient_shape()),
            )
        });
        let doubled = u1.quotient_shape().product(&two_torsion_shape());
        sweep.claim(nonreal_fiber.quotient_shape() == doubled, || {
            fail(
                format!("{u1}"),
                format!("nonreal fiber shape {doubled}"),
                format!("{}", nonreal_fiber.quotient_shape()),
            )
        });
        // The quotient isomorphism between the two levels, counted on
        // element sets.
        let upper_counted = w1.quotient_shape(&w1.embed_over_i(u1));
        let base_counted = w.quotient_shape(&w.embed(&real_fiber));
        sweep.claim(upper_counted == base_counted, || {
            fail(
                format!("{u1}"),
                format!("counted shapes agree across levels ({base_counted})"),
                format!("{upper_counted}"),
            )
        });
    }

    // Interval order isomorphism under restriction.
    for u1 in &uppers {
        let base_u = restrict_to_base(u1, false);
        for v1 in &uppers {
            let upper_le = v1.contains(u1);
            let base_le = restrict_to_base(v1, false).contains(&base_u);
            sweep.claim(upper_le == base_le, || {
                fail(
                    format!("{v1} over {u1}"),
                    format!("containment matches across levels ({upper_le})"),
                    format!("{base_le}"),
                )
            });
        }
    }

    // Norm groups over the quadratic extension via base norms and
    // power subgroups, on element sets.
    let exts = enumerate_extensions(&raised, bounds.pair_degree).expect("levels provisioned");
    let mut reals = 0u64;
    for x in exts.iter().filter(|x| x.reality() == Reality::Real) {
        reals += 1;
        let rho = x.degree();
        let lifted = w1.embed_over_i(&extend_over_i(&norm_group(&raised, x)));
        let lhs = w1.join(&lifted, &w1.power_subgroup(rho));
        let rhs = w1.embed_over_i(&norm_group_over_i(&raised, x));
        sweep.claim(lhs == rhs, || {
            fail(
                format!("{x}"),
                "upper norm group is the base lift joined with degree-th powers".to_string(),
                "sets differ".to_string(),
            )
        });
    }

    let universe = format!(
        "{} norm subgroups of odd index <= {} over the quadratic extension, {reals} real classes of degree <= {}",
        uppers.len(),
        bounds.max_index,
        bounds.pair_degree
    );
    Ok(Run { raised, universe, sweep })
}

fn run_finite_index_shapes(spec: &FieldSpec, bounds: &Bounds) -> Result<Run, VerifyError> {
    let raised = spec.with_levels_at_least(modulus_targets(spec, bounds.modulus));
    guard_model(&raised, true, bounds.budget)?;
    let w = UnitModel::for_base(&raised);

    // Largest faithful power quotient for the modulus; every subgroup
    // whose quotient exponent divides the modulus lives inside it.
    let collapsed = power_collapse(&raised, bounds.modulus).expect("modulus positive");
    let counted = w.quotient_shape(&w.power_subgroup(collapsed));
    let quotient = FiniteAbelianGroup::new(counted.factors().iter().copied());
    let subs = quotient.enumerate_subgroups(bounds.budget)?;

    let mut sweep = Sweep::default();
    for s in &subs {
        let n = quotient.order() / s.order();
        let shape =
            GroupShape::from_cyclic_orders(quotient.quotient_primary_orders(s.elements()));
        sweep.claim(shape.rank() <= 2, || {
            fail(
                format!("subgroup of index {n}"),
                "at most two invariant factors".to_string(),
                format!("{shape}"),
            )
        });
        let e = shape.exponent();
        let closed = finite_index_shape(&raised, n, e);
        sweep.claim(closed.as_ref() == Ok(&shape), || {
            fail(
                format!("subgroup of index {n}, exponent {e}"),
                format!("closed form admits {shape}"),
                match &closed {
                    Ok(other) => format!("{other}"),
                    Err(why) => format!("rejected: {why}"),
                },
            )
        });
    }

    let universe = format!(
        "{} subgroups of the exponent-{collapsed} power quotient {counted}",
        subs.len()
    );
    Ok(Run { raised, universe, sweep })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::str::FromStr;

    fn spec() -> FieldSpec {
        FieldSpec::new([3], [5], [(3, 1), (5, 2)]).unwrap()
    }

    #[test]
    fn theorem_ids_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(TheoremId::from_str(t.id()).unwrap(), t);
            assert_eq!(TheoremId::from_str(&t.id().to_lowercase()).unwrap(), t);
            assert!(!t.summary().is_empty());
        }
        assert!(TheoremId::from_str("THM_9_9").is_err());
        let err = TheoremId::from_str("nope").unwrap_err();
        assert!(format!("{err}").contains("THM_1_1"));
    }

    #[test]
    fn bounds_are_validated() {
        let b = Bounds { max_degree: 0, ..Bounds::default() };
        assert!(matches!(
            verify(&spec(), TheoremId::ClassFields, &b),
            Err(VerifyError::InvalidBounds(_))
        ));
        let b = Bounds { modulus: 0, ..Bounds::default() };
        assert!(matches!(
            verify(&spec(), TheoremId::PowerQuotients, &b),
            Err(VerifyError::InvalidBounds(_))
        ));
    }

    #[test]
    fn budget_refusal_reports_requirement() {
        let b = Bounds { budget: 10, ..Bounds::default() };
        match verify(&spec(), TheoremId::PowerQuotients, &b) {
            Err(VerifyError::BudgetExceeded { required, budget }) => {
                assert_eq!(budget, 10);
                assert!(required > 10);
            }
            other => panic!("expected budget refusal, got {other:?}"),
        }
    }

    #[test]
    fn small_sweeps_pass() {
        let b = Bounds { max_degree: 20, max_index: 10, pair_degree: 10, modulus: 60, ..Bounds::default() };
        for t in [
            TheoremId::PowerQuotients,
            TheoremId::PrimePowerShapes,
            TheoremId::OddQuotientTransfer,
            TheoremId::FiniteIndexShapes,
        ] {
            let report = verify(&spec(), t, &b).unwrap();
            assert!(report.pass(), "{report}");
            assert!(report.instances > 0);
            assert_eq!(report.levels_used.get(&5), Some(&2));
        }
    }

    #[test]
    fn report_formatting() {
        let b = Bounds { max_degree: 10, max_index: 5, pair_degree: 5, modulus: 30, ..Bounds::default() };
        let report = verify(&spec(), TheoremId::CoprimeProducts, &b).unwrap();
        assert!(report.pass());
        let line = format!("{report}");
        assert!(line.starts_with("LEMMA_2_1: pass"), "{line}");
    }
}
