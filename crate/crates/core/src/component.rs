//! Per-prime lattice data: finite-index submodules of Z_p (rank 1, pi1
//! primes) and Z_p^2 (rank 2, pi2 primes) in canonical Hermite form.
//!
//! A rank-2 submodule of index p^(a+b) is written with the generator pair
//! (p^a, c), (0, p^b) where 0 <= c < p^b; the triple (a, b, c) is unique.
//! A rank-1 submodule is p^a Z_p, recorded by the exponent alone.  All
//! arithmetic below is exact over the integers; the truncation level of
//! the spec only bounds which components are representable.

use alloc::vec::Vec;
use core::fmt;

use crate::arith;
use crate::field::FieldSpec;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
enum Form {
    Line { exp: u32 },
    Plane { a: u32, b: u32, c: u64 },
}

/// Canonical finite-index submodule of the rank-1 or rank-2 module at
/// one prime.  Ordered by (prime, canonical data), which gives the
/// enumeration tie-break order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PrimeComponent {
    prime: u64,
    form: Form,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ComponentError {
    /// The prime carries no lattice data (it is not in pi1 or pi2).
    OutsideLattice { prime: u64 },
    /// A generator vector has the wrong number of entries.
    WrongArity { prime: u64, expected: u8 },
    /// The generators span a submodule of infinite index.
    ZeroModule { prime: u64 },
    /// The component needs a deeper truncation than the spec allows.
    LevelExceeded { prime: u64, required: u32, available: u32 },
    /// Rank-1 data supplied for a rank-2 prime or vice versa.
    RankMismatch { prime: u64 },
}

impl fmt::Display for ComponentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentError::OutsideLattice { prime } => {
                write!(f, "prime {prime} carries no lattice data")
            }
            ComponentError::WrongArity { prime, expected } => {
                write!(f, "generators at prime {prime} must have {expected} entries")
            }
            ComponentError::ZeroModule { prime } => {
                write!(f, "generators at prime {prime} span a module of infinite index")
            }
            ComponentError::LevelExceeded { prime, required, available } => write!(
                f,
                "component at prime {prime} needs level {required}, spec allows {available}"
            ),
            ComponentError::RankMismatch { prime } => {
                write!(f, "component rank does not match prime {prime}")
            }
        }
    }
}

impl core::error::Error for ComponentError {}

impl PrimeComponent {
    /// Rank-1 component p^exp Z_p.
    pub fn line(prime: u64, exp: u32) -> Self {
        PrimeComponent { prime, form: Form::Line { exp } }
    }

    /// Rank-2 component with generators (p^a, c), (0, p^b).  c is reduced
    /// modulo p^b, so any u64 is accepted.
    pub fn plane(prime: u64, a: u32, b: u32, c: u64) -> Self {
        let c = match prime.checked_pow(b) {
            Some(m) => c % m,
            None => c, // p^b exceeds u64, so c is already reduced
        };
        PrimeComponent { prime, form: Form::Plane { a, b, c } }
    }

    /// The full (index 1) component of the right rank for p in the spec.
    pub fn full(spec: &FieldSpec, prime: u64) -> Result<Self, ComponentError> {
        match spec.rank(prime) {
            Some(1) => Ok(Self::line(prime, 0)),
            Some(_) => Ok(Self::plane(prime, 0, 0, 0)),
            None => Err(ComponentError::OutsideLattice { prime }),
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn rank(&self) -> u8 {
        match self.form {
            Form::Line { .. } => 1,
            Form::Plane { .. } => 2,
        }
    }

    pub fn line_exp(&self) -> Option<u32> {
        match self.form {
            Form::Line { exp } => Some(exp),
            Form::Plane { .. } => None,
        }
    }

    pub fn plane_triple(&self) -> Option<(u32, u32, u64)> {
        match self.form {
            Form::Line { .. } => None,
            Form::Plane { a, b, c } => Some((a, b, c)),
        }
    }

    pub fn index_exponent(&self) -> u32 {
        match self.form {
            Form::Line { exp } => exp,
            Form::Plane { a, b, .. } => a + b,
        }
    }

    pub fn index(&self) -> u64 {
        arith::pow(self.prime, self.index_exponent())
    }

    pub fn is_full(&self) -> bool {
        self.index_exponent() == 0
    }

    /// Check rank and level against a spec.
    pub fn validate(&self, spec: &FieldSpec) -> Result<(), ComponentError> {
        let prime = self.prime;
        match spec.rank(prime) {
            None => return Err(ComponentError::OutsideLattice { prime }),
            Some(r) if r != self.rank() => return Err(ComponentError::RankMismatch { prime }),
            Some(_) => {}
        }
        let available = spec.level(prime).expect("lattice primes carry a level");
        let required = self.index_exponent();
        if required > available {
            return Err(ComponentError::LevelExceeded { prime, required, available });
        }
        Ok(())
    }

    /// Whether self contains other as a submodule (reverse containment
    /// of the corresponding field extensions).
    pub fn contains(&self, other: &PrimeComponent) -> bool {
        debug_assert_eq!(self.prime, other.prime);
        match (self.form, other.form) {
            (Form::Line { exp: e }, Form::Line { exp: f }) => e <= f,
            (Form::Plane { a, b, c }, Form::Plane { a: a2, b: b2, c: c2 }) => {
                // Both generators of other must satisfy the membership
                // congruences of self.
                if b > b2 || a > a2 {
                    return false;
                }
                let p = self.prime as i128;
                let pb = p.pow(b);
                // p^(a2-a) * c is only needed mod p^b.
                let shifted = if a2 - a >= b { 0 } else { p.pow(a2 - a) * c as i128 };
                (c2 as i128 - shifted).rem_euclid(pb) == 0
            }
            _ => {
                debug_assert!(false, "rank mismatch in containment");
                false
            }
        }
    }

    /// Sum of submodules (the smaller joint field).
    pub fn sum(&self, other: &PrimeComponent) -> PrimeComponent {
        debug_assert_eq!(self.prime, other.prime);
        let p = self.prime;
        match (self.form, other.form) {
            (Form::Line { exp: e }, Form::Line { exp: f }) => Self::line(p, e.min(f)),
            (Form::Plane { a, b, c }, Form::Plane { a: a2, b: b2, c: c2 }) => {
                let rows = [
                    (pow_i128(p, a), c as i128),
                    (0, pow_i128(p, b)),
                    (pow_i128(p, a2), c2 as i128),
                    (0, pow_i128(p, b2)),
                ];
                let (a, b, c) = plane_from_rows(p, &rows, u32::MAX)
                    .expect("sum of finite-index submodules has finite index");
                Self::plane(p, a, b, c)
            }
            _ => {
                debug_assert!(false, "rank mismatch in sum");
                *self
            }
        }
    }

    /// Intersection of submodules (the compositum of the corresponding
    /// fields).  Fails when the result needs a level beyond the spec.
    pub fn intersect(
        &self,
        other: &PrimeComponent,
        spec: &FieldSpec,
    ) -> Result<PrimeComponent, ComponentError> {
        debug_assert_eq!(self.prime, other.prime);
        let p = self.prime;
        let available = spec.level(p).ok_or(ComponentError::OutsideLattice { prime: p })?;
        match (self.form, other.form) {
            (Form::Line { exp: e }, Form::Line { exp: f }) => {
                let exp = e.max(f);
                if exp > available {
                    return Err(ComponentError::LevelExceeded {
                        prime: p,
                        required: exp,
                        available,
                    });
                }
                Ok(Self::line(p, exp))
            }
            (Form::Plane { a: a1, b: b1, c: c1 }, Form::Plane { a: a2, b: b2, c: c2 }) => {
                // The second generator exponent of the intersection is
                // forced to max(b1, b2).  The first is the least t at
                // which the membership congruences of both sides admit a
                // common solution y, which is then unique mod p^max.
                let b = b1.max(b2);
                let bmin = b1.min(b2);
                let pbmin = pow_i128(p, bmin);
                let mut a = a1.max(a2);
                loop {
                    let r1 = pow_i128(p, a - a1) * c1 as i128;
                    let r2 = pow_i128(p, a - a2) * c2 as i128;
                    if (r1 - r2).rem_euclid(pbmin) == 0 {
                        break;
                    }
                    a += 1;
                    debug_assert!(a <= (a1 + b1).max(a2 + b2));
                }
                if a + b > available {
                    return Err(ComponentError::LevelExceeded {
                        prime: p,
                        required: a + b,
                        available,
                    });
                }
                let c = if b1 >= b2 {
                    (pow_i128(p, a - a1) * c1 as i128).rem_euclid(pow_i128(p, b1))
                } else {
                    (pow_i128(p, a - a2) * c2 as i128).rem_euclid(pow_i128(p, b2))
                };
                Ok(Self::plane(p, a, b, c as u64))
            }
            _ => {
                debug_assert!(false, "rank mismatch in intersection");
                Ok(*self)
            }
        }
    }

    /// Cyclic orders of the quotient module (Smith form diagonal).
    pub fn quotient_cyclic_orders(&self) -> Vec<u64> {
        let p = self.prime;
        match self.form {
            Form::Line { exp } => {
                if exp == 0 {
                    Vec::new()
                } else {
                    [arith::pow(p, exp)].into()
                }
            }
            Form::Plane { a, b, c } => {
                let vc = if c == 0 { u32::MAX } else { arith::valuation(c, p) };
                let s = a.min(b).min(vc);
                let t = a + b - s;
                let mut out = Vec::new();
                if s > 0 {
                    out.push(arith::pow(p, s));
                }
                if t > 0 {
                    out.push(arith::pow(p, t));
                }
                out
            }
        }
    }
}

impl fmt::Display for PrimeComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.form {
            Form::Line { exp } => write!(f, "{}^{}", self.prime, exp),
            Form::Plane { a, b, c } => write!(f, "{}:({},{},{})", self.prime, a, b, c),
        }
    }
}

fn pow_i128(p: u64, e: u32) -> i128 {
    (p as i128).pow(e)
}

fn val_i128(mut n: i128, p: u64) -> u32 {
    debug_assert!(n != 0);
    let p = p as i128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Canonical (a, b, c) for the Z_p-span of the given rows, or Err with
/// the required level when the index exponent exceeds max_exp.  Returns
/// ZeroModule-style None via the outer callers when the span has
/// infinite index; here that is signalled with Ok(None)-free design:
/// callers pass rows and interpret Err(None).
fn plane_from_rows(
    p: u64,
    rows: &[(i128, i128)],
    max_exp: u32,
) -> Result<(u32, u32, u64), PlaneFailure> {
    // a: valuation of the projection to the first coordinate.
    let a = rows
        .iter()
        .filter(|r| r.0 != 0)
        .map(|r| val_i128(r.0, p))
        .min()
        .ok_or(PlaneFailure::ZeroModule)?;
    // a + b: valuation of the gcd of all 2x2 minors (the module index).
    let mut ab: Option<u32> = None;
    for (i, ri) in rows.iter().enumerate() {
        for rj in &rows[i + 1..] {
            let minor = ri.0 * rj.1 - rj.0 * ri.1;
            if minor != 0 {
                let v = val_i128(minor, p);
                ab = Some(ab.map_or(v, |cur| cur.min(v)));
            }
        }
    }
    let ab = ab.ok_or(PlaneFailure::ZeroModule)?;
    debug_assert!(ab >= a);
    let b = ab - a;
    if ab > max_exp {
        return Err(PlaneFailure::LevelExceeded { required: ab });
    }
    // c: normalise any row of minimal first-coordinate valuation.  With
    // (0, p^b) in the span, the row (p^a u, y) generates together with it
    // exactly span{(p^a, u^-1 y), (0, p^b)}.
    let c = if b == 0 {
        0
    } else {
        let pb = pow_i128(p, b);
        let row = rows
            .iter()
            .find(|r| r.0 != 0 && val_i128(r.0, p) == a)
            .expect("a row realises the minimal valuation");
        let unit = (row.0 / pow_i128(p, a)).rem_euclid(pb) as u64;
        let w = arith::mod_inverse(unit, pb as u64);
        (w as i128 * row.1.rem_euclid(pb)).rem_euclid(pb) as u64
    };
    Ok((a, b, c))
}

#[derive(Debug)]
enum PlaneFailure {
    ZeroModule,
    LevelExceeded { required: u32 },
}

/// Canonical component at p for the Z_p-span of the given generator
/// vectors (length 1 on pi1 primes, length 2 on pi2 primes).  Entries
/// are arbitrary integers; fails when the span has infinite index or
/// needs a deeper level than the spec allows.
pub fn canonical_component(
    spec: &FieldSpec,
    prime: u64,
    generators: &[Vec<i64>],
) -> Result<PrimeComponent, ComponentError> {
    let rank = spec.rank(prime).ok_or(ComponentError::OutsideLattice { prime })?;
    if generators.iter().any(|g| g.len() != rank as usize) {
        return Err(ComponentError::WrongArity { prime, expected: rank });
    }
    let available = spec.level(prime).expect("lattice primes carry a level");
    if rank == 1 {
        let exp = generators
            .iter()
            .filter(|g| g[0] != 0)
            .map(|g| val_i128(g[0] as i128, prime))
            .min()
            .ok_or(ComponentError::ZeroModule { prime })?;
        if exp > available {
            return Err(ComponentError::LevelExceeded { prime, required: exp, available });
        }
        Ok(PrimeComponent::line(prime, exp))
    } else {
        let rows: Vec<(i128, i128)> =
            generators.iter().map(|g| (g[0] as i128, g[1] as i128)).collect();
        match plane_from_rows(prime, &rows, available) {
            Ok((a, b, c)) => Ok(PrimeComponent::plane(prime, a, b, c)),
            Err(PlaneFailure::ZeroModule) => Err(ComponentError::ZeroModule { prime }),
            Err(PlaneFailure::LevelExceeded { required }) => {
                Err(ComponentError::LevelExceeded { prime, required, available })
            }
        }
    }
}
