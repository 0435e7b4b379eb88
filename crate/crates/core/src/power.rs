//! Structure of the power quotients E*/E*^n of the multiplicative group.

use core::fmt;

use crate::arith;
use crate::field::FieldSpec;
use crate::shape::GroupShape;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PowerError {
    ZeroExponent,
}

impl fmt::Display for PowerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerError::ZeroExponent => write!(f, "power exponent must be positive"),
        }
    }
}

impl core::error::Error for PowerError {}

/// The greatest pair (d, d1) of divisors of n with d1 | d such that
///   * d is not divisible by 4 nor by any prime outside the support,
///   * d1 is odd and not divisible by any pi1 prime.
/// The pair is maximal against every other qualifying pair divisor-wise,
/// so it is unique; in closed form d keeps min(v2(n), 1) plus the full
/// pi1- and pi2-parts of n, and d1 keeps the pi2-part alone.
///
/// E*/E*^n is isomorphic to C_d x C_d1.
pub fn admissible_pair(spec: &FieldSpec, n: u64) -> Result<(u64, u64), PowerError> {
    if n == 0 {
        return Err(PowerError::ZeroExponent);
    }
    let mut d = if n % 2 == 0 { 2 } else { 1 };
    let mut d1 = 1;
    for p in spec.lattice_primes() {
        let part = arith::pow(p, arith::valuation(n, p));
        d *= part;
        if spec.pi2().contains(&p) {
            d1 *= part;
        }
    }
    Ok((d, d1))
}

/// Invariant factors of E*/E*^n.
pub fn unit_quotient_shape(spec: &FieldSpec, n: u64) -> Result<GroupShape, PowerError> {
    let (d, d1) = admissible_pair(spec, n)?;
    Ok(GroupShape::from_cyclic_orders([d, d1]))
}

/// The exponent n collapses to: E*^n = E*^m where m = power_collapse(n).
/// Idempotent, and m = n exactly when n is already admissible.
pub fn power_collapse(spec: &FieldSpec, n: u64) -> Result<u64, PowerError> {
    admissible_pair(spec, n).map(|(d, _)| d)
}

/// Why a requested (order, exponent) pair admits no finite quotient.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ShapeLawViolation {
    ZeroArgument,
    ExponentDoesNotDivideOrder,
    OrderExceedsExponentSquare,
    /// order/exponent is divisible by 2 or by a pi1 prime, which all
    /// contribute at most one cyclic factor.
    QuotientNotCoprime(u64),
    /// The exponent itself is not realisable: it does not divide the
    /// collapsed power exponent.
    ExponentNotAchievable,
}

impl fmt::Display for ShapeLawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeLawViolation::ZeroArgument => write!(f, "order and exponent must be positive"),
            ShapeLawViolation::ExponentDoesNotDivideOrder => {
                write!(f, "exponent does not divide order")
            }
            ShapeLawViolation::OrderExceedsExponentSquare => {
                write!(f, "order does not divide exponent^2")
            }
            ShapeLawViolation::QuotientNotCoprime(p) => {
                write!(f, "order/exponent is divisible by {p}")
            }
            ShapeLawViolation::ExponentNotAchievable => {
                write!(f, "no quotient of the unit group has this exponent")
            }
        }
    }
}

impl core::error::Error for ShapeLawViolation {}

/// Shape of any quotient E*/H with [E* : H] = n and exponent e.  Such a
/// quotient is forced to be C_e x C_{n/e}; the error value reports the
/// first condition (in documented order) ruling the pair out.
pub fn finite_index_shape(
    spec: &FieldSpec,
    n: u64,
    e: u64,
) -> Result<GroupShape, ShapeLawViolation> {
    if n == 0 || e == 0 {
        return Err(ShapeLawViolation::ZeroArgument);
    }
    if n % e != 0 {
        return Err(ShapeLawViolation::ExponentDoesNotDivideOrder);
    }
    let co = n / e;
    if co % 2 == 0 {
        return Err(ShapeLawViolation::QuotientNotCoprime(2));
    }
    for &p in spec.pi1() {
        if co % p == 0 {
            return Err(ShapeLawViolation::QuotientNotCoprime(p));
        }
    }
    if (e as u128 * e as u128) % n as u128 != 0 {
        return Err(ShapeLawViolation::OrderExceedsExponentSquare);
    }
    let collapsed = power_collapse(spec, n).expect("n > 0");
    if collapsed % e != 0 {
        return Err(ShapeLawViolation::ExponentNotAchievable);
    }
    Ok(GroupShape::from_cyclic_orders([e, co]))
}
