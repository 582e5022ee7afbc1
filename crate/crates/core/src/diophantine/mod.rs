//! Collision search over sign sums at scale `r`, common-root certificates
//! for sets of small `{-1,0,1}` polynomials, and the entropy/approximation
//! dichotomy built from them.

mod certificate;
mod collisions;
mod dichotomy;

pub use certificate::{common_root_certificate, common_root_certificate_with, ApproximationCertificate, SharpClaim};
pub use collisions::{
    brute_force_pairs, collision_search, collision_search_with, CollisionSet, MAX_COLLISION_LEVEL,
};
pub use dichotomy::{dichotomy, dichotomy_with, full_entropy_check, full_entropy_check_with, DichotomyReport, Outcome};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{check_unit_interval, FieldMeasure, Parameter};
use crate::numerics::{IntervalScalar, PrecisionContext, Rational};

/// How pairs whose bin membership or smallness cannot be certified at a
/// bare-interval parameter are treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Policy {
    /// Refine, then fail with `UndecidableAtPrecision`.
    #[default]
    Strict,
    /// Keep the pair and mark it uncertified.
    Inclusive,
}

/// Settings shared by the certificate and dichotomy routines.
#[derive(Clone, Debug)]
pub struct ApproxConfig {
    /// Smallest level at which the explicit bounds are asserted.
    pub floor: usize,
    /// Exponent of the sharper `r^c` claim, reported only.
    pub c: Rational,
    pub policy: Policy,
    pub ctx: PrecisionContext,
}

impl Default for ApproxConfig {
    fn default() -> Self {
        ApproxConfig {
            floor: 9,
            c: Rational::new(BigInt::one(), BigInt::from(2)),
            policy: Policy::Strict,
            ctx: PrecisionContext::new(256, 4096),
        }
    }
}

/// `n^(-k n)` as an exact rational.
pub fn level_scale(n: usize, k: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(n).pow((k * n) as u32))
}

/// Enough bits to resolve `r`, with 64 guard bits.
pub(crate) fn working_precision(r: &Rational, ctx: &PrecisionContext) -> u32 {
    let bits = r.denom().bits() as i64 - r.numer().bits() as i64 + 1;
    (bits.max(0) as u32 + 64).max(ctx.start).min(ctx.cap.max(ctx.start))
}

pub(crate) fn check_parameter(lambda: &Parameter) -> Result<()> {
    match lambda {
        Parameter::Rational(q) => {
            if q.is_positive() && q < &Rational::one() {
                Ok(())
            } else {
                Err(Error::OutOfRange(format!("parameter {q} not in (0,1)")))
            }
        }
        Parameter::Algebraic(a) => check_unit_interval(a),
        Parameter::Interval(x) => {
            if x.certainly_positive() && x.certainly_lt(&IntervalScalar::one(x.precision())) {
                Ok(())
            } else {
                Err(Error::OutOfRange(format!("parameter {x} not certified in (0,1)")))
            }
        }
    }
}

/// Enclosure of `λ` at `prec` bits. Interval parameters keep their width.
pub(crate) fn enclosure(lambda: &Parameter, prec: u32) -> Result<IntervalScalar> {
    match lambda {
        Parameter::Rational(q) => Ok(IntervalScalar::from_rational(q, prec)),
        Parameter::Algebraic(a) => Ok(a.real_enclosure(-(prec as i64))?.with_precision(prec)),
        Parameter::Interval(x) => Ok(x.clone()),
    }
}

/// `Σ ω_j λ^j` exactly, when that value is rational and known exactly.
pub(crate) fn exact_sum(lambda: &Parameter, signs: &[i8]) -> Option<Rational> {
    match lambda {
        Parameter::Rational(q) => Some(rational_sum(q, signs)),
        Parameter::Algebraic(a) => {
            if let Some(q) = a.as_rational() {
                return Some(rational_sum(&q, signs));
            }
            let key = FieldMeasure::key_of_signs(a, signs).ok()?;
            if key[1..].iter().any(|c| *c != 0) {
                return None;
            }
            let lead = a.defining().leading().cloned().unwrap_or_else(BigInt::one);
            Some(Rational::new(BigInt::from(key[0]), lead.pow(signs.len().saturating_sub(1) as u32)))
        }
        Parameter::Interval(_) => None,
    }
}

fn rational_sum(q: &Rational, signs: &[i8]) -> Rational {
    let mut acc = Rational::zero();
    for &s in signs.iter().rev() {
        acc = acc * q + Rational::from_integer(BigInt::from(s));
    }
    acc
}

/// `Σ c_j x^j` over an interval.
pub(crate) fn eval_signs(coeffs: &[i8], x: &IntervalScalar) -> IntervalScalar {
    let prec = x.precision();
    let mut acc = IntervalScalar::zero(prec);
    for &c in coeffs.iter().rev() {
        acc = &(&acc * x) + &IntervalScalar::from_int(c as i64, prec);
    }
    acc
}

#[cfg(test)]
mod tests;
