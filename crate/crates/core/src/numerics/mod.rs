//! Exact rationals and arbitrary-precision interval arithmetic.
//!
//! Every inexact real quantity in the crate is an [`IntervalScalar`]: a pair
//! of dyadic endpoints with outward rounding, so results always contain the
//! true value. Precision is passed explicitly through [`PrecisionContext`].

mod complex;
mod dyadic;
mod interval;
mod transcendental;

pub use complex::ComplexInterval;
pub use dyadic::{Dyadic, Round};
pub use interval::{IntervalRepr, IntervalScalar, MIN_PRECISION};
pub use transcendental::{exp2_interval, log2_int, log2_interval};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::IntPolynomial;
use crate::error::{Error, Result};

/// Exact rational with reduced numerator/denominator and positive denominator.
pub type Rational = num_rational::BigRational;

pub const DEFAULT_PRECISION: u32 = 128;
pub const DEFAULT_PRECISION_CAP: u32 = 4096;

/// Starting precision and escalation cap for retried computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    pub start: u32,
    pub cap: u32,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            start: DEFAULT_PRECISION,
            cap: DEFAULT_PRECISION_CAP,
        }
    }
}

impl PrecisionContext {
    pub fn new(start: u32, cap: u32) -> Self {
        let start = start.max(MIN_PRECISION);
        PrecisionContext {
            start,
            cap: cap.max(start),
        }
    }

    /// Run `f` at the starting precision, doubling on precision-limited
    /// failures until the cap.
    pub fn retry<T>(&self, mut f: impl FnMut(u32) -> Result<T>) -> Result<T> {
        let mut prec = self.start;
        loop {
            match f(prec) {
                Err(e) if e.is_precision_limited() && prec < self.cap => {
                    prec = (prec * 2).min(self.cap);
                }
                other => return other,
            }
        }
    }
}

/// Horner evaluation of `p` over the interval `x` with outward rounding.
pub fn interval_eval_poly(p: &IntPolynomial, x: &IntervalScalar) -> IntervalScalar {
    p.eval_interval(x)
}

/// Enclosure of `-p log2 p`; exactly zero at `p = 1`.
pub fn entropy_term(p: &Rational, prec: u32) -> Result<IntervalScalar> {
    if !p.is_positive() || p > &Rational::one() {
        return Err(Error::OutOfRange(format!("probability {p} not in (0,1]")));
    }
    if p.is_one() {
        return Ok(IntervalScalar::zero(prec));
    }
    // -p log2 p = p (log2 den - log2 num), each log of an integer.
    let ln = log2_int(p.numer(), prec + 8)?;
    let ld = log2_int(p.denom(), prec + 8)?;
    let v = (&ld - &ln).mul_rational(p);
    Ok(round_to(&v, prec))
}

pub(crate) fn round_to(v: &IntervalScalar, prec: u32) -> IntervalScalar {
    IntervalScalar::new(
        v.lo().round(prec, Round::Down),
        v.hi().round(prec, Round::Up),
        prec,
    )
}

/// Parses `p/q`, an integer, or a finite decimal like `-0.125` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.trim_start().starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = BigInt::from(10).pow(fp.len() as u32);
        let q = Rational::new(n, d);
        return Ok(if neg { -q } else { q });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Nearest-ish double; tiny values may flush to zero.
pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        let shift = q.denom().bits() as i64 - q.numer().bits() as i64;
        Dyadic::from_rational(q, 64, Round::Down).to_f64() * if shift > 2000 { 0.0 } else { 1.0 }
    })
}

/// Serializes a rational in its `p/q` text form.
pub fn serialize_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

/// `p/q` text form (integers print without a denominator).
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn entropy_term_exact_cases() {
        assert!(entropy_term(&q(1, 1), 64).unwrap().is_point());
        let half = entropy_term(&q(1, 2), 64).unwrap();
        assert!(half.is_point());
        assert_eq!(half.lo(), &Dyadic::pow2(-1));
    }

    #[test]
    fn entropy_term_one_third_matches_log_oracle() {
        let t = entropy_term(&q(1, 3), 64).unwrap();
        // Oracle: (1/3) log2 3 from the log kernel directly.
        let oracle = log2_interval(&IntervalScalar::from_int(3, 96)).unwrap().div_int(3);
        assert!(t.overlaps(&oracle));
        assert!((t.to_f64() - 0.528_320_833_573_718_6).abs() < 1e-15);
    }

    #[test]
    fn entropy_term_rejects_out_of_range() {
        assert!(entropy_term(&q(0, 1), 64).is_err());
        assert!(entropy_term(&q(3, 2), 64).is_err());
        assert!(entropy_term(&q(-1, 2), 64).is_err());
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), q(-1, 8));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&q(-2, 4)), "-1/2");
    }

    #[test]
    fn precision_context_doubles_until_success() {
        let ctx = PrecisionContext::new(64, 1024);
        let mut seen = vec![];
        let r = ctx.retry(|p| {
            seen.push(p);
            if p < 256 {
                Err(Error::undecidable("test", p))
            } else {
                Ok(p)
            }
        });
        assert_eq!(r.unwrap(), 256);
        assert_eq!(seen, vec![64, 128, 256]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn binary_entropy_at_most_one(n in 1i64..1000, d in 2i64..1000) {
                prop_assume!(n < d);
                let p = q(n, d);
                let h = &entropy_term(&p, 128).unwrap() + &entropy_term(&(Rational::one() - &p), 128).unwrap();
                prop_assert!(h.lo() <= &(&Dyadic::one() + &Dyadic::pow2(-50)));
            }

            #[test]
            fn refinement_stays_within_hull(n in 1i64..10_000, d in 1i64..10_000) {
                let x = IntervalScalar::from_rational(&q(n, d), 64);
                let coarse = log2_interval(&x).unwrap();
                let fine = log2_interval(&IntervalScalar::from_rational(&q(n, d), 128)).unwrap();
                prop_assert!(fine.overlaps(&coarse));
                prop_assert!(fine.width() <= coarse.width());
            }

            #[test]
            fn rational_expression_contained(a in -500i64..500, b in 1i64..500, c in -500i64..500, d in 1i64..500) {
                let (x, y) = (q(a, b), q(c, d));
                let (ix, iy) = (IntervalScalar::from_rational(&x, 64), IntervalScalar::from_rational(&y, 64));
                let expr = &(&ix * &iy) + &(&ix - &iy).square();
                let exact = &x * &y + (&x - &y) * (&x - &y);
                prop_assert!(expr.contains_rational(&exact));
            }
        }
    }
}
