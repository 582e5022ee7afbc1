//! Closed real intervals with dyadic endpoints and outward rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::dyadic::{Dyadic, Round};
use super::Rational;
use crate::error::{Error, Result};

/// Minimum working precision.
pub const MIN_PRECISION: u32 = 32;

/// A closed interval `[lo, hi]` certain to contain the real value it
/// represents. `prec` is the number of significant bits kept on each
/// endpoint by inexact operations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntervalScalar {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl IntervalScalar {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo:?} > {hi:?}");
        IntervalScalar {
            lo,
            hi,
            prec: prec.max(MIN_PRECISION),
        }
    }

    pub fn point(d: Dyadic, prec: u32) -> Self {
        IntervalScalar::new(d.clone(), d, prec)
    }

    pub fn zero(prec: u32) -> Self {
        IntervalScalar::point(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        IntervalScalar::point(Dyadic::one(), prec)
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        IntervalScalar::point(Dyadic::from_int(v), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        IntervalScalar::point(Dyadic::from_bigint(v.clone()), prec)
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        IntervalScalar::new(
            Dyadic::from_rational(q, prec, Round::Down),
            Dyadic::from_rational(q, prec, Round::Up),
            prec,
        )
    }

    /// Enclosure of `[lo, hi]` with rational endpoints.
    pub fn from_rational_bounds(lo: &Rational, hi: &Rational, prec: u32) -> Self {
        IntervalScalar::new(
            Dyadic::from_rational(lo, prec, Round::Down),
            Dyadic::from_rational(hi, prec, Round::Up),
            prec,
        )
    }

    /// `x ± radius` for doubles (exact endpoints, rounded outward).
    pub fn from_f64(x: f64, prec: u32) -> Self {
        IntervalScalar::point(Dyadic::from_f64(x), prec)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(mut self, prec: u32) -> Self {
        self.prec = prec.max(MIN_PRECISION);
        self
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Dyadic {
        (&self.lo + &self.hi).mul_pow2(-1)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains_interval(&self, other: &IntervalScalar) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &IntervalScalar) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Certified `self < other`.
    pub fn certainly_lt(&self, other: &IntervalScalar) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_le(&self, other: &IntervalScalar) -> bool {
        self.hi <= other.lo
    }

    pub fn certainly_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn certainly_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    /// Certified comparison, `None` when the intervals overlap.
    pub fn compare(&self, other: &IntervalScalar) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn hull(&self, other: &IntervalScalar) -> IntervalScalar {
        IntervalScalar::new(
            Dyadic::min(&self.lo, &other.lo),
            Dyadic::max(&self.hi, &other.hi),
            self.prec.max(other.prec),
        )
    }

    pub fn intersect(&self, other: &IntervalScalar) -> Option<IntervalScalar> {
        let lo = Dyadic::max(&self.lo, &other.lo);
        let hi = Dyadic::min(&self.hi, &other.hi);
        (lo <= hi).then(|| IntervalScalar::new(lo, hi, self.prec.max(other.prec)))
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> Dyadic {
        Dyadic::max(&self.lo.abs(), &self.hi.abs())
    }

    /// Smallest absolute value in the interval.
    pub fn mig(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else {
            Dyadic::min(&self.lo.abs(), &self.hi.abs())
        }
    }

    fn rounded(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        IntervalScalar::new(lo.round(prec, Round::Down), hi.round(prec, Round::Up), prec)
    }

    pub fn abs(&self) -> IntervalScalar {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            -self
        } else {
            IntervalScalar::new(Dyadic::zero(), self.mag(), self.prec)
        }
    }

    pub fn square(&self) -> IntervalScalar {
        let a = self.abs();
        IntervalScalar::rounded(&a.lo * &a.lo, &a.hi * &a.hi, self.prec)
    }

    pub fn pow(&self, k: u32) -> IntervalScalar {
        if k == 0 {
            return IntervalScalar::one(self.prec);
        }
        let mut base = self.clone();
        let mut acc: Option<IntervalScalar> = None;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc.unwrap()
    }

    pub fn mul_dyadic(&self, d: &Dyadic) -> IntervalScalar {
        let (a, b) = (&self.lo * d, &self.hi * d);
        if d.signum() >= 0 {
            IntervalScalar::rounded(a, b, self.prec)
        } else {
            IntervalScalar::rounded(b, a, self.prec)
        }
    }

    pub fn mul_pow2(&self, k: i64) -> IntervalScalar {
        IntervalScalar::new(self.lo.mul_pow2(k), self.hi.mul_pow2(k), self.prec)
    }

    pub fn mul_rational(&self, q: &Rational) -> IntervalScalar {
        self * &IntervalScalar::from_rational(q, self.prec)
    }

    pub fn recip(&self) -> Result<IntervalScalar> {
        if self.contains_zero() {
            return Err(Error::undecidable("reciprocal of an interval containing 0", self.prec));
        }
        let one = Dyadic::one();
        Ok(IntervalScalar::new(
            Dyadic::div(&one, &self.hi, self.prec, Round::Down),
            Dyadic::div(&one, &self.lo, self.prec, Round::Up),
            self.prec,
        ))
    }

    pub fn div(&self, other: &IntervalScalar) -> Result<IntervalScalar> {
        if other.contains_zero() {
            return Err(Error::undecidable("division by an interval containing 0", other.prec));
        }
        let prec = self.prec.max(other.prec);
        let cands = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let lo = cands
            .iter()
            .map(|(a, b)| Dyadic::div(a, b, prec, Round::Down))
            .min()
            .unwrap();
        let hi = cands
            .iter()
            .map(|(a, b)| Dyadic::div(a, b, prec, Round::Up))
            .max()
            .unwrap();
        Ok(IntervalScalar::new(lo, hi, prec))
    }

    pub fn div_int(&self, k: i64) -> IntervalScalar {
        let d = IntervalScalar::from_int(k, self.prec);
        self.div(&d).expect("division by a non-zero integer")
    }

    /// Square root; the negative part of the interval is clipped.
    pub fn sqrt(&self) -> Result<IntervalScalar> {
        if self.hi.signum() < 0 {
            return Err(Error::NonPositiveArgument(format!("sqrt of {self}")));
        }
        let lo = if self.lo.signum() <= 0 {
            Dyadic::zero()
        } else {
            self.lo.sqrt(self.prec, Round::Down)
        };
        Ok(IntervalScalar::new(lo, self.hi.sqrt(self.prec, Round::Up), self.prec))
    }

    /// Certified floor, when both endpoints share it.
    pub fn floor(&self) -> Option<BigInt> {
        let f = self.lo.floor();
        (f == self.hi.floor()).then_some(f)
    }

    /// Lower bound on the distance to `other` (zero when they overlap).
    pub fn separation(&self, other: &IntervalScalar) -> Dyadic {
        if self.hi < other.lo {
            &other.lo - &self.hi
        } else if other.hi < self.lo {
            &self.lo - &other.hi
        } else {
            Dyadic::zero()
        }
    }

    pub fn max(&self, other: &IntervalScalar) -> IntervalScalar {
        IntervalScalar::new(
            Dyadic::max(&self.lo, &other.lo),
            Dyadic::max(&self.hi, &other.hi),
            self.prec.max(other.prec),
        )
    }

    pub fn min(&self, other: &IntervalScalar) -> IntervalScalar {
        IntervalScalar::new(
            Dyadic::min(&self.lo, &other.lo),
            Dyadic::min(&self.hi, &other.hi),
            self.prec.max(other.prec),
        )
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    /// True when the interval lies within `[q - tol, q + tol]`.
    pub fn within(&self, q: &Rational, tol: &Rational) -> bool {
        let lo = self.lo.to_rational();
        let hi = self.hi.to_rational();
        (q - tol) <= lo && hi <= (q + tol)
    }

    pub fn width_at_most(&self, exp: i64) -> bool {
        self.width() <= Dyadic::pow2(exp)
    }


    pub fn rational_lo(&self) -> Rational {
        self.lo.to_rational()
    }

    pub fn rational_hi(&self) -> Rational {
        self.hi.to_rational()
    }


}

impl Add for &IntervalScalar {
    type Output = IntervalScalar;
    fn add(self, rhs: &IntervalScalar) -> IntervalScalar {
        let prec = self.prec.max(rhs.prec);
        IntervalScalar::rounded(&self.lo + &rhs.lo, &self.hi + &rhs.hi, prec)
    }
}

impl Sub for &IntervalScalar {
    type Output = IntervalScalar;
    fn sub(self, rhs: &IntervalScalar) -> IntervalScalar {
        let prec = self.prec.max(rhs.prec);
        IntervalScalar::rounded(&self.lo - &rhs.hi, &self.hi - &rhs.lo, prec)
    }
}

impl Mul for &IntervalScalar {
    type Output = IntervalScalar;
    fn mul(self, rhs: &IntervalScalar) -> IntervalScalar {
        let prec = self.prec.max(rhs.prec);
        let (a, b) = (self, rhs);
        let (lo, hi) = if a.lo.signum() >= 0 && b.lo.signum() >= 0 {
            (&a.lo * &b.lo, &a.hi * &b.hi)
        } else if a.hi.signum() <= 0 && b.hi.signum() <= 0 {
            (&a.hi * &b.hi, &a.lo * &b.lo)
        } else {
            let p = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
            let lo = p.iter().min().unwrap().clone();
            let hi = p.iter().max().unwrap().clone();
            (lo, hi)
        };
        IntervalScalar::rounded(lo, hi, prec)
    }
}

impl Neg for &IntervalScalar {
    type Output = IntervalScalar;
    fn neg(self) -> IntervalScalar {
        IntervalScalar::new(-&self.hi, -&self.lo, self.prec)
    }
}

impl Neg for IntervalScalar {
    type Output = IntervalScalar;
    fn neg(self) -> IntervalScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntervalScalar {
            type Output = IntervalScalar;
            fn $m(self, rhs: IntervalScalar) -> IntervalScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntervalScalar> for IntervalScalar {
            type Output = IntervalScalar;
            fn $m(self, rhs: &IntervalScalar) -> IntervalScalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for IntervalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for IntervalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:.17e}, {:.17e}] (w={:e}, p={})",
            self.lo.to_f64(),
            self.hi.to_f64(),
            self.width().to_f64(),
            self.prec
        )
    }
}

/// Lossless serialized form: `{"lo":"m*2^e","hi":"m*2^e"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRepr {
    pub lo: String,
    pub hi: String,
}

impl From<&IntervalScalar> for IntervalRepr {
    fn from(x: &IntervalScalar) -> Self {
        IntervalRepr {
            lo: x.lo.to_string(),
            hi: x.hi.to_string(),
        }
    }
}

impl IntervalRepr {
    pub fn parse(&self, prec: u32) -> Result<IntervalScalar> {
        let lo = Dyadic::parse(&self.lo)?;
        let hi = Dyadic::parse(&self.hi)?;
        if lo > hi {
            return Err(Error::Parse(format!("interval [{}, {}] out of order", self.lo, self.hi)));
        }
        Ok(IntervalScalar::new(lo, hi, prec))
    }
}

impl Serialize for IntervalScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IntervalRepr::from(self).serialize(s)
    }
}
