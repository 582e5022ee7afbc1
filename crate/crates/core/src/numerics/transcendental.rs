//! Base-2 logarithm and exponential on intervals.
//!
//! Both reduce the argument to a small neighbourhood and sum a power series
//! whose truncation error is bounded explicitly and added to the enclosure.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use super::dyadic::{Dyadic, Round};
use super::interval::IntervalScalar;
use crate::error::{Error, Result};

/// `atanh(s) = s + s^3/3 + s^5/5 + ...` for `|s| <= 1/2`.
fn atanh_series(s: &IntervalScalar, wp: u32) -> IntervalScalar {
    let s2 = s.square();
    let tiny = Dyadic::pow2(-(wp as i64) - 4);
    let mut power = s.clone();
    let mut sum = s.clone();
    let mut k: i64 = 1;
    loop {
        power = &power * &s2;
        sum = &sum + &power.div_int(2 * k + 1);
        k += 1;
        if power.mag() < tiny {
            break;
        }
    }
    // Tail: sum_{j >= k} |s|^(2j+1)/(2j+1) <= |power| * s^2 / (1 - s^2).
    let s2_hi = IntervalScalar::point(s2.hi().clone(), wp);
    let one = IntervalScalar::one(wp);
    let ratio = s2_hi
        .div(&(&one - &s2_hi))
        .expect("|s| <= 1/2 keeps 1 - s^2 away from 0");
    let tail = (&IntervalScalar::point(power.mag(), wp) * &ratio).hi().clone();
    let err = IntervalScalar::new(-&tail, tail, wp);
    &sum + &err
}

fn ln2_uncached(wp: u32) -> IntervalScalar {
    let third = IntervalScalar::one(wp).div_int(3);
    atanh_series(&third, wp).mul_pow2(1)
}

/// Enclosure of `ln 2` at working precision `wp`.
pub(crate) fn ln2(wp: u32) -> IntervalScalar {
    static CACHE: OnceLock<Mutex<HashMap<u32, IntervalScalar>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&wp) {
        return v.clone();
    }
    let v = ln2_uncached(wp);
    cache.lock().unwrap().insert(wp, v.clone());
    v
}

/// Enclosure of `log2(d)` for a positive dyadic point, absolute width
/// about `2^-(wp - 8)`.
fn log2_point(d: &Dyadic, wp: u32) -> IntervalScalar {
    debug_assert!(d.signum() > 0);
    let mut k = d.msb();
    let mut y = d.mul_pow2(-k);
    if y == Dyadic::one() {
        return IntervalScalar::from_int(k, wp);
    }
    // Move y into [1/sqrt2, sqrt2] so that |s| <= 0.172.
    if &y * &y > Dyadic::from_int(2) {
        y = y.mul_pow2(-1);
        k += 1;
    }
    let yi = IntervalScalar::point(y, wp);
    let one = IntervalScalar::one(wp);
    let s = (&yi - &one).div(&(&yi + &one)).expect("y + 1 > 0");
    let ln_y = atanh_series(&s, wp).mul_pow2(1);
    let frac = ln_y.div(&ln2(wp)).expect("ln 2 > 0");
    &IntervalScalar::from_int(k, wp) + &frac
}

/// Enclosure of `log2` over `x`; requires `x.lo > 0`.
pub fn log2_interval(x: &IntervalScalar) -> Result<IntervalScalar> {
    if x.lo().signum() <= 0 {
        return Err(Error::NonPositiveArgument(format!("log2 of {x}")));
    }
    let prec = x.precision();
    let extra = 64 - (x.lo().msb().unsigned_abs().max(x.hi().msb().unsigned_abs())).leading_zeros();
    let wp = prec + 16 + extra;
    let lo = log2_point(x.lo(), wp);
    let hi = if x.is_point() {
        lo.clone()
    } else {
        log2_point(x.hi(), wp)
    };
    let cut = -(prec as i64) - 2;
    Ok(IntervalScalar::new(
        lo.lo().round_to_exp(cut, Round::Down),
        hi.hi().round_to_exp(cut, Round::Up),
        prec,
    ))
}

/// Enclosure of `log2(m)` for a positive integer.
pub fn log2_int(m: &BigInt, prec: u32) -> Result<IntervalScalar> {
    log2_interval(&IntervalScalar::from_bigint(m, prec))
}

/// `e^z` for a point-ish interval with `0 <= z < 1`.
fn exp_small(z: &IntervalScalar, wp: u32) -> IntervalScalar {
    let tiny = Dyadic::pow2(-(wp as i64) - 4);
    let mut term = IntervalScalar::one(wp);
    let mut sum = IntervalScalar::one(wp);
    let mut j: i64 = 1;
    loop {
        term = (&term * z).div_int(j);
        sum = &sum + &term;
        j += 1;
        if term.mag() < tiny {
            break;
        }
    }
    // Tail after the j-1 term: <= 2 * |z|^j / j! <= 2 * |term| * |z| / j.
    let tail_iv = (&IntervalScalar::point(term.mag(), wp) * &IntervalScalar::point(z.mag(), wp))
        .div_int(j)
        .mul_pow2(1);
    let tail = tail_iv.hi().clone();
    &sum + &IntervalScalar::new(Dyadic::zero(), tail, wp)
}

fn exp2_point(d: &Dyadic, wp: u32) -> IntervalScalar {
    let k = d.floor();
    let f = d - &Dyadic::from_bigint(k.clone());
    let k: i64 = i64::try_from(k).expect("exp2 exponent within i64");
    if f.is_zero() {
        return IntervalScalar::point(Dyadic::pow2(k), wp);
    }
    let z = IntervalScalar::point(f, wp) * ln2(wp);
    exp_small(&z, wp).mul_pow2(k)
}

/// Enclosure of `2^x`.
pub fn exp2_interval(x: &IntervalScalar) -> Result<IntervalScalar> {
    let prec = x.precision();
    for e in [x.lo(), x.hi()] {
        if !e.is_zero() && e.msb() > 40 {
            return Err(Error::OutOfRange(format!("exp2 argument {x} too large")));
        }
    }
    let wp = prec + 16;
    let lo = exp2_point(x.lo(), wp);
    let hi = if x.is_point() {
        lo.clone()
    } else {
        exp2_point(x.hi(), wp)
    };
    Ok(IntervalScalar::new(
        lo.lo().round(prec, Round::Down),
        hi.hi().round(prec, Round::Up),
        prec,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;

    #[test]
    fn log2_of_powers_of_two_is_exact() {
        let four = IntervalScalar::from_int(4, 64);
        let l = log2_interval(&four).unwrap();
        assert!(l.is_point());
        assert_eq!(l.lo(), &Dyadic::from_int(2));
        let one = log2_interval(&IntervalScalar::one(64)).unwrap();
        assert!(one.is_point() && one.contains_zero());
    }

    /// Bisection oracle: y = p/2^k satisfies 2^y <= 3 iff 2^p <= 3^(2^k),
    /// decided in exact integers.
    fn log2_three_bisection(k: u32) -> (Rational, Rational) {
        let pow3 = BigInt::from(3).pow(1u32 << k);
        let (mut lo, mut hi) = (BigInt::from(1) << k, BigInt::from(2) << k);
        while &hi - &lo > BigInt::from(1) {
            let mid: BigInt = (&lo + &hi) >> 1u32;
            let two_mid = BigInt::from(1) << usize::try_from(&mid).unwrap();
            if two_mid <= pow3 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let den = BigInt::from(1) << k;
        (Rational::new(lo, den.clone()), Rational::new(hi, den))
    }

    #[test]
    fn log2_three_brackets_bisection_oracle() {
        let l = log2_interval(&IntervalScalar::from_int(3, 64)).unwrap();
        assert!(l.width_at_most(-60), "{l:?}");
        let (lo, hi) = log2_three_bisection(12);
        assert!(lo <= l.rational_lo() && l.rational_hi() <= hi);
        assert!(l.lo() < &Dyadic::from_f64(1.5849625007212) && l.hi() > &Dyadic::from_f64(1.5849625007211));
    }

    #[test]
    fn log2_of_non_positive_fails() {
        let z = IntervalScalar::from_rational_bounds(
            &Rational::from_integer((-1).into()),
            &Rational::from_integer(1.into()),
            64,
        );
        assert!(matches!(log2_interval(&z), Err(Error::NonPositiveArgument(_))));
    }

    #[test]
    fn exp2_inverts_log2() {
        let x = IntervalScalar::from_rational(&Rational::new(7.into(), 3.into()), 128);
        let back = exp2_interval(&log2_interval(&x).unwrap()).unwrap();
        assert!(back.contains_rational(&Rational::new(7.into(), 3.into())));
        assert!(back.width_at_most(-110));
        let half = exp2_interval(&IntervalScalar::from_int(-1, 64)).unwrap();
        assert_eq!(half.lo(), &Dyadic::pow2(-1));
    }

    #[test]
    fn ln2_matches_double() {
        let l = ln2(80);
        assert!((l.to_f64() - std::f64::consts::LN_2).abs() < 1e-16);
        assert!(l.width_at_most(-70));
    }
}
