//! Dyadic rationals `mantissa * 2^exponent` with directed rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Rounding direction for inexact dyadic operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// An exact dyadic rational. The representation is canonical: the mantissa
/// is odd unless the value is zero, in which case the exponent is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn ceil_shr(m: &BigInt, shift: u64) -> BigInt {
    -((-m) >> shift)
}

fn div_dir(a: &BigInt, b: &BigInt, dir: Round) -> BigInt {
    match dir {
        Round::Down => a.div_floor(b),
        Round::Up => -((-a).div_floor(b)),
    }
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Dyadic::new(v, 0)
    }

    /// `2^e` exactly.
    pub fn pow2(e: i64) -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: e,
        }
    }

    /// Exact conversion of a finite double.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite double");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Dyadic::new(BigInt::from(m) * sign, e)
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Bit length of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Position of the most significant bit: `2^(msb) <= |self| < 2^(msb+1)`.
    pub fn msb(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.exp + self.mant.bits() as i64 - 1
    }

    /// Round to at most `prec` significant bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let mant = match dir {
            Round::Down => &self.mant >> shift,
            Round::Up => ceil_shr(&self.mant, shift),
        };
        Dyadic::new(mant, self.exp + shift as i64)
    }

    /// Round so that no bits below `2^min_exp` remain.
    pub fn round_to_exp(&self, min_exp: i64, dir: Round) -> Self {
        if self.exp >= min_exp {
            return self.clone();
        }
        let shift = (min_exp - self.exp) as u64;
        let mant = match dir {
            Round::Down => &self.mant >> shift,
            Round::Up => ceil_shr(&self.mant, shift),
        };
        Dyadic::new(mant, min_exp)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Floor as an integer.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            &self.mant >> (-self.exp) as u64
        }
    }

    pub fn ceil(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            ceil_shr(&self.mant, (-self.exp) as u64)
        }
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Directed conversion of a rational to at most `prec` significant bits.
    pub fn from_rational(q: &Rational, prec: u32, dir: Round) -> Self {
        let (n, d) = (q.numer(), q.denom());
        if n.is_zero() {
            return Dyadic::zero();
        }
        if d.is_one() {
            return Dyadic::from_bigint(n.clone()).round(prec, dir);
        }
        // Exact when the denominator is a power of two.
        if d.trailing_zeros() == Some(d.bits() - 1) {
            return Dyadic::new(n.clone(), -(d.bits() as i64 - 1)).round(prec, dir);
        }
        Dyadic::div(
            &Dyadic::from_bigint(n.clone()),
            &Dyadic::from_bigint(d.clone()),
            prec,
            dir,
        )
    }

    /// Directed quotient with at least `prec` significant bits.
    pub fn div(a: &Dyadic, b: &Dyadic, prec: u32, dir: Round) -> Self {
        assert!(!b.is_zero(), "dyadic division by zero");
        if a.is_zero() {
            return Dyadic::zero();
        }
        let shift = prec as i64 + b.mant.bits() as i64 - a.mant.bits() as i64 + 2;
        let shift = shift.max(0) as u64;
        let num = &a.mant << shift;
        let q = div_dir(&num, &b.mant, dir);
        Dyadic::new(q, a.exp - b.exp - shift as i64)
    }

    /// Directed square root with `prec` significant bits; `self >= 0`.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Self {
        assert!(self.signum() >= 0, "square root of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut shift = (2 * prec as i64 + 2 - self.mant.bits() as i64).max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = &self.mant << shift as u64;
        let mut r = m.sqrt();
        if dir == Round::Up && &r * &r != m {
            r += 1;
        }
        Dyadic::new(r, (self.exp - shift) / 2)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let (m, e) = if bits > 60 {
            (&self.mant >> (bits - 60) as u64, self.exp + bits - 60)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(f64::NAN);
        if e > 2000 {
            return mf.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        let h = e / 2;
        mf * 2f64.powi(h as i32) * 2f64.powi((e - h) as i32)
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// Parses the `m*2^e` form produced by `Display`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (m, e) = match s.split_once("*2^") {
            Some((m, e)) => (m, e),
            None => (s, "0"),
        };
        let mant: BigInt = m
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad dyadic mantissa in {s:?}")))?;
        let exp: i64 = e
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad dyadic exponent in {s:?}")))?;
        Ok(Dyadic::new(mant, exp))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (~{:e})", self, self.to_f64())
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // Same sign: compare magnitudes via msb first.
        let (ma, mb) = (self.msb(), other.msb());
        if ma != mb {
            let mag = ma.cmp(&mb);
            return if sa > 0 { mag } else { mag.reverse() };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &rhs.mant << (rhs.exp - e) as u64;
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        // Product of odd mantissas is odd: already canonical.
        Dyadic {
            mant: &self.mant * &rhs.mant,
            exp: self.exp + rhs.exp,
        }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -self.mant,
            exp: self.exp,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_rounds_toward_negative_infinity() {
        let m = BigInt::from(-5);
        assert_eq!(&m >> 1u32, BigInt::from(-3));
        assert_eq!(ceil_shr(&m, 1), BigInt::from(-2));
    }

    #[test]
    fn directed_rounding_brackets() {
        let d = Dyadic::from_int(0b1011011);
        let lo = d.round(3, Round::Down);
        let hi = d.round(3, Round::Up);
        assert!(lo <= d && d <= hi);
        assert_eq!(lo, Dyadic::from_int(0b1010000));
        assert_eq!(hi, Dyadic::from_int(0b1100000));
        let n = -d.clone();
        assert!(n.round(3, Round::Down) <= n && n <= n.round(3, Round::Up));
    }

    #[test]
    fn division_brackets_one_third() {
        let third = Rational::new(1.into(), 3.into());
        let lo = Dyadic::from_rational(&third, 64, Round::Down);
        let hi = Dyadic::from_rational(&third, 64, Round::Up);
        assert!(lo.to_rational() < third && third < hi.to_rational());
        let gap = hi.to_rational() - lo.to_rational();
        assert!(gap < Rational::new(1.into(), BigInt::one() << 64u32));
    }

    #[test]
    fn sqrt_brackets_two() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt(80, Round::Down);
        let hi = two.sqrt(80, Round::Up);
        assert!((&lo * &lo) <= two && two <= (&hi * &hi));
        assert!((hi.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn f64_roundtrip_and_display() {
        for x in [0.0, 1.0, -0.375, 1e-300, 123456.789] {
            let d = Dyadic::from_f64(x);
            assert_eq!(d.to_f64(), x);
            assert_eq!(Dyadic::parse(&d.to_string()).unwrap(), d);
        }
        assert_eq!(Dyadic::from_f64(0.5).to_string(), "1*2^-1");
    }

    #[test]
    fn ordering_across_exponents() {
        let a = Dyadic::new(3.into(), -1);
        let b = Dyadic::from_int(1);
        let c = Dyadic::new((-7).into(), 10);
        assert!(c < b && b < a);
        assert_eq!(a.floor(), BigInt::from(1));
        assert_eq!(a.ceil(), BigInt::from(2));
        assert_eq!((-a).floor(), BigInt::from(-2));
    }
}
