use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{ComplexInterval, Dyadic, IntervalScalar, Rational};

/// Integer polynomial, constant term first. The zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPolynomial::from_i64s(&[1])
    }

    /// `x`.
    pub fn x() -> Self {
        IntPolynomial::from_i64s(&[0, 1])
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        IntPolynomial::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        IntPolynomial::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs: c }
    }

    /// Largest `k` with `x^k` dividing `self` (0 for the zero polynomial).
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `self / x^k` where `k` is the x-valuation.
    pub fn strip_x(&self) -> Self {
        let k = self.x_valuation();
        IntPolynomial::new(self.coeffs[k..].to_vec())
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn to_rat(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    /// Exact value at a dyadic point.
    pub fn eval_dyadic(&self, x: &Dyadic) -> Dyadic {
        self.coeffs.iter().rev().fold(Dyadic::zero(), |acc, c| {
            &(&acc * x) + &Dyadic::from_bigint(c.clone())
        })
    }

    /// Horner evaluation with outward rounding.
    pub fn eval_interval(&self, x: &IntervalScalar) -> IntervalScalar {
        let prec = x.precision();
        let mut acc = IntervalScalar::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &IntervalScalar::from_bigint(c, prec);
        }
        acc
    }

    pub fn eval_complex(&self, z: &ComplexInterval) -> ComplexInterval {
        let prec = z.precision();
        let mut acc = ComplexInterval::real(IntervalScalar::zero(prec));
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + &ComplexInterval::real(IntervalScalar::from_bigint(c, prec));
        }
        acc
    }

    /// Exact quotient when `divisor` divides `self` in `Z[x]`.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return None;
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        rem.iter()
            .all(|c| c.is_zero())
            .then(|| IntPolynomial::new(quot))
    }

    pub fn divides(&self, other: &IntPolynomial) -> bool {
        other.div_exact(self).is_some()
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) a mod b`.
    pub fn pseudo_rem(&self, b: &IntPolynomial) -> IntPolynomial {
        assert!(!b.is_zero());
        let db = b.degree().unwrap();
        let lb = b.leading().unwrap();
        let mut r = self.coeffs.clone();
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1 - db;
            let lr = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c *= lb;
            }
            for (j, c) in b.coeffs.iter().enumerate() {
                r[k + j] -= &lr * c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        IntPolynomial::new(r)
    }

    /// Fujiwara-type bound: every complex root has modulus below this.
    pub fn root_bound(&self) -> f64 {
        let d = self.degree().unwrap_or(0);
        if d == 0 {
            return 1.0;
        }
        let lead = self.coeffs[d].to_f64().unwrap().abs();
        let mut best: f64 = 0.0;
        for i in 0..d {
            let c = self.coeffs[i].to_f64().unwrap().abs() / lead;
            if c > 0.0 {
                let e = (d - i) as f64;
                let term = if i == 0 { (c / 2.0).powf(1.0 / e) } else { c.powf(1.0 / e) };
                best = best.max(term);
            }
        }
        2.0 * best
    }

    /// `a_d x^d + ...` as a vector of doubles.
    pub fn to_f64s(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Text form: comma-separated integers, constant term first.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPolynomial::new(coeffs))
    }

    /// Coefficients all in {-1, 0, 1}.
    pub fn is_sign_polynomial(&self) -> bool {
        self.coeffs.iter().all(|c| c.abs() <= BigInt::one())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial[{}]", self.to_text())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        IntPolynomial::parse(&s).map_err(serde::de::Error::custom)
    }
}

fn zip_with(a: &[BigInt], b: &[BigInt], f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Vec<BigInt> {
    let z = BigInt::zero();
    (0..a.len().max(b.len()))
        .map(|i| f(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect()
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::new(zip_with(&self.coeffs, &rhs.coeffs, |a, b| a + b))
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::new(zip_with(&self.coeffs, &rhs.coeffs, |a, b| a - b))
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::new(c)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Polynomial with rational coefficients, constant term first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPolynomial {
    coeffs: Vec<Rational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        RatPolynomial::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RatPolynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&(Rational::one() / l)),
        }
    }

    /// Euclidean division over Q.
    pub fn div_rem(&self, b: &RatPolynomial) -> (RatPolynomial, RatPolynomial) {
        assert!(!b.is_zero(), "division by the zero polynomial");
        let db = b.degree().unwrap();
        let lb = b.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return (RatPolynomial::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let t = &r[k + db] / &lb;
            if t.is_zero() {
                continue;
            }
            for (j, c) in b.coeffs.iter().enumerate() {
                r[k + j] -= &t * c;
            }
            q[k] = t;
        }
        r.truncate(db);
        (RatPolynomial::new(q), RatPolynomial::new(r))
    }

    /// Maximum absolute value over numerators and denominators.
    pub fn naive_height(&self) -> BigInt {
        self.coeffs
            .iter()
            .flat_map(|c| [c.numer().abs(), c.denom().abs()])
            .max()
            .unwrap_or_default()
    }

    /// Clears denominators: `(integer polynomial, common denominator)`.
    pub fn to_int_scaled(&self) -> (IntPolynomial, BigInt) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        (IntPolynomial::new(ints), den)
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(crate::numerics::format_rational)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Debug for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPolynomial[{}]", self.to_text())
    }
}

impl Serialize for RatPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

fn zip_rat(a: &[Rational], b: &[Rational], f: impl Fn(&Rational, &Rational) -> Rational) -> Vec<Rational> {
    let z = Rational::zero();
    (0..a.len().max(b.len()))
        .map(|i| f(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect()
}

impl Add for &RatPolynomial {
    type Output = RatPolynomial;
    fn add(self, rhs: &RatPolynomial) -> RatPolynomial {
        RatPolynomial::new(zip_rat(&self.coeffs, &rhs.coeffs, |a, b| a + b))
    }
}

impl Sub for &RatPolynomial {
    type Output = RatPolynomial;
    fn sub(self, rhs: &RatPolynomial) -> RatPolynomial {
        RatPolynomial::new(zip_rat(&self.coeffs, &rhs.coeffs, |a, b| a - b))
    }
}

impl Mul for &RatPolynomial {
    type Output = RatPolynomial;
    fn mul(self, rhs: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        RatPolynomial::new(c)
    }
}

/// A polynomial with coefficients in {-1, 0, 1} and a degree bound.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SignPolynomial {
    coeffs: Vec<i8>,
    bound: usize,
}

impl SignPolynomial {
    /// `coeffs` has length `bound + 1` or less; missing entries are zero.
    pub fn new(coeffs: Vec<i8>, bound: usize) -> Result<Self> {
        if coeffs.iter().any(|&c| !(-1..=1).contains(&c)) {
            return Err(Error::OutOfRange(format!("coefficients {coeffs:?} not in {{-1,0,1}}")));
        }
        let mut coeffs = coeffs;
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.len() > bound + 1 {
            return Err(Error::OutOfRange(format!("degree exceeds bound {bound}")));
        }
        Ok(SignPolynomial { coeffs, bound })
    }

    pub fn from_int(p: &IntPolynomial, bound: usize) -> Result<Self> {
        let c = p
            .coeffs()
            .iter()
            .map(|c| c.to_i8().filter(|v| (-1..=1).contains(v)))
            .collect::<Option<Vec<i8>>>()
            .ok_or_else(|| Error::OutOfRange(format!("{p} is not a {{-1,0,1}} polynomial")))?;
        SignPolynomial::new(c, bound)
    }

    pub fn coeffs(&self) -> &[i8] {
        &self.coeffs
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn to_int(&self) -> IntPolynomial {
        IntPolynomial::from_i64s(&self.coeffs.iter().map(|&c| c as i64).collect::<Vec<_>>())
    }

    /// `-self` when the leading coefficient is negative.
    pub fn sign_normalized(&self) -> Self {
        if self.coeffs.last().is_some_and(|&c| c < 0) {
            SignPolynomial {
                coeffs: self.coeffs.iter().map(|c| -c).collect(),
                bound: self.bound,
            }
        } else {
            self.clone()
        }
    }

    pub fn to_text(&self) -> String {
        self.to_int().to_text()
    }
}

impl Serialize for SignPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}
