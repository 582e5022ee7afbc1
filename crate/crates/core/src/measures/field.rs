use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{AlgebraicNumber, IntPolynomial};
use crate::error::{Error, Result};
use crate::measures::atomic::{AtomicMeasure, DEFAULT_SUPPORT_CAP};
use crate::numerics::{IntervalScalar, Rational};

/// Law of `Σ_{j<n} ξ_j λ^j` for a real algebraic `λ`, with values stored as
/// reduced coefficient vectors.
///
/// With `a` the leading coefficient of the defining polynomial `P` of
/// degree `d`, the value `S` is stored as the coefficients of `a^(n-1) S`
/// in the basis `1, μ, ..., μ^(d-1)` where `μ = aλ` is a root of the monic
/// integer polynomial `a^(d-1) P(y/a)`. Keys are therefore integral, and
/// two keys agree exactly when `P` divides the difference polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMeasure {
    lambda: AlgebraicNumber,
    n: usize,
    keys: Vec<Vec<i128>>,
    counts: Vec<u64>,
}

struct Reducer {
    lead: i128,
    monic: Vec<i128>,
}

fn overflow() -> Error {
    Error::cap("reduced coefficient size", 127)
}

impl Reducer {
    fn new(p: &IntPolynomial) -> Result<Self> {
        let d = p.degree().filter(|&d| d >= 1).ok_or_else(|| {
            Error::PreconditionUnmet("defining polynomial must have degree at least 1".into())
        })?;
        let a = p.coeff(d);
        let lead = a.to_i128().ok_or_else(overflow)?;
        let monic = (0..d)
            .map(|i| (p.coeff(i) * a.pow((d - 1 - i) as u32)).to_i128().ok_or_else(overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Reducer { lead, monic })
    }

    fn degree(&self) -> usize {
        self.monic.len()
    }

    /// `μ·k` reduced modulo the monic polynomial.
    fn times_mu(&self, k: &[i128]) -> Result<Vec<i128>> {
        let d = self.degree();
        let top = k[d - 1];
        let mut out = vec![0i128; d];
        for i in (1..d).rev() {
            out[i] = k[i - 1];
        }
        if top != 0 {
            for (o, q) in out.iter_mut().zip(&self.monic) {
                *o = q
                    .checked_mul(top)
                    .and_then(|t| o.checked_sub(t))
                    .ok_or_else(overflow)?;
            }
        }
        Ok(out)
    }
}

fn lead_power(lead: i128, e: usize) -> Result<i128> {
    lead.checked_pow(e as u32).ok_or_else(overflow)
}

impl FieldMeasure {
    /// Digit-at-a-time construction, merging equal keys after every digit.
    pub fn level(lambda: &AlgebraicNumber, n: usize) -> Result<Self> {
        FieldMeasure::level_capped(lambda, n, DEFAULT_SUPPORT_CAP)
    }

    pub fn level_capped(lambda: &AlgebraicNumber, n: usize, cap: usize) -> Result<Self> {
        FieldMeasure::level_sequence(lambda, n, cap, |_| Ok(()))
    }

    /// Builds levels `1..=n`, handing each to `visit` as it is completed.
    pub fn level_sequence(
        lambda: &AlgebraicNumber,
        n: usize,
        cap: usize,
        mut visit: impl FnMut(&FieldMeasure) -> Result<()>,
    ) -> Result<Self> {
        check_unit_interval(lambda)?;
        if n == 0 {
            return Err(Error::OutOfRange("level n must be at least 1".into()));
        }
        if n > 63 {
            return Err(Error::cap(format!("level {n} weights"), 63));
        }
        let red = Reducer::new(lambda.defining())?;
        let d = red.degree();
        let unit = |c: i128| {
            let mut v = vec![0i128; d];
            v[0] = c;
            v
        };
        let mut level = FieldMeasure {
            lambda: lambda.clone(),
            n: 1,
            keys: vec![unit(-1), unit(1)],
            counts: vec![1, 1],
        };
        visit(&level)?;
        for m in 2..=n {
            let shift = lead_power(red.lead, m - 1)?;
            let mut next: HashMap<Vec<i128>, u64> = HashMap::with_capacity(level.keys.len() * 2);
            for (k, &c) in level.keys.iter().zip(&level.counts) {
                let base = red.times_mu(k)?;
                for s in [-shift, shift] {
                    let mut v = base.clone();
                    v[0] = v[0].checked_add(s).ok_or_else(overflow)?;
                    *next.entry(v).or_insert(0) += c;
                }
            }
            if next.len() > cap {
                return Err(Error::cap(format!("level {m} support"), cap as u64));
            }
            let mut pairs: Vec<(Vec<i128>, u64)> = next.into_iter().collect();
            pairs.sort_unstable();
            let (keys, counts) = pairs.into_iter().unzip();
            level = FieldMeasure {
                lambda: lambda.clone(),
                n: m,
                keys,
                counts,
            };
            visit(&level)?;
        }
        Ok(level)
    }

    /// Reassembles a measure from stored keys and counts.
    pub fn from_parts(lambda: &AlgebraicNumber, n: usize, keys: Vec<Vec<i128>>, counts: Vec<u64>) -> Result<Self> {
        let d = Reducer::new(lambda.defining())?.degree();
        if keys.len() != counts.len() || keys.iter().any(|k| k.len() != d) {
            return Err(Error::MalformedCache("key and count shapes disagree".into()));
        }
        if n == 0 || n > 63 || counts.iter().sum::<u64>() != 1u64 << n || counts.contains(&0) {
            return Err(Error::MalformedCache("weights do not sum to 1".into()));
        }
        let mut pairs: Vec<(Vec<i128>, u64)> = keys.into_iter().zip(counts).collect();
        pairs.sort_unstable();
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::MalformedCache("repeated atom".into()));
        }
        let (keys, counts) = pairs.into_iter().unzip();
        Ok(FieldMeasure {
            lambda: lambda.clone(),
            n,
            keys,
            counts,
        })
    }

    pub fn lambda(&self) -> &AlgebraicNumber {
        &self.lambda
    }

    pub fn defining(&self) -> &IntPolynomial {
        self.lambda.defining()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[Vec<i128>] {
        &self.keys
    }

    /// Atom weights are `counts / 2^n`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn weight(&self, i: usize) -> Rational {
        Rational::new(BigInt::from(self.counts[i]), BigInt::one() << self.n)
    }

    /// Key of one sign vector `(ξ_0, ..., ξ_{n-1})`, computed directly.
    pub fn key_of_signs(lambda: &AlgebraicNumber, signs: &[i8]) -> Result<Vec<i128>> {
        let red = Reducer::new(lambda.defining())?;
        let n = signs.len();
        let mut acc = vec![0i128; red.degree()];
        for (j, &s) in signs.iter().enumerate().rev() {
            acc = red.times_mu(&acc)?;
            let shift = lead_power(red.lead, n - 1 - j)?;
            acc[0] = acc[0].checked_add(shift * s as i128).ok_or_else(overflow)?;
        }
        Ok(acc)
    }

    /// Index of the atom carrying `key`, if any.
    pub fn find(&self, key: &[i128]) -> Option<usize> {
        self.keys.binary_search_by(|k| k.as_slice().cmp(key)).ok()
    }

    /// The exact difference of atoms `i` and `j` when it is rational in the
    /// stored basis.
    pub fn rational_difference(&self, i: usize, j: usize) -> Option<Rational> {
        let (a, b) = (&self.keys[i], &self.keys[j]);
        if a[1..] != b[1..] {
            return None;
        }
        let lead = self.defining().leading().cloned().unwrap_or_else(BigInt::one);
        Some(Rational::new(
            BigInt::from(a[0]) - BigInt::from(b[0]),
            lead.pow((self.n - 1) as u32),
        ))
    }

    /// Real enclosures of the atoms, with `λ` refined to width `2^-prec`.
    pub fn positions(&self, prec: u32) -> Result<Vec<IntervalScalar>> {
        let lam = self.lambda.real_enclosure(-(prec as i64))?.with_precision(prec);
        let lead = self.defining().leading().cloned().unwrap_or_else(BigInt::one);
        let mu = lam.mul_rational(&Rational::from_integer(lead.clone()));
        let inv = Rational::new(BigInt::one(), lead.pow((self.n - 1) as u32));
        Ok(self
            .keys
            .iter()
            .map(|k| {
                let mut acc = IntervalScalar::zero(prec);
                for c in k.iter().rev() {
                    acc = &(&acc * &mu) + &IntervalScalar::from_bigint(&BigInt::from(*c), prec);
                }
                acc.mul_rational(&inv)
            })
            .collect())
    }

    /// The rational measure, when `λ` is rational.
    pub fn to_rational_measure(&self) -> Option<AtomicMeasure> {
        let q = self.lambda.as_rational()?;
        let lead = q.denom().clone();
        let den = lead.pow((self.n - 1) as u32);
        AtomicMeasure::new(
            self.keys
                .iter()
                .enumerate()
                .map(|(i, k)| (Rational::new(BigInt::from(k[0]), den.clone()), self.weight(i))),
        )
        .ok()
    }
}

pub(crate) fn check_unit_interval(lambda: &AlgebraicNumber) -> Result<()> {
    let mut exp = -32;
    loop {
        let x = lambda.real_enclosure(exp)?;
        let one = IntervalScalar::one(x.precision());
        if x.certainly_positive() && x.certainly_lt(&one) {
            return Ok(());
        }
        if x.certainly_negative() || one.certainly_lt(&x) || exp < -256 || x.is_point() {
            return Err(Error::OutOfRange(format!("parameter {x} not certified in (0,1)")));
        }
        if x.contains_zero() && lambda.defining().coeff(0).is_zero() {
            return Err(Error::OutOfRange("parameter is 0".into()));
        }
        exp *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::bernoulli_level;

    fn golden() -> AlgebraicNumber {
        let p = IntPolynomial::from_i64s(&[-1, 1, 1]);
        AlgebraicNumber::from_isolator(&p, &IntervalScalar::from_f64(0.6, 64).hull(&IntervalScalar::from_f64(0.7, 64))).unwrap()
    }

    fn half() -> AlgebraicNumber {
        let p = IntPolynomial::from_i64s(&[-1, 2]);
        AlgebraicNumber::from_isolator(&p, &IntervalScalar::from_f64(0.25, 64).hull(&IntervalScalar::from_f64(0.75, 64))).unwrap()
    }

    #[test]
    fn golden_level_three() {
        let m = FieldMeasure::level(&golden(), 3).unwrap();
        assert_eq!(m.len(), 7);
        let mut counts = m.counts().to_vec();
        counts.sort();
        assert_eq!(counts, vec![1, 1, 1, 1, 1, 1, 2]);
        let zero = m.find(&[0, 0]).unwrap();
        assert_eq!(m.counts()[zero], 2);
    }

    #[test]
    fn golden_level_one_is_plus_minus_one() {
        let m = FieldMeasure::level(&golden(), 1).unwrap();
        assert_eq!(m.keys(), &[vec![-1, 0], vec![1, 0]]);
    }

    #[test]
    fn rational_parameter_matches_rational_level() {
        for n in 1..8 {
            let f = FieldMeasure::level(&half(), n).unwrap();
            let r = bernoulli_level(&Rational::new(1.into(), 2.into()), n).unwrap();
            assert_eq!(f.to_rational_measure().unwrap(), r);
        }
    }

    #[test]
    fn positions_enclose_direct_sums() {
        let g = golden();
        let m = FieldMeasure::level(&g, 5).unwrap();
        let pos = m.positions(128).unwrap();
        let lam = g.real_enclosure(-128).unwrap();
        for bits in 0..32u32 {
            let signs: Vec<i8> = (0..5).map(|j| if bits >> j & 1 == 1 { 1 } else { -1 }).collect();
            let key = FieldMeasure::key_of_signs(&g, &signs).unwrap();
            let i = m.find(&key).unwrap();
            let mut direct = IntervalScalar::zero(128);
            for &s in signs.iter().rev() {
                direct = &(&direct * &lam) + &IntervalScalar::from_int(s as i64, 128);
            }
            assert!(pos[i].overlaps(&direct));
        }
    }

    #[test]
    fn merged_pairs_are_divisible_differences() {
        use rand::{Rng, SeedableRng};
        let g = golden();
        let n = 10;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut merged = 0;
        for _ in 0..4000 {
            let a: Vec<i8> = (0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
            let b: Vec<i8> = (0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
            let diff = IntPolynomial::from_i64s(&a.iter().zip(&b).map(|(x, y)| (x - y) as i64 / 2).collect::<Vec<_>>());
            let same = FieldMeasure::key_of_signs(&g, &a).unwrap() == FieldMeasure::key_of_signs(&g, &b).unwrap();
            let divides = diff.is_zero() || g.defining().divides(&diff);
            assert_eq!(same, divides);
            merged += same as usize;
        }
        assert!(merged > 0);
    }

    #[test]
    fn rejects_parameters_outside_unit_interval() {
        let p = IntPolynomial::from_i64s(&[-3, 2]);
        let a = AlgebraicNumber::from_isolator(&p, &IntervalScalar::from_f64(1.0, 64).hull(&IntervalScalar::from_f64(2.0, 64))).unwrap();
        assert!(FieldMeasure::level(&a, 2).is_err());
    }
}
