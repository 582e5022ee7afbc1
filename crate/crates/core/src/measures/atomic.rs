use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{format_rational, IntervalScalar, Rational};

/// Default cap on merged support sizes and sign-vector enumeration.
pub const DEFAULT_SUPPORT_CAP: usize = 1 << 26;

/// Finitely many rational atoms with exact positive weights summing to 1,
/// positions strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicMeasure {
    atoms: Vec<Rational>,
    weights: Vec<Rational>,
}

#[derive(Serialize)]
struct AtomRepr {
    position: String,
    weight: String,
}

impl Serialize for AtomicMeasure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<AtomRepr> = self
            .iter()
            .map(|(x, w)| AtomRepr {
                position: format_rational(x),
                weight: format_rational(w),
            })
            .collect();
        v.serialize(s)
    }
}

impl AtomicMeasure {
    /// Builds a measure, merging repeated positions. Weights must be
    /// positive and sum to exactly 1.
    pub fn new(pairs: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (x, w) in pairs {
            if !w.is_positive() {
                return Err(Error::OutOfRange(format!("atom weight {w} is not positive")));
            }
            *map.entry(x).or_insert_with(Rational::zero) += w;
        }
        let total: Rational = map.values().sum();
        if !total.is_one() {
            return Err(Error::PreconditionUnmet(format!("weights sum to {total}, not 1")));
        }
        let (atoms, weights) = map.into_iter().unzip();
        Ok(AtomicMeasure { atoms, weights })
    }

    /// Like [`AtomicMeasure::new`] but rescales the weights to total mass 1.
    pub fn normalized(pairs: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let pairs: Vec<_> = pairs.into_iter().collect();
        let total: Rational = pairs.iter().map(|p| &p.1).sum();
        if !total.is_positive() {
            return Err(Error::OutOfRange("total mass is not positive".into()));
        }
        AtomicMeasure::new(pairs.into_iter().map(|(x, w)| (x, w / &total)))
    }

    pub fn dirac(c: Rational) -> Self {
        AtomicMeasure {
            atoms: vec![c],
            weights: vec![Rational::one()],
        }
    }

    /// Equal weights on the given (distinct) points.
    pub fn uniform(points: &[Rational]) -> Result<Self> {
        let w = Rational::new(BigInt::one(), BigInt::from(points.len()));
        AtomicMeasure::new(points.iter().map(|x| (x.clone(), w.clone())))
    }

    pub fn atoms(&self) -> &[Rational] {
        &self.atoms
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.atoms.iter().zip(&self.weights)
    }

    pub fn min_atom(&self) -> &Rational {
        &self.atoms[0]
    }

    pub fn max_atom(&self) -> &Rational {
        self.atoms.last().unwrap()
    }

    /// Least common denominator of the weights.
    pub fn common_denominator(&self) -> BigInt {
        self.weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()))
    }

    pub fn translate(&self, c: &Rational) -> Self {
        AtomicMeasure {
            atoms: self.atoms.iter().map(|x| x + c).collect(),
            weights: self.weights.clone(),
        }
    }

    /// Pushforward under `x -> s x`.
    pub fn rescale(&self, s: &Rational) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::OutOfRange("rescaling by 0".into()));
        }
        let mut pairs: Vec<(Rational, Rational)> = self
            .iter()
            .map(|(x, w)| (x * s, w.clone()))
            .collect();
        if s.is_negative() {
            pairs.reverse();
        }
        let (atoms, weights) = pairs.into_iter().unzip();
        Ok(AtomicMeasure { atoms, weights })
    }

    pub fn convolve(&self, other: &AtomicMeasure) -> Result<Self> {
        self.convolve_capped(other, DEFAULT_SUPPORT_CAP)
    }

    pub fn convolve_capped(&self, other: &AtomicMeasure, cap: usize) -> Result<Self> {
        if self.len().saturating_mul(other.len()) > cap {
            return Err(Error::cap(
                format!("convolution of {} by {} atoms", self.len(), other.len()),
                cap as u64,
            ));
        }
        let mut map: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (x, w) in self.iter() {
            for (y, v) in other.iter() {
                *map.entry(x + y).or_insert_with(Rational::zero) += w * v;
            }
        }
        let (atoms, weights) = map.into_iter().unzip();
        Ok(AtomicMeasure { atoms, weights })
    }
}

pub fn convolve(mu: &AtomicMeasure, nu: &AtomicMeasure) -> Result<AtomicMeasure> {
    mu.convolve(nu)
}

pub fn rescale(mu: &AtomicMeasure, s: &Rational) -> Result<AtomicMeasure> {
    mu.rescale(s)
}

fn check_parameter(lambda: &Rational, n: usize) -> Result<()> {
    if !lambda.is_positive() || lambda >= &Rational::one() {
        return Err(Error::OutOfRange(format!("parameter {lambda} not in (0,1)")));
    }
    if n == 0 {
        return Err(Error::OutOfRange("level n must be at least 1".into()));
    }
    Ok(())
}

/// Law of `Σ_{j<n} ξ_j λ^j` for rational `λ = p/q`, built one digit at a
/// time on integer keys `Σ ξ_j p^j q^(n-1-j)`.
pub fn bernoulli_level(lambda: &Rational, n: usize) -> Result<AtomicMeasure> {
    bernoulli_level_capped(lambda, n, DEFAULT_SUPPORT_CAP)
}

pub fn bernoulli_level_capped(lambda: &Rational, n: usize, cap: usize) -> Result<AtomicMeasure> {
    check_parameter(lambda, n)?;
    let (p, q) = (lambda.numer(), lambda.denom());
    let mut counts: HashMap<BigInt, u64> = HashMap::from([(BigInt::zero(), 1u64)]);
    let mut pj = BigInt::one();
    for j in 0..n {
        let step = &pj * q.pow((n - 1 - j) as u32);
        let mut next: HashMap<BigInt, u64> = HashMap::with_capacity(counts.len() * 2);
        for (k, c) in &counts {
            *next.entry(k + &step).or_insert(0) += c;
            *next.entry(k - &step).or_insert(0) += c;
        }
        if next.len() > cap {
            return Err(Error::cap(format!("level {n} support"), cap as u64));
        }
        counts = next;
        pj *= p;
    }
    let den = q.pow((n - 1) as u32);
    let total = BigInt::one() << n;
    let mut pairs: Vec<(BigInt, u64)> = counts.into_iter().collect();
    pairs.sort();
    let (atoms, weights) = pairs
        .into_iter()
        .map(|(k, c)| (Rational::new(k, den.clone()), Rational::new(BigInt::from(c), total.clone())))
        .unzip();
    Ok(AtomicMeasure { atoms, weights })
}

/// Atoms given by certified disjoint enclosures, sorted, with exact weights.
#[derive(Clone, Debug, Serialize)]
pub struct IntervalMeasure {
    pub positions: Vec<IntervalScalar>,
    pub weights: Vec<String>,
    #[serde(skip)]
    exact_weights: Vec<Rational>,
}

impl IntervalMeasure {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.exact_weights
    }
}

/// Level distribution for a parameter known only through an enclosure.
/// Every pair of sums must be certified distinct.
pub fn bernoulli_level_interval(lambda: &IntervalScalar, n: usize) -> Result<IntervalMeasure> {
    if !lambda.certainly_positive() || !lambda.certainly_lt(&IntervalScalar::one(lambda.precision())) {
        return Err(Error::OutOfRange(format!("parameter {lambda} not certified in (0,1)")));
    }
    if n == 0 || n > 26 {
        return Err(Error::cap(format!("level {n} by sign enumeration"), 26));
    }
    let prec = lambda.precision();
    let mut sums = vec![IntervalScalar::zero(prec)];
    let mut pow = IntervalScalar::one(prec);
    for _ in 0..n {
        let mut next = Vec::with_capacity(sums.len() * 2);
        for s in &sums {
            next.push(s - &pow);
            next.push(s + &pow);
        }
        sums = next;
        pow = &pow * lambda;
    }
    sums.sort_by_key(|a| a.mid());
    for w in sums.windows(2) {
        if !w[0].certainly_lt(&w[1]) {
            return Err(Error::undecidable(
                format!("two level-{n} sums overlap: {} and {}", w[0], w[1]),
                prec,
            ));
        }
    }
    let w = Rational::new(BigInt::one(), BigInt::one() << n);
    let count = sums.len();
    Ok(IntervalMeasure {
        positions: sums,
        weights: vec![format_rational(&w); count],
        exact_weights: vec![w; count],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn half_level_two() {
        let m = bernoulli_level(&q(1, 2), 2).unwrap();
        assert_eq!(m.atoms(), &[q(-3, 2), q(-1, 2), q(1, 2), q(3, 2)]);
        assert!(m.weights().iter().all(|w| *w == q(1, 4)));
    }

    #[test]
    fn half_level_ten_is_uniform() {
        let m = bernoulli_level(&q(1, 2), 10).unwrap();
        assert_eq!(m.len(), 1024);
        assert!(m.weights().iter().all(|w| *w == q(1, 1024)));
    }

    #[test]
    fn sign_convolution() {
        let u = AtomicMeasure::uniform(&[q(-1, 1), q(1, 1)]).unwrap();
        let c = u.convolve(&u).unwrap();
        assert_eq!(c.atoms(), &[q(-2, 1), q(0, 1), q(2, 1)]);
        assert_eq!(c.weights(), &[q(1, 4), q(1, 2), q(1, 4)]);
    }

    #[test]
    fn dirac_is_identity_and_levels_compose() {
        let lam = q(2, 3);
        let l1 = bernoulli_level(&lam, 1).unwrap();
        let d = AtomicMeasure::dirac(q(0, 1));
        assert_eq!(d.convolve(&l1).unwrap(), l1);
        let l2 = l1.convolve(&l1.rescale(&lam).unwrap()).unwrap();
        assert_eq!(l2, bernoulli_level(&lam, 2).unwrap());
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(AtomicMeasure::new([(q(0, 1), q(1, 2))]).is_err());
        assert!(AtomicMeasure::new([(q(0, 1), q(3, 2)), (q(1, 1), q(-1, 2))]).is_err());
        let m = AtomicMeasure::new([(q(0, 1), q(1, 2)), (q(0, 1), q(1, 2))]).unwrap();
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn negative_rescale_keeps_order() {
        let m = AtomicMeasure::uniform(&[q(0, 1), q(1, 1), q(3, 1)]).unwrap();
        let r = m.rescale(&q(-1, 2)).unwrap();
        assert_eq!(r.atoms(), &[q(-3, 2), q(-1, 2), q(0, 1)]);
        assert_eq!(m.rescale(&q(1, 1)).unwrap(), m);
    }

    #[test]
    fn interval_level_matches_rational_level() {
        let lam = IntervalScalar::from_rational(&q(3, 5), 128);
        let im = bernoulli_level_interval(&lam, 4).unwrap();
        let rm = bernoulli_level(&q(3, 5), 4).unwrap();
        assert_eq!(im.len(), rm.len());
        for (x, y) in im.positions.iter().zip(rm.atoms()) {
            assert!(x.contains_rational(y));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn level_mass_and_support(p in 1i64..50, extra in 1i64..50, n in 1usize..9) {
                let lam = q(p, p + extra);
                let m = bernoulli_level(&lam, n).unwrap();
                prop_assert!(m.weights().iter().sum::<Rational>().is_one());
                let one = Rational::one();
                let bound = (&one - lam.pow(n as i32)) / (&one - &lam);
                prop_assert!(m.atoms().iter().all(|x| x.abs() <= bound));
                prop_assert!(m.len() <= 1 << n);
            }

            #[test]
            fn convolution_commutes(a in proptest::collection::vec((-20i64..20, 1i64..5), 1..6),
                                    b in proptest::collection::vec((-20i64..20, 1i64..5), 1..6)) {
                let mk = |v: &Vec<(i64, i64)>| AtomicMeasure::normalized(v.iter().map(|&(x, w)| (q(x, 4), q(w, 1)))).unwrap();
                let (x, y) = (mk(&a), mk(&b));
                prop_assert_eq!(x.convolve(&y).unwrap(), y.convolve(&x).unwrap());
                let z = mk(&b).translate(&q(1, 3));
                prop_assert_eq!(x.convolve(&y).unwrap().convolve(&z).unwrap(), x.convolve(&y.convolve(&z).unwrap()).unwrap());
            }
        }
    }
}
