use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::{log2_int, Dyadic, IntervalScalar, Rational, MIN_PRECISION};

/// Segment lengths in the sweep: exact rationals or intervals.
pub(crate) trait Length: Clone {
    fn origin() -> Self;
    fn unit() -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, k: &BigInt) -> Self;
    fn enclose(&self, prec: u32) -> IntervalScalar;
    fn midpoint(a: &Self, b: &Self) -> Rational;
}

impl Length for Rational {
    fn origin() -> Self {
        Rational::zero()
    }
    fn unit() -> Self {
        Rational::one()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, k: &BigInt) -> Self {
        self * Rational::from_integer(k.clone())
    }
    fn enclose(&self, prec: u32) -> IntervalScalar {
        IntervalScalar::from_rational(self, prec)
    }
    fn midpoint(a: &Self, b: &Self) -> Rational {
        (a + b) / Rational::from_integer(2.into())
    }
}

impl Length for IntervalScalar {
    fn origin() -> Self {
        IntervalScalar::zero(MIN_PRECISION)
    }
    fn unit() -> Self {
        IntervalScalar::one(MIN_PRECISION)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, k: &BigInt) -> Self {
        self * &IntervalScalar::from_bigint(k, self.precision())
    }
    fn enclose(&self, _prec: u32) -> IntervalScalar {
        self.clone()
    }
    fn midpoint(a: &Self, b: &Self) -> Rational {
        (&a.mid() + &b.mid()).mul_pow2(-1).to_rational()
    }
}

/// Atoms reduced to integer masses, base bins and grouped breakpoints.
///
/// Atom `i` sits in bin `floors[i]` for `t < t_g` and moves up one bin at
/// the breakpoint `t_g` of the group containing it. Groups are sorted and
/// lie strictly inside `(0, 1)`.
pub(crate) struct SweepInput<L> {
    pub floors: Vec<BigInt>,
    pub masses: Vec<BigInt>,
    pub total: BigInt,
    pub groups: Vec<(L, Vec<usize>)>,
}

pub(crate) struct SweepOutput<L> {
    pub value: IntervalScalar,
    /// The segment with the least binned entropy (first on ties).
    pub min_segment: (L, L),
}

struct Stat<L> {
    count: i64,
    last: L,
    acc: L,
}

struct Tally<L> {
    stats: HashMap<BigInt, Stat<L>>,
    score: f64,
}

fn mlogm(m: &BigInt) -> f64 {
    let x = m.to_f64().unwrap_or(f64::MAX);
    x * x.log2()
}

impl<L: Length> Tally<L> {
    fn bump(&mut self, m: &BigInt, delta: i64, t: &L) {
        if m.is_zero() {
            return;
        }
        self.score += delta as f64 * mlogm(m);
        let s = self.stats.entry(m.clone()).or_insert_with(|| Stat {
            count: 0,
            last: t.clone(),
            acc: L::origin(),
        });
        if s.count != 0 {
            s.acc = s.acc.plus(&t.minus(&s.last).times(&BigInt::from(s.count)));
        }
        s.last = t.clone();
        s.count += delta;
    }
}

/// `log2 D - (1/D) Σ_m c_m m log2 m` for time-weighted mass counts `c_m`.
pub(crate) fn mass_entropy<'a>(
    total: &BigInt,
    terms: impl IntoIterator<Item = (&'a BigInt, IntervalScalar)>,
    span: &IntervalScalar,
    prec: u32,
) -> Result<IntervalScalar> {
    let wp = prec + 24;
    let mut sum = IntervalScalar::zero(wp);
    for (m, c) in terms {
        if m.is_one() || m.is_zero() {
            continue;
        }
        let f = &log2_int(m, wp)? * &IntervalScalar::from_bigint(m, wp);
        sum = &sum + &(&f * &c.with_precision(wp));
    }
    let head = &log2_int(total, wp)? * &span.clone().with_precision(wp);
    let v = &head - &sum.mul_rational(&Rational::new(BigInt::one(), total.clone()));
    Ok(crate::numerics::round_to(&v, prec))
}

/// Shannon entropy in bits of integer masses summing to `total`.
pub(crate) fn shannon_masses<'a>(
    total: &BigInt,
    masses: impl IntoIterator<Item = &'a BigInt>,
    prec: u32,
) -> Result<IntervalScalar> {
    let mut counts: BTreeMap<&BigInt, u64> = BTreeMap::new();
    for m in masses {
        *counts.entry(m).or_insert(0) += 1;
    }
    let terms: Vec<(&BigInt, IntervalScalar)> = counts
        .into_iter()
        .map(|(m, c)| (m, IntervalScalar::from_int(c as i64, prec)))
        .collect();
    mass_entropy(total, terms, &IntervalScalar::one(prec), prec)
}

/// Integrates the binned Shannon entropy over `t in [0, 1)`.
pub(crate) fn run<L: Length>(inp: &SweepInput<L>, prec: u32) -> Result<SweepOutput<L>> {
    let mut bins: HashMap<BigInt, BigInt> = HashMap::new();
    for (b, m) in inp.floors.iter().zip(&inp.masses) {
        *bins.entry(b.clone()).or_insert_with(BigInt::zero) += m;
    }
    let zero = L::origin();
    let mut tally = Tally {
        stats: HashMap::new(),
        score: 0.0,
    };
    for m in bins.values() {
        tally.bump(m, 1, &zero);
    }
    let mut best = (f64::NEG_INFINITY, (zero.clone(), zero.clone()));
    let mut t_prev = zero;
    let mut touched: BTreeMap<BigInt, BigInt> = BTreeMap::new();
    for (t, members) in &inp.groups {
        if tally.score > best.0 {
            best = (tally.score, (t_prev.clone(), t.clone()));
        }
        touched.clear();
        for &i in members {
            let b = &inp.floors[i];
            let m = &inp.masses[i];
            *touched.entry(b.clone()).or_insert_with(BigInt::zero) -= m;
            *touched.entry(b + 1).or_insert_with(BigInt::zero) += m;
        }
        for (b, d) in &touched {
            if d.is_zero() {
                continue;
            }
            let cur = bins.entry(b.clone()).or_insert_with(BigInt::zero);
            tally.bump(cur, -1, t);
            *cur += d;
            tally.bump(cur, 1, t);
        }
        t_prev = t.clone();
    }
    let one = L::unit();
    if tally.score > best.0 {
        best = (tally.score, (t_prev, one.clone()));
    }
    let mut stats: Vec<(BigInt, Stat<L>)> = tally.stats.into_iter().collect();
    stats.sort_by(|a, b| a.0.cmp(&b.0));
    let terms: Vec<(&BigInt, IntervalScalar)> = stats
        .iter()
        .map(|(m, s)| {
            let acc = s.acc.plus(&one.minus(&s.last).times(&BigInt::from(s.count)));
            (m, acc.enclose(prec + 24))
        })
        .collect();
    let value = mass_entropy(&inp.total, terms, &one.enclose(prec + 24), prec)?;
    Ok(SweepOutput {
        value,
        min_segment: best.1,
    })
}

/// Reduces rational weights to integer masses over their common denominator.
pub(crate) fn integer_masses(weights: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let total = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let masses = weights
        .iter()
        .map(|w| w.numer() * (&total / w.denom()))
        .collect();
    (total, masses)
}

/// Sweep input for exact rational positions `x_i / r`.
pub(crate) fn exact_input(scaled: &[Rational], weights: &[Rational]) -> SweepInput<Rational> {
    let (total, masses) = integer_masses(weights);
    let mut floors = Vec::with_capacity(scaled.len());
    let mut groups: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
    for (i, y) in scaled.iter().enumerate() {
        let fl = y.floor();
        let fr = y - &fl;
        floors.push(fl.to_integer());
        if !fr.is_zero() {
            groups.entry(Rational::one() - fr).or_default().push(i);
        }
    }
    SweepInput {
        floors,
        masses,
        total,
        groups: groups.into_iter().collect(),
    }
}

/// One atom known through an enclosure of `x / r`, with its exact value
/// when available.
pub(crate) struct EmbeddedAtom {
    pub scaled: IntervalScalar,
    pub exact: Option<Rational>,
    pub weight: Rational,
}

/// Sweep input for enclosed positions. `same_frac(i, j)` reports whether
/// `y_i - y_j` is an integer when that can be decided exactly; overlapping
/// breakpoints without a positive answer fail with `ScaleNotRational`.
pub(crate) fn embedded_input(
    atoms: &[EmbeddedAtom],
    same_frac: impl Fn(usize, usize) -> Option<bool>,
    prec: u32,
) -> Result<SweepInput<IntervalScalar>> {
    let weights: Vec<Rational> = atoms.iter().map(|a| a.weight.clone()).collect();
    let (total, masses) = integer_masses(&weights);
    let mut floors = Vec::with_capacity(atoms.len());
    let mut bps: Vec<(IntervalScalar, usize)> = Vec::new();
    let one = IntervalScalar::one(prec);
    for (i, a) in atoms.iter().enumerate() {
        if let Some(y) = &a.exact {
            let fl = y.floor();
            let fr = y - &fl;
            floors.push(fl.to_integer());
            if !fr.is_zero() {
                bps.push((IntervalScalar::from_rational(&(Rational::one() - fr), prec), i));
            }
            continue;
        }
        let y = &a.scaled;
        let fl = y.floor().filter(|f| y.lo() > &Dyadic::from_bigint(f.clone()));
        let fl = fl.ok_or_else(|| {
            Error::ScaleNotRational(format!("cell of atom {i} undetermined: {y}"))
        })?;
        let fr = y - &IntervalScalar::from_bigint(&fl, prec);
        floors.push(fl);
        bps.push((&one - &fr, i));
    }
    bps.sort_by(|a, b| a.0.mid().cmp(&b.0.mid()).then(a.1.cmp(&b.1)));
    let mut groups: Vec<(IntervalScalar, Vec<usize>)> = Vec::new();
    for (t, i) in bps {
        if let Some((gt, members)) = groups.last_mut() {
            if gt.overlaps(&t) {
                if same_frac(members[0], i) == Some(true) {
                    *gt = gt.intersect(&t).ok_or_else(|| {
                        Error::ScaleNotRational("tied breakpoints have disjoint enclosures".into())
                    })?;
                    members.push(i);
                    continue;
                }
                return Err(Error::ScaleNotRational(format!(
                    "breakpoints of atoms {} and {i} cannot be ordered at {prec} bits",
                    members[0]
                )));
            }
        }
        groups.push((t, vec![i]));
    }
    if groups.windows(2).any(|w| !w[0].0.certainly_lt(&w[1].0)) {
        return Err(Error::ScaleNotRational(format!("breakpoints not ordered at {prec} bits")));
    }
    Ok(SweepInput {
        floors,
        masses,
        total,
        groups,
    })
}

/// Binned masses `⌊y_i + t⌋ -> mass` at one offset, for exact positions.
pub(crate) fn bins_at(scaled: &[Rational], masses: &[BigInt], t: &Rational) -> BTreeMap<BigInt, BigInt> {
    let mut bins = BTreeMap::new();
    for (y, m) in scaled.iter().zip(masses) {
        *bins.entry((y + t).floor().to_integer()).or_insert_with(BigInt::zero) += m;
    }
    bins
}
