use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{enclosure, eval_signs, exact_sum, check_parameter, working_precision, Policy};
use crate::algebra::roots::sign_at;
use crate::algebra::{gcd_pair, IntPolynomial, SignPolynomial};
use crate::error::{Error, Result};
use crate::measures::Parameter;
use crate::numerics::{serialize_rational, Dyadic, IntervalScalar, PrecisionContext, Rational, Round};

/// Largest level accepted by the collision search; the low half holds
/// `3^ceil(n/2)` partial sums.
pub const MAX_COLLISION_LEVEL: usize = 26;

const EXPANSION_CAP: u64 = 1 << 26;

/// Pairs of sign vectors sharing a bin `⌊r⁻¹ Σ ω_j λ^j + t⌋`.
///
/// Each pair `(ω, ω')` is oriented so that `(ω - ω')/2` has a positive
/// leading coefficient. `difference_polys` lists those polynomials once
/// each; all of them carry a certified `|P(λ)| ≤ r`.
#[derive(Clone, Debug, Serialize)]
pub struct CollisionSet {
    pub n: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub r: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub t: Rational,
    pub policy: Policy,
    pub pairs: Vec<(Vec<i8>, Vec<i8>)>,
    pub difference_polys: Vec<SignPolynomial>,
    /// Pairs kept under the inclusive policy without a certificate.
    pub uncertified: Vec<(Vec<i8>, Vec<i8>)>,
}

impl CollisionSet {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

pub fn collision_search(lambda: &Parameter, n: usize, r: &Rational, t: &Rational) -> Result<CollisionSet> {
    collision_search_with(lambda, n, r, t, Policy::Strict, &PrecisionContext::new(256, 4096))
}

/// Meet-in-the-middle over difference polynomials: a pair shares a bin only
/// if `|P(λ)| < r/2` for `P = (ω - ω')/2`, so the small `P` are found by
/// splitting `P(λ) = L(λ) + λ^h U(λ)`, sorting the `3^h` low values and
/// scanning a window for each high value. Each surviving `P` is expanded
/// into its sign-vector pairs and their bins are compared.
pub fn collision_search_with(
    lambda: &Parameter,
    n: usize,
    r: &Rational,
    t: &Rational,
    policy: Policy,
    ctx: &PrecisionContext,
) -> Result<CollisionSet> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("level {n} must be at least 2")));
    }
    if n > MAX_COLLISION_LEVEL {
        return Err(Error::cap(format!("collision search at level {n}"), MAX_COLLISION_LEVEL as u64));
    }
    if !r.is_positive() {
        return Err(Error::NonPositiveArgument(format!("scale {r}")));
    }
    check_parameter(lambda)?;
    let prec = working_precision(r, ctx);
    let x = enclosure(lambda, prec)?;
    let candidates = small_differences(&x, n, r);
    let expansions: u64 = candidates
        .iter()
        .map(|p| 1u64 << p.iter().filter(|c| **c == 0).count())
        .sum();
    if expansions > EXPANSION_CAP {
        return Err(Error::cap("collision pair expansion", EXPANSION_CAP));
    }

    let mut binner = Binner::new(lambda, r, t, policy, ctx, prec);
    let mut pairs = Vec::new();
    let mut uncertified = Vec::new();
    let mut polys = BTreeSet::new();
    for p in &candidates {
        let zero = vanishes(lambda, p)?;
        let mut small: Option<bool> = None;
        let free: Vec<usize> = (0..n).filter(|&j| p[j] == 0).collect();
        for mask in 0u64..(1u64 << free.len()) {
            let mut w = p.clone();
            let mut w2: Vec<i8> = p.iter().map(|c| -c).collect();
            for (k, &j) in free.iter().enumerate() {
                let s = if mask >> k & 1 == 1 { 1 } else { -1 };
                w[j] = s;
                w2[j] = s;
            }
            let same = if zero {
                Some(true)
            } else {
                match (binner.bin(&w)?, binner.bin(&w2)?) {
                    (Some(a), Some(b)) => Some(a == b),
                    _ => None,
                }
            };
            if same == Some(false) {
                continue;
            }
            let certified = same == Some(true)
                && match small {
                    Some(s) => s,
                    None => {
                        let s = binner.certify_small(p, zero)?;
                        small = Some(s);
                        s
                    }
                };
            if certified {
                polys.insert(SignPolynomial::new(p.clone(), n - 1)?);
                pairs.push((w, w2));
            } else {
                uncertified.push((w, w2));
            }
        }
    }
    pairs.sort();
    uncertified.sort();
    Ok(CollisionSet {
        n,
        r: r.clone(),
        t: t.clone(),
        policy,
        pairs,
        difference_polys: polys.into_iter().collect(),
        uncertified,
    })
}

/// All pairs sharing a bin, by comparing the bins of every pair of the
/// `2^n` sign vectors. Oriented and sorted like [`CollisionSet::pairs`].
pub fn brute_force_pairs(lambda: &Parameter, n: usize, r: &Rational, t: &Rational) -> Result<Vec<(Vec<i8>, Vec<i8>)>> {
    if n > 16 {
        return Err(Error::cap(format!("brute-force pairs at level {n}"), 16));
    }
    check_parameter(lambda)?;
    let ctx = PrecisionContext::new(256, 4096);
    let prec = working_precision(r, &ctx);
    let mut binner = Binner::new(lambda, r, t, Policy::Strict, &ctx, prec);
    let vectors: Vec<Vec<i8>> = (0..1usize << n)
        .map(|m| (0..n).map(|j| if m >> j & 1 == 1 { 1 } else { -1 }).collect())
        .collect();
    let bins = vectors
        .iter()
        .map(|w| binner.bin(w).map(|b| b.expect("strict policy always decides")))
        .collect::<Result<Vec<BigInt>>>()?;
    let mut out = Vec::new();
    for i in 0..vectors.len() {
        for j in 0..vectors.len() {
            if i < j && bins[i] == bins[j] {
                let (a, b) = (&vectors[i], &vectors[j]);
                let top = (0..n).rev().find(|&k| a[k] != b[k]).unwrap();
                if a[top] > 0 {
                    out.push((a.clone(), b.clone()));
                } else {
                    out.push((b.clone(), a.clone()));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Base-3 digits of `i`, shifted to `{-1, 0, 1}`.
fn digits(mut i: usize, len: usize) -> Vec<i8> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((i % 3) as i8 - 1);
        i /= 3;
    }
    out
}

fn dot(c: &[i8], pows: &[IntervalScalar], prec: u32) -> IntervalScalar {
    let mut acc = IntervalScalar::zero(prec);
    for (&d, p) in c.iter().zip(pows) {
        match d {
            1 => acc = &acc + p,
            -1 => acc = &acc - p,
            _ => {}
        }
    }
    acc
}

/// Non-zero `P` with non-negative leading coefficient whose value at `x`
/// is not certainly at least `r/2` in modulus.
fn small_differences(x: &IntervalScalar, n: usize, r: &Rational) -> Vec<Vec<i8>> {
    let prec = x.precision();
    let h = n.div_ceil(2);
    let mut pows = vec![IntervalScalar::one(prec)];
    for j in 1..n {
        pows.push(&pows[j - 1] * x);
    }
    let half = Dyadic::from_rational(&(r / Rational::from_integer(BigInt::from(2))), prec, Round::Up);
    let lows: Vec<IntervalScalar> = (0..3usize.pow(h as u32))
        .into_par_iter()
        .map(|i| dot(&digits(i, h), &pows[..h], prec))
        .collect();
    let mut order: Vec<usize> = (0..lows.len()).collect();
    order.sort_by(|&a, &b| lows[a].mid().cmp(&lows[b].mid()));
    let mids: Vec<Dyadic> = order.iter().map(|&i| lows[i].mid()).collect();
    let wmax = lows.iter().map(|v| v.width()).max().unwrap_or_else(Dyadic::zero);
    let mut out: Vec<Vec<i8>> = (0..3usize.pow((n - h) as u32))
        .into_par_iter()
        .flat_map_iter(|j| {
            let hd = digits(j, n - h);
            let y = dot(&hd, &pows[h..], prec);
            let slack = &(&half + &wmax) + &y.width();
            let target = -y.mid();
            let lo = &target - &slack;
            let hi = &target + &slack;
            let start = mids.partition_point(|m| m < &lo);
            let end = mids.partition_point(|m| m <= &hi);
            let mut found = Vec::new();
            for &i in &order[start..end] {
                let v = &lows[i] + &y;
                if v.mig() >= half {
                    continue;
                }
                let mut c = digits(i, h);
                c.extend_from_slice(&hd);
                if c.iter().rev().find(|d| **d != 0).is_some_and(|d| *d > 0) {
                    found.push(c);
                }
            }
            found
        })
        .collect();
    out.sort();
    out
}

/// Whether `P(λ) = 0` is known exactly.
fn vanishes(lambda: &Parameter, p: &[i8]) -> Result<bool> {
    match lambda {
        Parameter::Rational(q) => Ok(exact_sum(&Parameter::Rational(q.clone()), p).is_some_and(|v| v.is_zero())),
        Parameter::Algebraic(a) => {
            if let Some(q) = a.as_rational() {
                return Ok(exact_sum(&Parameter::Rational(q), p).is_some_and(|v| v.is_zero()));
            }
            let poly = IntPolynomial::from_i64s(&p.iter().map(|&c| c as i64).collect::<Vec<_>>());
            if a.defining().divides(&poly) {
                return Ok(true);
            }
            if gcd_pair(&poly, a.defining()).is_constant() {
                return Ok(false);
            }
            Ok(sign_at(&poly, a)? == 0)
        }
        Parameter::Interval(_) => Ok(false),
    }
}

struct Binner<'a> {
    lambda: &'a Parameter,
    r: &'a Rational,
    rinv: Rational,
    t: &'a Rational,
    policy: Policy,
    ctx: PrecisionContext,
    prec: u32,
    enclosures: HashMap<u32, IntervalScalar>,
    memo: HashMap<Vec<i8>, Option<BigInt>>,
}

impl<'a> Binner<'a> {
    fn new(lambda: &'a Parameter, r: &'a Rational, t: &'a Rational, policy: Policy, ctx: &PrecisionContext, prec: u32) -> Self {
        Binner {
            lambda,
            r,
            rinv: r.recip(),
            t,
            policy,
            ctx: *ctx,
            prec,
            enclosures: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    fn lambda_at(&mut self, prec: u32) -> Result<IntervalScalar> {
        if let Some(x) = self.enclosures.get(&prec) {
            return Ok(x.clone());
        }
        let x = enclosure(self.lambda, prec)?;
        self.enclosures.insert(prec, x.clone());
        Ok(x)
    }

    fn undecided<T>(&self, what: &str, prec: u32) -> Result<Option<T>> {
        match self.policy {
            Policy::Strict => Err(Error::undecidable(what, prec)),
            Policy::Inclusive => Ok(None),
        }
    }

    fn escalate(&self, prec: u32) -> Option<u32> {
        let fixed = matches!(self.lambda, Parameter::Interval(_));
        (!fixed && prec < self.ctx.cap).then(|| (prec * 2).min(self.ctx.cap))
    }

    fn bin(&mut self, w: &[i8]) -> Result<Option<BigInt>> {
        if let Some(b) = self.memo.get(w) {
            return Ok(b.clone());
        }
        let b = self.compute_bin(w)?;
        self.memo.insert(w.to_vec(), b.clone());
        Ok(b)
    }

    fn compute_bin(&mut self, w: &[i8]) -> Result<Option<BigInt>> {
        if let Some(s) = exact_sum(self.lambda, w) {
            return Ok(Some((s * &self.rinv + self.t).floor().to_integer()));
        }
        let mut prec = self.prec;
        loop {
            let x = self.lambda_at(prec)?;
            let p = x.precision();
            let v = &eval_signs(w, &x).mul_rational(&self.rinv) + &IntervalScalar::from_rational(self.t, p);
            if let Some(f) = v.floor() {
                return Ok(Some(f));
            }
            match self.escalate(prec) {
                Some(next) => prec = next,
                None => return self.undecided("bin of a sign vector straddles an edge", p),
            }
        }
    }

    /// Certifies `|P(λ)| ≤ r`; `false` only under the inclusive policy.
    fn certify_small(&mut self, p: &[i8], zero: bool) -> Result<bool> {
        if zero {
            return Ok(true);
        }
        if let Some(v) = exact_sum(self.lambda, p) {
            return Ok(&v.abs() <= self.r);
        }
        let mut prec = self.prec;
        loop {
            let x = self.lambda_at(prec)?;
            let v = eval_signs(p, &x).abs();
            if v.rational_hi() <= *self.r {
                return Ok(true);
            }
            if v.rational_lo() > *self.r {
                return Ok(false);
            }
            match self.escalate(prec) {
                Some(next) => prec = next,
                None => return Ok(self.undecided::<()>("|P(λ)| <= r", x.precision())?.is_some()),
            }
        }
    }
}
