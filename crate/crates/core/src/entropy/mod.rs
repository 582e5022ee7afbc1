//! Entropy at a given scale, by a breakpoint sweep and by smoothing, and
//! the randomized property suite.

mod probe;
mod suite;
mod sweep;

pub use probe::{convolution_gain_probe, monotone_fk_probe, FkEntry, GainReport};
pub use suite::{random_measure, run_dual_oracle, run_property_suite, CorpusConfig, CHECK_IDS};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{smooth, AtomicMeasure, FieldMeasure, IntervalMeasure, StepDensity};
use crate::numerics::{
    format_rational, log2_int, round_to, IntervalScalar, PrecisionContext, Rational, DEFAULT_PRECISION,
};

pub(crate) use sweep::{bins_at, integer_masses};
use sweep::{embedded_input, exact_input, shannon_masses, EmbeddedAtom, Length};

/// Which algorithm produced an entropy value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Sweep,
    Smoothed,
}

/// An entropy enclosure in bits with the method and scales used.
#[derive(Clone, Debug, Serialize)]
pub struct EntropyValue {
    pub value: IntervalScalar,
    pub method: Method,
    pub scales: Vec<String>,
}

impl EntropyValue {
    fn new(value: IntervalScalar, method: Method, scales: &[&Rational]) -> Self {
        EntropyValue {
            value,
            method,
            scales: scales.iter().map(|r| format_rational(r)).collect(),
        }
    }
}

fn check_scale(r: &Rational) -> Result<()> {
    if !r.is_positive() {
        return Err(Error::NonPositiveArgument(format!("scale {r}")));
    }
    Ok(())
}

/// Shannon entropy in bits.
pub fn shannon(mu: &AtomicMeasure) -> IntervalScalar {
    shannon_with(mu, DEFAULT_PRECISION)
}

pub fn shannon_with(mu: &AtomicMeasure, prec: u32) -> IntervalScalar {
    let (total, masses) = integer_masses(mu.weights());
    shannon_masses(&total, &masses, prec).expect("masses are positive")
}

/// Shannon entropy of a number-field level measure.
pub fn shannon_field(mu: &FieldMeasure, prec: u32) -> IntervalScalar {
    let total = BigInt::one() << mu.n();
    let masses: Vec<BigInt> = mu.counts().iter().map(|&c| BigInt::from(c)).collect();
    shannon_masses(&total, &masses, prec).expect("masses are positive")
}

/// `H(X; r)` by sweeping the offset `t` over its breakpoints.
pub fn entropy_at_scale_sweep(mu: &AtomicMeasure, r: &Rational) -> Result<EntropyValue> {
    entropy_at_scale_sweep_with(mu, r, DEFAULT_PRECISION)
}

pub fn entropy_at_scale_sweep_with(mu: &AtomicMeasure, r: &Rational, prec: u32) -> Result<EntropyValue> {
    check_scale(r)?;
    let scaled: Vec<Rational> = mu.atoms().iter().map(|x| x / r).collect();
    let out = sweep::run(&exact_input(&scaled, mu.weights()), prec)?;
    Ok(EntropyValue::new(out.value, Method::Sweep, &[r]))
}

/// Sweep value together with the offset minimizing the binned entropy,
/// taken as the midpoint of its constant segment.
pub fn sweep_with_witness(mu: &AtomicMeasure, r: &Rational, prec: u32) -> Result<(IntervalScalar, Rational)> {
    check_scale(r)?;
    let scaled: Vec<Rational> = mu.atoms().iter().map(|x| x / r).collect();
    let out = sweep::run(&exact_input(&scaled, mu.weights()), prec)?;
    let (a, b) = &out.min_segment;
    Ok((out.value, Rational::midpoint(a, b)))
}

/// `H(X + I_r) - log2 r` with `I_r` uniform on `[0, r]`.
pub fn entropy_at_scale_smoothed(mu: &AtomicMeasure, r: &Rational) -> Result<EntropyValue> {
    entropy_at_scale_smoothed_with(mu, r, DEFAULT_PRECISION)
}

pub fn entropy_at_scale_smoothed_with(mu: &AtomicMeasure, r: &Rational, prec: u32) -> Result<EntropyValue> {
    check_scale(r)?;
    let f = smooth(mu, r)?;
    let h = differential_entropy(&f, prec + 8)?;
    let v = &h - &log2_rational(r, prec + 8)?;
    Ok(EntropyValue::new(round_to(&v, prec), Method::Smoothed, &[r]))
}

pub(crate) fn log2_rational(q: &Rational, prec: u32) -> Result<IntervalScalar> {
    Ok(&log2_int(q.numer(), prec)? - &log2_int(q.denom(), prec)?)
}

/// Differential entropy in bits of a step density, aggregated over its
/// distinct values.
pub fn differential_entropy(f: &StepDensity, prec: u32) -> Result<IntervalScalar> {
    let mut lengths: BTreeMap<&Rational, Rational> = BTreeMap::new();
    for (a, b, v) in f.pieces() {
        if v.is_positive() {
            *lengths.entry(v).or_default() += b - a;
        }
    }
    let wp = prec + 16;
    let mut sum = IntervalScalar::zero(wp);
    for (g, len) in lengths {
        if g.is_one() {
            continue;
        }
        let term = log2_rational(g, wp)?.mul_rational(&(g * len));
        sum = &sum - &term;
    }
    Ok(round_to(&sum, prec))
}

/// Which algorithm [`cond_entropy`] uses.
pub fn entropy_at_scale(mu: &AtomicMeasure, r: &Rational, method: Method) -> Result<EntropyValue> {
    match method {
        Method::Sweep => entropy_at_scale_sweep(mu, r),
        Method::Smoothed => entropy_at_scale_smoothed(mu, r),
    }
}

/// `H(X; r1 | r2) = H(X; r1) - H(X; r2)`.
pub fn cond_entropy(mu: &AtomicMeasure, r1: &Rational, r2: &Rational, method: Method) -> Result<EntropyValue> {
    let a = entropy_at_scale(mu, r1, method)?;
    let b = entropy_at_scale(mu, r2, method)?;
    Ok(EntropyValue::new(&a.value - &b.value, method, &[r1, r2]))
}

/// Sweep entropy of atoms known through enclosures, retrying at higher
/// precision while breakpoints cannot be ordered.
fn sweep_embedded(
    ctx: &PrecisionContext,
    mut atoms_at: impl FnMut(u32) -> Result<Vec<EmbeddedAtom>>,
    same_frac: impl Fn(usize, usize) -> Option<bool> + Copy,
) -> Result<(IntervalScalar, Rational)> {
    ctx.retry(|prec| {
        let atoms = atoms_at(prec)?;
        let out = sweep::run(&embedded_input(&atoms, same_frac, prec)?, DEFAULT_PRECISION)?;
        let (a, b) = &out.min_segment;
        Ok((out.value, IntervalScalar::midpoint(a, b)))
    })
}

/// `H(X; r)` for a level measure over a number field, with the witness
/// offset of least binned entropy.
pub fn entropy_at_scale_field(
    mu: &FieldMeasure,
    r: &Rational,
    ctx: &PrecisionContext,
) -> Result<(EntropyValue, Rational)> {
    check_scale(r)?;
    if let Some(m) = mu.to_rational_measure() {
        let (v, t) = sweep_with_witness(&m, r, DEFAULT_PRECISION)?;
        return Ok((EntropyValue::new(v, Method::Sweep, &[r]), t));
    }
    let lead = mu.defining().leading().cloned().unwrap_or_else(BigInt::one);
    let den = lead.pow((mu.n() - 1) as u32);
    let weights: Vec<Rational> = (0..mu.len()).map(|i| mu.weight(i)).collect();
    let exact: Vec<Option<Rational>> = mu
        .keys()
        .iter()
        .map(|k| k[1..].iter().all(|c| *c == 0).then(|| Rational::new(BigInt::from(k[0]), den.clone()) / r))
        .collect();
    let rinv = r.recip();
    let same = |i: usize, j: usize| mu.rational_difference(i, j).map(|d| (d * &rinv).is_integer());
    let (v, t) = sweep_embedded(
        ctx,
        |prec| {
            let pos = mu.positions(prec + 64)?;
            Ok(pos
                .into_iter()
                .zip(&weights)
                .zip(&exact)
                .map(|((x, w), e)| EmbeddedAtom {
                    scaled: x.mul_rational(&rinv).with_precision(prec),
                    exact: e.clone(),
                    weight: w.clone(),
                })
                .collect())
        },
        same,
    )?;
    Ok((EntropyValue::new(v, Method::Sweep, &[r]), t))
}

/// `H(X; r)` for atoms known only through enclosures.
pub fn entropy_at_scale_interval(mu: &IntervalMeasure, r: &Rational) -> Result<(EntropyValue, Rational)> {
    check_scale(r)?;
    let prec = mu.positions.first().map(|p| p.precision()).unwrap_or(DEFAULT_PRECISION);
    let rinv = r.recip();
    let atoms: Vec<EmbeddedAtom> = mu
        .positions
        .iter()
        .zip(mu.weights())
        .map(|(x, w)| EmbeddedAtom {
            scaled: x.mul_rational(&rinv),
            exact: None,
            weight: w.clone(),
        })
        .collect();
    let out = sweep::run(&embedded_input(&atoms, |_, _| None, prec)?, DEFAULT_PRECISION)?;
    let (a, b) = &out.min_segment;
    Ok((EntropyValue::new(out.value, Method::Sweep, &[r]), IntervalScalar::midpoint(a, b)))
}

/// Shannon entropy of the binned distribution `⌊X/r + t⌋`.
pub fn binned_entropy(mu: &AtomicMeasure, r: &Rational, t: &Rational, prec: u32) -> Result<IntervalScalar> {
    check_scale(r)?;
    let scaled: Vec<Rational> = mu.atoms().iter().map(|x| x / r).collect();
    let (total, masses) = integer_masses(mu.weights());
    let bins = bins_at(&scaled, &masses, t);
    shannon_masses(&total, bins.values(), prec)
}
