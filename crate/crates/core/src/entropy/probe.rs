use num_traits::{One, Signed};
use serde::Serialize;

use crate::entropy::{cond_entropy, log2_rational, Method};
use crate::error::{Error, Result};
use crate::measures::{bernoulli_level, AtomicMeasure};
use crate::numerics::{format_rational, IntervalScalar, Rational, DEFAULT_PRECISION};

/// Non-asserting report of `H(μ*ν; r1|r2) - H(μ; r1|r2)`.
#[derive(Clone, Debug, Serialize)]
pub struct GainReport {
    pub r1: String,
    pub r2: String,
    pub integer_ratio: bool,
    pub gain: IntervalScalar,
}

pub fn convolution_gain_probe(mu: &AtomicMeasure, nu: &AtomicMeasure, r1: &Rational, r2: &Rational) -> Result<GainReport> {
    if r1 >= r2 {
        return Err(Error::OutOfRange(format!("need r1 < r2, got {r1} and {r2}")));
    }
    let conv = mu.convolve(nu)?;
    let a = cond_entropy(&conv, r1, r2, Method::Sweep)?;
    let b = cond_entropy(mu, r1, r2, Method::Sweep)?;
    Ok(GainReport {
        r1: format_rational(r1),
        r2: format_rational(r2),
        integer_ratio: (r2 / r1).is_integer(),
        gain: &a.value - &b.value,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FkEntry {
    pub k: u32,
    pub value: IntervalScalar,
}

/// `f_k(λ) = (H(μ; λ^(2^k) | 1) - 2) / (2^k log2 λ^-1)` for `k = 0..=k_max`,
/// with `μ` truncated to the level-`m` distribution. A heuristic report:
/// monotonicity in `k` is expected only for the untruncated measure.
pub fn monotone_fk_probe(lambda: &Rational, m: usize, k_max: u32) -> Result<Vec<FkEntry>> {
    let mu = bernoulli_level(lambda, m)?;
    let one = Rational::one();
    let log_inv = -log2_rational(lambda, DEFAULT_PRECISION)?;
    if !log_inv.certainly_positive() || !lambda.is_positive() {
        return Err(Error::OutOfRange(format!("parameter {lambda} not in (0,1)")));
    }
    let mut out = Vec::new();
    for k in 0..=k_max {
        let e = 1i32 << k;
        let r = lambda.pow(e);
        let h = cond_entropy(&mu, &r, &one, Method::Sweep)?.value;
        let num = &h - &IntervalScalar::from_int(2, DEFAULT_PRECISION);
        let den = log_inv.mul_pow2(k as i64);
        out.push(FkEntry { k, value: num.div(&den)? });
    }
    Ok(out)
}
