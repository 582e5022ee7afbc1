use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::certificate::{common_root_certificate_with, ApproximationCertificate};
use super::collisions::{collision_search_with, CollisionSet};
use super::{check_parameter, enclosure, level_scale, working_precision, ApproxConfig};
use crate::algebra::{enumerate_signpolys, AlgebraicNumber, SignPolynomial};
use crate::entropy::{entropy_at_scale_field, entropy_at_scale_interval, log2_rational, shannon_field, sweep_with_witness};
use crate::error::{Error, Result};
use crate::measures::{bernoulli_level_of, check_unit_interval, FieldMeasure, LevelMeasure, Parameter};
use crate::numerics::{
    exp2_interval, format_rational, serialize_rational, IntervalScalar, PrecisionContext, Rational, DEFAULT_PRECISION,
};
use crate::report::{AuditReport, CheckResult, Failure};

/// Result of [`dichotomy`]: either the entropy at scale `r` is full, or the
/// collisions at the witness offset yield a nearby algebraic number.
#[derive(Clone, Debug, Serialize)]
pub struct DichotomyReport {
    pub n: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub r: Rational,
    /// `H(μ_λ^n; r)` in bits.
    pub entropy: IntervalScalar,
    /// Offset of least binned entropy.
    #[serde(serialize_with = "serialize_rational")]
    pub t: Rational,
    pub support: usize,
    /// Encloses the least distance between distinct atoms.
    pub min_gap: Option<IntervalScalar>,
    /// `n` is at least the configured floor.
    pub guaranteed: bool,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    /// All `2^n` sums are pairwise at least `r` apart, so `H = n`.
    EntropyWitness { bits: usize },
    ApproximationCertificate {
        collisions: CollisionSet,
        certificate: Box<ApproximationCertificate>,
        /// `H / n`.
        per_step_bound: IntervalScalar,
        /// `H_n(η) / n`, when `η` is a real number in `(0, 1)`.
        eta_per_step: Option<IntervalScalar>,
        /// `H_n(η) / n` does not exceed `H / n`.
        bound_consistent: Option<bool>,
    },
}

impl DichotomyReport {
    pub fn is_witness(&self) -> bool {
        matches!(self.outcome, Outcome::EntropyWitness { .. })
    }

    pub fn certificate(&self) -> Option<&ApproximationCertificate> {
        match &self.outcome {
            Outcome::ApproximationCertificate { certificate, .. } => Some(certificate),
            Outcome::EntropyWitness { .. } => None,
        }
    }

    pub fn collisions(&self) -> Option<&CollisionSet> {
        match &self.outcome {
            Outcome::ApproximationCertificate { collisions, .. } => Some(collisions),
            Outcome::EntropyWitness { .. } => None,
        }
    }
}

pub fn dichotomy(lambda: &Parameter, n: usize, r: &Rational) -> Result<DichotomyReport> {
    dichotomy_with(lambda, n, r, &ApproxConfig::default())
}

/// Sweep entropy of the level-`n` measure with its witness offset.
fn level_entropy(lambda: &Parameter, n: usize, r: &Rational, ctx: &PrecisionContext) -> Result<(LevelMeasure, IntervalScalar, Rational)> {
    let level = bernoulli_level_of(lambda, n)?;
    let (h, t) = match &level {
        LevelMeasure::Rational(m) => ctx.retry(|p| sweep_with_witness(m, r, p.max(DEFAULT_PRECISION)))?,
        LevelMeasure::Field(m) => {
            let (v, t) = entropy_at_scale_field(m, r, ctx)?;
            (v.value, t)
        }
        LevelMeasure::Interval(m) => {
            let (v, t) = entropy_at_scale_interval(m, r)?;
            (v.value, t)
        }
    };
    Ok((level, h, t))
}

fn gap_of(mut xs: Vec<IntervalScalar>) -> Option<IntervalScalar> {
    xs.sort_by_key(|a| a.mid());
    xs.windows(2).map(|w| &w[1] - &w[0]).reduce(|a, b| a.min(&b))
}

/// `Some(true)` when every gap is certainly at least `r` and the support is
/// full, `Some(false)` when some pair of sums is certainly closer than `r`.
fn full_support(level: &LevelMeasure, n: usize, r: &Rational, ctx: &PrecisionContext) -> Result<(Option<bool>, Option<IntervalScalar>)> {
    let full = level.len() as u128 == 1u128 << n;
    let decide = |gap: &Option<IntervalScalar>| match gap {
        _ if !full => Some(false),
        None => Some(true),
        Some(g) if g.rational_lo() >= *r => Some(true),
        Some(g) if g.rational_hi() < *r => Some(false),
        Some(_) => None,
    };
    match level {
        LevelMeasure::Rational(m) => {
            let gap = m
                .atoms()
                .windows(2)
                .map(|w| &w[1] - &w[0])
                .min()
                .map(|g| IntervalScalar::from_rational(&g, DEFAULT_PRECISION));
            let exact = m.atoms().windows(2).map(|w| &w[1] - &w[0]).min();
            let verdict = match (&exact, full) {
                (_, false) => Some(false),
                (None, true) => Some(true),
                (Some(g), true) => Some(g >= r),
            };
            Ok((verdict, gap))
        }
        LevelMeasure::Field(m) => {
            let mut prec = working_precision(r, ctx);
            loop {
                let gap = gap_of(m.positions(prec)?);
                let v = decide(&gap);
                if v.is_some() || prec >= ctx.cap {
                    return Ok((v, gap));
                }
                prec = (prec * 2).min(ctx.cap);
            }
        }
        LevelMeasure::Interval(m) => {
            let gap = gap_of(m.positions.clone());
            Ok((decide(&gap), gap))
        }
    }
}

/// `H(μ_λ^n; r) = n` with an entropy witness, or an approximation
/// certificate built from the collisions at the witness offset together
/// with the per-step bound `h_η ≤ H_n(η)/n ≤ H/n`.
pub fn dichotomy_with(lambda: &Parameter, n: usize, r: &Rational, cfg: &ApproxConfig) -> Result<DichotomyReport> {
    check_parameter(lambda)?;
    if n < 2 {
        return Err(Error::OutOfRange(format!("level {n} must be at least 2")));
    }
    if !r.is_positive() || r > &level_scale(n, 3) {
        return Err(Error::PreconditionUnmet(format!(
            "r = {} exceeds n^(-3n) for n = {n}",
            format_rational(r)
        )));
    }
    let (level, entropy, t) = level_entropy(lambda, n, r, &cfg.ctx)?;
    let (full, min_gap) = full_support(&level, n, r, &cfg.ctx)?;
    let full = full.ok_or_else(|| Error::undecidable("spacing of the level sums against r", cfg.ctx.cap))?;
    let support = level.len();
    let guaranteed = n >= cfg.floor;
    let outcome = if full {
        Outcome::EntropyWitness { bits: n }
    } else {
        let collisions = collision_search_with(lambda, n, r, &t, cfg.policy, &cfg.ctx)?;
        if collisions.is_empty() {
            return Err(Error::undecidable("no certified collision at the witness offset", cfg.ctx.cap));
        }
        let certificate = common_root_certificate_with(&collisions.difference_polys, lambda, n, r, cfg)?;
        let nn = Rational::new(BigInt::one(), BigInt::from(n));
        let per_step_bound = entropy.mul_rational(&nn);
        let eta_per_step = eta_level_entropy(&certificate.eta, n).map(|h| h.mul_rational(&nn));
        let bound_consistent = eta_per_step.as_ref().map(|h| h.lo() <= per_step_bound.hi());
        Outcome::ApproximationCertificate {
            collisions,
            certificate: Box::new(certificate),
            per_step_bound,
            eta_per_step,
            bound_consistent,
        }
    };
    Ok(DichotomyReport {
        n,
        r: r.clone(),
        entropy,
        t,
        support,
        min_gap,
        guaranteed,
        outcome,
    })
}

fn eta_level_entropy(eta: &AlgebraicNumber, n: usize) -> Option<IntervalScalar> {
    if !eta.is_real() || check_unit_interval(eta).is_err() {
        return None;
    }
    let m = FieldMeasure::level(eta, n).ok()?;
    Some(shannon_field(&m, DEFAULT_PRECISION))
}

/// A member of `P_n` that `η` is a root of.
fn class_witness(eta: &AlgebraicNumber, n: usize) -> Result<Option<SignPolynomial>> {
    if let Ok(p) = SignPolynomial::from_int(&eta.defining().primitive(), n) {
        return Ok(Some(p));
    }
    if n > 12 || eta.defining().degree().unwrap_or(0) > n {
        return Ok(None);
    }
    let d = eta.defining().clone();
    let mut it = enumerate_signpolys(n, Some(Box::new(move |p: &SignPolynomial| !p.is_zero() && d.divides(&p.to_int()))), u128::MAX)?;
    Ok(it.next())
}

fn eta_distance(lambda: &Parameter, eta: &AlgebraicNumber, prec: u32) -> Result<IntervalScalar> {
    let x = enclosure(lambda, prec)?;
    match eta.is_real() {
        true => Ok((&x - &eta.real_enclosure(-(prec as i64))?.with_precision(prec)).abs()),
        false => {
            let e = eta.refine(&crate::numerics::Dyadic::pow2(-(prec as i64)))?;
            Ok((&e.enclosure() - &crate::numerics::ComplexInterval::real(x)).abs())
        }
    }
}

pub fn full_entropy_check(lambda: &Parameter, eta: &AlgebraicNumber, n: usize) -> Result<AuditReport> {
    full_entropy_check_with(lambda, eta, n, &ApproxConfig::default())
}

/// Checks `H(μ_λ^n; r) = n` at `r = |λ - η|^(1/c)` (rounded down) for a
/// parameter `λ` within `n^(-4n)` of a root `η` of some member of `P_n`.
pub fn full_entropy_check_with(lambda: &Parameter, eta: &AlgebraicNumber, n: usize, cfg: &ApproxConfig) -> Result<AuditReport> {
    check_parameter(lambda)?;
    if n < 2 {
        return Err(Error::OutOfRange(format!("level {n} must be at least 2")));
    }
    if !cfg.c.is_positive() || cfg.c > Rational::one() {
        return Err(Error::OutOfRange(format!("exponent c = {} not in (0, 1]", cfg.c)));
    }
    let class = class_witness(eta, n)?
        .ok_or_else(|| Error::PreconditionUnmet(format!("η is not certified as a root of a member of P_{n}")))?;
    let same = match lambda {
        Parameter::Algebraic(a) => a.equals(eta)?,
        Parameter::Rational(q) => eta.as_rational().as_ref() == Some(q),
        Parameter::Interval(_) => false,
    };
    if same {
        return Err(Error::PreconditionUnmet("λ = η".into()));
    }
    let limit = level_scale(n, 4);
    let mut prec = working_precision(&limit, &cfg.ctx);
    let dist = loop {
        let d = eta_distance(lambda, eta, prec)?;
        if d.certainly_positive() {
            break d;
        }
        if matches!(lambda, Parameter::Interval(_)) || prec >= cfg.ctx.cap {
            return Err(Error::PreconditionUnmet(format!("|λ - η| not certified positive ({d})")));
        }
        prec = (prec * 2).min(cfg.ctx.cap);
    };
    if dist.rational_hi() >= limit {
        return Err(Error::PreconditionUnmet(format!("|λ - η| = {dist} is not below n^(-4n)")));
    }
    let d_lo = dist.rational_lo();
    let r = if cfg.c.numer().is_one() {
        num_traits::pow::Pow::pow(&d_lo, cfg.c.denom())
    } else {
        let l = log2_rational(&d_lo, prec)?.mul_rational(&cfg.c.recip());
        exp2_interval(&l)?.rational_lo()
    };
    if !r.is_positive() {
        return Err(Error::undecidable("scale r rounds to zero", prec));
    }
    let (level, entropy, _) = level_entropy(lambda, n, &r, &cfg.ctx)?;
    let (full, gap) = full_support(&level, n, &r, &cfg.ctx)?;
    let contains_n = entropy.contains_rational(&Rational::from_integer(BigInt::from(n)));

    let mut report = AuditReport::new("full-entropy-check");
    report.asserted = n >= cfg.floor;
    let mut class_check = CheckResult::new("eta_in_class");
    class_check.cases = 1;
    class_check.note = Some(format!("η is a root of {}", class.to_text()));
    let mut dist_check = CheckResult::new("distance_in_range");
    dist_check.cases = 1;
    let mut full_check = CheckResult::new("entropy_full");
    full_check.cases = 1;
    if full != Some(true) || !contains_n {
        full_check.failures.push(Failure {
            seed: 0,
            witness: format!("support {} of {}, entropy {entropy}, min gap {gap:?}", level.len(), 1u128 << n),
            witness_file: None,
        });
    }
    report.verdict = full_check.passed();
    report.checks = vec![class_check, dist_check, full_check];
    report.set("n", n);
    report.set("c", format_rational(&cfg.c));
    report.set("eta", eta);
    report.set("distance", &dist);
    report.set("r", format_rational(&r));
    report.set("entropy", &entropy);
    report.set("support", level.len());
    report.set("min_gap", &gap);
    Ok(report)
}
