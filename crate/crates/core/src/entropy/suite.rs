use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::entropy::{
    differential_entropy, entropy_at_scale_smoothed_with, entropy_at_scale_sweep_with, integer_masses, log2_rational,
};
use crate::error::Result;
use crate::measures::{atoms_to_csv, smooth, AtomicMeasure};
use crate::numerics::{format_rational, log2_int, Dyadic, IntervalScalar, Rational};
use crate::report::{AuditReport, CheckResult, Failure};

/// Corpus parameters for the property suite.
#[derive(Clone, Debug, Serialize)]
pub struct CorpusConfig {
    pub seed: u64,
    pub cases: usize,
    pub max_atoms: usize,
    /// Atom positions are multiples of `2^-max_denominator_exp`.
    pub max_denominator_exp: u32,
    pub precision: u32,
    /// Inequalities are checked up to `2^slack_exp`.
    pub slack_exp: i64,
    #[serde(skip)]
    pub witness_dir: Option<PathBuf>,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: 1,
            cases: 100,
            max_atoms: 32,
            max_denominator_exp: 12,
            precision: 128,
            slack_exp: -40,
            witness_dir: None,
        }
    }
}

pub const CHECK_IDS: [&str; 8] = [
    "a_digit_bound",
    "b_lipschitz",
    "c_convolution_monotone",
    "d_scaling",
    "e_halving",
    "f_more_digits",
    "g_submodularity",
    "h_interpretation",
];

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Dyadic atoms in `[-4, 4]` with weights drawn as positive integers and
/// normalized exactly.
pub fn random_measure(rng: &mut impl Rng, max_atoms: usize, max_exp: u32) -> AtomicMeasure {
    let k = rng.random_range(1..=max_atoms.max(1));
    let e = rng.random_range(0..=max_exp);
    let span = 4i64 << e;
    let den = 1i64 << e;
    let pairs: Vec<(Rational, Rational)> = (0..k)
        .map(|_| {
            let x = rng.random_range(-span..=span);
            let w = rng.random_range(1..=16i64);
            (q(x, den), q(w, 1))
        })
        .collect();
    AtomicMeasure::normalized(pairs).expect("positive weights")
}

fn random_scale(rng: &mut impl Rng, max_exp: u32) -> Rational {
    q(rng.random_range(1..=16), 1i64 << rng.random_range(0..=max_exp))
}

fn case_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64)
}

struct Ctx {
    prec: u32,
    slack: Dyadic,
}

impl Ctx {
    fn h(&self, mu: &AtomicMeasure, r: &Rational) -> Result<IntervalScalar> {
        Ok(entropy_at_scale_sweep_with(mu, r, self.prec)?.value)
    }

    fn cond(&self, mu: &AtomicMeasure, r1: &Rational, r2: &Rational) -> Result<IntervalScalar> {
        Ok(&self.h(mu, r1)? - &self.h(mu, r2)?)
    }

    /// Certified `a <= b` up to the slack.
    fn le(&self, a: &IntervalScalar, b: &IntervalScalar) -> bool {
        (a - b).hi() <= &self.slack
    }

    fn int(&self, v: i64) -> IntervalScalar {
        IntervalScalar::from_int(v, self.prec)
    }
}

type Outcome = Result<Option<String>>;

fn fail_if(ok: bool, witness: impl FnOnce() -> String) -> Outcome {
    Ok((!ok).then(witness))
}

fn check_a(c: &Ctx, mu: &AtomicMeasure, r: &Rational) -> Outcome {
    let d = c.cond(mu, r, &(r * q(2, 1)))?;
    fail_if(c.le(&d, &c.int(1)), || format!("r={} H(r|2r)={d:?}", format_rational(r)))
}

fn check_b(c: &Ctx, mu: &AtomicMeasure, r: &Rational, rho: &Rational) -> Outcome {
    let r2 = r * rho;
    let d = c.cond(mu, r, &r2)?;
    let bound = log2_rational(rho, c.prec)?.mul_pow2(1);
    fail_if(c.le(&c.int(0), &d) && c.le(&d, &bound), || {
        format!("r1={} r2={} diff={d:?}", format_rational(r), format_rational(&r2))
    })
}

fn check_c(c: &Ctx, mu: &AtomicMeasure, nu: &AtomicMeasure, r: &Rational, n: i64) -> Outcome {
    let r2 = r * q(n, 1);
    let conv = mu.convolve(nu)?;
    let lhs = c.cond(&conv, r, &r2)?;
    let rhs = c.cond(mu, r, &r2)?;
    fail_if(c.le(&rhs, &lhs), || {
        format!("r1={} N={n} H(X+Y)={lhs:?} H(X)={rhs:?}", format_rational(r))
    })
}

fn check_d(c: &Ctx, mu: &AtomicMeasure, r: &Rational, s: &Rational) -> Outcome {
    let a = c.h(&mu.rescale(s)?, &(r * s))?;
    let b = c.h(mu, r)?;
    fail_if(c.le(&a, &b) && c.le(&b, &a), || {
        format!("r={} s={} H(sX;sr)={a:?} H(X;r)={b:?}", format_rational(r), format_rational(s))
    })
}

fn check_e(c: &Ctx, mu: &AtomicMeasure, r: &Rational, rho: &Rational) -> Outcome {
    let r2 = r * rho;
    let n = rho.floor();
    let whole = c.cond(mu, r, &r2)?;
    let half = whole.mul_pow2(-1);
    let anchor = c.cond(mu, &(&r2 / &n), &r2)?;
    if c.le(&half, &anchor) {
        return Ok(None);
    }
    let lower = c.cond(mu, r, &(r * &n))?;
    fail_if(c.le(&half, &lower), || {
        format!("r1={} r2={} whole={whole:?} anchor={anchor:?} lower={lower:?}", format_rational(r), format_rational(&r2))
    })
}

fn check_f(c: &Ctx, mu: &AtomicMeasure, r: &Rational) -> Outcome {
    let h1 = c.h(mu, r)?;
    let h2 = c.h(mu, &(r * q(2, 1)))?;
    let h4 = c.h(mu, &(r * q(4, 1)))?;
    let lhs = &c.int(1) - &(&h2 - &h4);
    let rhs = (&c.int(1) - &(&h1 - &h2)).mul_pow2(2);
    fail_if(c.le(&lhs, &rhs), || format!("r={} lhs={lhs:?} rhs={rhs:?}", format_rational(r)))
}

fn check_g(c: &Ctx, x: &AtomicMeasure, a: &AtomicMeasure, z: &AtomicMeasure, r: &Rational) -> Outcome {
    let h = |m: &AtomicMeasure| -> Result<IntervalScalar> { differential_entropy(&smooth(m, r)?, c.prec) };
    let xa = x.convolve(a)?;
    let az = a.convolve(z)?;
    let xaz = xa.convolve(z)?;
    let lhs = &h(&xaz)? + &h(a)?;
    let rhs = &h(&xa)? + &h(&az)?;
    fail_if(c.le(&lhs, &rhs), || format!("r={} lhs={lhs:?} rhs={rhs:?}", format_rational(r)))
}

/// `∫ H(⌊N(y+t)⌋ | ⌊y+t⌋) dt` evaluated segment by segment on the joint
/// breakpoints of both partitions.
pub(crate) fn interpretation_integral(mu: &AtomicMeasure, r: &Rational, n: i64, prec: u32) -> Result<IntervalScalar> {
    let nq = q(n, 1);
    let scaled: Vec<Rational> = mu.atoms().iter().map(|x| x / r).collect();
    let (total, masses) = integer_masses(mu.weights());
    let mut cuts: BTreeSet<Rational> = BTreeSet::new();
    cuts.insert(Rational::zero());
    cuts.insert(Rational::one());
    for y in &scaled {
        let fr = y - y.floor();
        if !fr.is_zero() {
            cuts.insert(Rational::one() - &fr);
        }
        let fy = y * &nq;
        let ffr = &fy - fy.floor();
        for j in 1..=n {
            let t = (q(j, 1) - &ffr) / &nq;
            if t > Rational::zero() && t < Rational::one() {
                cuts.insert(t);
            }
        }
    }
    let cuts: Vec<Rational> = cuts.into_iter().collect();
    let mut coef: BTreeMap<BigInt, Rational> = BTreeMap::new();
    for w in cuts.windows(2) {
        let len = &w[1] - &w[0];
        let t = (&w[0] + &w[1]) / q(2, 1);
        let mut coarse: BTreeMap<BigInt, BigInt> = BTreeMap::new();
        let mut fine: BTreeMap<BigInt, BigInt> = BTreeMap::new();
        for (y, m) in scaled.iter().zip(&masses) {
            let u = y + &t;
            *coarse.entry(u.floor().to_integer()).or_default() += m;
            *fine.entry((u * &nq).floor().to_integer()).or_default() += m;
        }
        for m in coarse.into_values() {
            *coef.entry(m).or_default() += &len;
        }
        for m in fine.into_values() {
            *coef.entry(m).or_default() -= &len;
        }
    }
    let wp = prec + 24;
    let mut sum = IntervalScalar::zero(wp);
    for (m, c) in coef {
        if m.is_one() || c.is_zero() {
            continue;
        }
        let f = &log2_int(&m, wp)? * &IntervalScalar::from_bigint(&m, wp);
        sum = &sum + &f.mul_rational(&c);
    }
    Ok(sum.mul_rational(&Rational::new(BigInt::one(), total)))
}

fn check_h(c: &Ctx, mu: &AtomicMeasure, r: &Rational, n: i64) -> Outcome {
    let direct = c.cond(mu, &(r / q(n, 1)), r)?;
    let integral = interpretation_integral(mu, r, n, c.prec)?;
    fail_if(c.le(&direct, &integral) && c.le(&integral, &direct), || {
        format!("r={} N={n} direct={direct:?} integral={integral:?}", format_rational(r))
    })
}

struct Case {
    seed: u64,
    measure: AtomicMeasure,
    results: Vec<Option<String>>,
}

fn run_case(cfg: &CorpusConfig, seed: u64) -> Result<Case> {
    let c = Ctx {
        prec: cfg.precision,
        slack: Dyadic::pow2(cfg.slack_exp),
    };
    let e = cfg.max_denominator_exp;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mu = random_measure(&mut rng, cfg.max_atoms, e);
    let r = random_scale(&mut rng, e);
    let rho_b = q(8 + rng.random_range(1..=56), 8);
    let nu = random_measure(&mut rng, cfg.max_atoms.min(8), e);
    let n_c = rng.random_range(2..=4);
    let s = q(rng.random_range(1..=9), rng.random_range(1..=9));
    let rho_e = q(14 + rng.random_range(0..49), 7);
    let small = cfg.max_atoms.min(5);
    let gx = random_measure(&mut rng, small, e);
    let ga = random_measure(&mut rng, small.min(4), e);
    let gz = random_measure(&mut rng, small, e);
    let n_h = rng.random_range(2..=4);
    let results = vec![
        check_a(&c, &mu, &r)?,
        check_b(&c, &mu, &r, &rho_b)?,
        check_c(&c, &mu, &nu, &r, n_c)?,
        check_d(&c, &mu, &r, &s)?,
        check_e(&c, &mu, &r, &rho_e)?,
        check_f(&c, &mu, &r)?,
        check_g(&c, &gx, &ga, &gz, &r)?,
        check_h(&c, &mu, &r, n_h)?,
    ];
    Ok(Case {
        seed,
        measure: mu,
        results,
    })
}

/// Runs checks (a)-(h) on `cfg.cases` seeded random measures.
pub fn run_property_suite(cfg: &CorpusConfig) -> Result<AuditReport> {
    let cases: Vec<Case> = (0..cfg.cases)
        .into_par_iter()
        .map(|i| run_case(cfg, case_seed(cfg.seed, i)))
        .collect::<Result<Vec<_>>>()?;
    let mut checks: Vec<CheckResult> = CHECK_IDS.iter().map(|id| CheckResult::new(*id)).collect();
    for case in &cases {
        for (check, res) in checks.iter_mut().zip(&case.results) {
            check.cases += 1;
            if let Some(w) = res {
                let witness_file = match &cfg.witness_dir {
                    Some(dir) => {
                        std::fs::create_dir_all(dir)?;
                        let path = dir.join(format!("{}_{}.csv", check.check_id, case.seed));
                        std::fs::write(&path, atoms_to_csv(&case.measure))?;
                        Some(path.display().to_string())
                    }
                    None => None,
                };
                check.failures.push(Failure {
                    seed: case.seed,
                    witness: w.clone(),
                    witness_file,
                });
            }
        }
    }
    checks[4].note = Some("subscales (r2/N, r2), else (r1, N r1), with N = floor(r2/r1)".into());
    checks[6].note = Some("Y is an atomic measure plus a uniform on [0, r]".into());
    let mut report = AuditReport::new("props");
    report.verdict = checks.iter().all(CheckResult::passed);
    report.checks = checks;
    report.set("seed", cfg.seed);
    report.set("cases", cfg.cases);
    report.set("max_atoms", cfg.max_atoms);
    report.set("max_denominator_exp", cfg.max_denominator_exp);
    report.set("slack_exp", cfg.slack_exp);
    Ok(report)
}

/// Sweep against smoothing on `cfg.cases` seeded measures, `scales` random
/// scales each: the enclosures must meet and their hull must be at most
/// `2^slack_exp` wide.
pub fn run_dual_oracle(cfg: &CorpusConfig, scales: usize) -> Result<AuditReport> {
    let slack = Dyadic::pow2(cfg.slack_exp);
    let rows: Vec<(u64, Vec<Option<String>>, Dyadic)> = (0..cfg.cases)
        .into_par_iter()
        .map(|i| {
            let seed = case_seed(cfg.seed, i);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mu = random_measure(&mut rng, cfg.max_atoms, cfg.max_denominator_exp);
            let mut widest = Dyadic::zero();
            let mut out = Vec::with_capacity(scales);
            for _ in 0..scales {
                let r = random_scale(&mut rng, cfg.max_denominator_exp);
                let a = entropy_at_scale_sweep_with(&mu, &r, cfg.precision)?.value;
                let b = entropy_at_scale_smoothed_with(&mu, &r, cfg.precision)?.value;
                let hull = a.hull(&b);
                let w = hull.width();
                let ok = a.overlaps(&b) && w <= slack;
                if w > widest {
                    widest = w;
                }
                out.push((!ok).then(|| format!("r={} sweep={a:?} smoothed={b:?}", format_rational(&r))));
            }
            Ok((seed, out, widest))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut check = CheckResult::new("dual_oracle");
    let mut widest = Dyadic::zero();
    for (seed, out, w) in rows {
        for res in out {
            check.cases += 1;
            if let Some(witness) = res {
                check.failures.push(Failure {
                    seed,
                    witness,
                    witness_file: None,
                });
            }
        }
        if w > widest {
            widest = w;
        }
    }
    let mut report = AuditReport::new("dual-oracle");
    report.verdict = check.passed();
    report.checks = vec![check];
    report.set("seed", cfg.seed);
    report.set("cases", cfg.cases);
    report.set("scales_per_case", scales);
    report.set("max_atoms", cfg.max_atoms);
    report.set("slack_exp", cfg.slack_exp);
    report.set("widest_hull", widest.to_string());
    Ok(report)
}
