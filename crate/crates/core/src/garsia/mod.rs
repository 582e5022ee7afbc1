//! Garsia entropy upper bounds for algebraic parameters by exact collision
//! grouping, and the resulting dimension bounds.

mod cache;

pub use cache::{cache_path, clear_cache, decode_level, encode_level, list_cache, load_level, store_level};

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::algebra::{AlgebraicNumber, IntPolynomial};
use crate::entropy::shannon_field;
use crate::error::{Error, Result};
use crate::measures::{FieldMeasure, DEFAULT_SUPPORT_CAP};
use crate::numerics::{log2_interval, Dyadic, IntervalScalar, DEFAULT_PRECISION};
use crate::report::{CheckResult, Failure};

/// Which levels [`garsia_bounds`] reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Schedule {
    /// `1, 2, 4, ...` up to `n_max`.
    Doubling,
    /// Every level `1..=n_max`.
    Dense,
}

impl Schedule {
    pub fn levels(self, n_max: usize) -> Vec<usize> {
        match self {
            Schedule::Dense => (1..=n_max).collect(),
            Schedule::Doubling => std::iter::successors(Some(1usize), |n| Some(n * 2))
                .take_while(|&n| n <= n_max)
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GarsiaLevel {
    pub n: usize,
    pub support: usize,
    pub entropy: IntervalScalar,
    pub per_step: IntervalScalar,
    pub dim_bound: IntervalScalar,
}

#[derive(Clone, Debug, Serialize)]
pub struct GarsiaReport {
    pub parameter: AlgebraicNumber,
    pub defining: IntPolynomial,
    pub schedule: Schedule,
    pub levels: Vec<GarsiaLevel>,
    /// `H_(m+n) <= H_m + H_n` for every computed triple.
    pub subadditivity: CheckResult,
    /// Bounds hold whether or not the defining polynomial is irreducible.
    pub semantics: String,
}

impl GarsiaReport {
    pub fn level(&self, n: usize) -> Option<&GarsiaLevel> {
        self.levels.iter().find(|l| l.n == n)
    }
}

/// Certifies the root and builds the level-`n` distribution.
pub fn level_distribution(defining: &IntPolynomial, isolator: &IntervalScalar, n: usize) -> Result<FieldMeasure> {
    let lambda = AlgebraicNumber::from_isolator(defining, isolator)?;
    FieldMeasure::level(&lambda, n)
}

/// Options for [`garsia_bounds_with`].
#[derive(Clone, Debug)]
pub struct GarsiaOptions<'a> {
    pub schedule: Schedule,
    pub cap: usize,
    pub precision: u32,
    pub cache: Option<&'a Path>,
}

impl Default for GarsiaOptions<'_> {
    fn default() -> Self {
        GarsiaOptions {
            schedule: Schedule::Doubling,
            cap: DEFAULT_SUPPORT_CAP,
            precision: DEFAULT_PRECISION,
            cache: None,
        }
    }
}

pub fn garsia_bounds(defining: &IntPolynomial, isolator: &IntervalScalar, n_max: usize) -> Result<GarsiaReport> {
    garsia_bounds_with(defining, isolator, n_max, &GarsiaOptions::default())
}

pub fn garsia_bounds_with(
    defining: &IntPolynomial,
    isolator: &IntervalScalar,
    n_max: usize,
    opts: &GarsiaOptions,
) -> Result<GarsiaReport> {
    let lambda = AlgebraicNumber::from_isolator(defining, isolator)?;
    garsia_bounds_for(&lambda, n_max, opts)
}

pub fn garsia_bounds_for(lambda: &AlgebraicNumber, n_max: usize, opts: &GarsiaOptions) -> Result<GarsiaReport> {
    if n_max == 0 {
        return Err(Error::OutOfRange("n_max must be at least 1".into()));
    }
    let prec = opts.precision;
    let wanted = opts.schedule.levels(n_max);
    let mut found: BTreeMap<usize, FieldMeasure> = BTreeMap::new();
    if let Some(root) = opts.cache {
        for &n in &wanted {
            if let Some(m) = load_level(root, lambda, n)? {
                found.insert(n, m);
            }
        }
    }
    if found.len() < wanted.len() {
        let top = *wanted.last().unwrap();
        FieldMeasure::level_sequence(lambda, top, opts.cap, |m| {
            if wanted.contains(&m.n()) && !found.contains_key(&m.n()) {
                if let Some(root) = opts.cache {
                    store_level(root, m)?;
                }
                found.insert(m.n(), m.clone());
            }
            Ok(())
        })?;
    }
    let lam = lambda.real_enclosure(-(prec as i64) - 8)?.with_precision(prec + 8);
    let log_inv = -log2_interval(&lam)?;
    let one = IntervalScalar::one(prec);
    let levels: Vec<GarsiaLevel> = found
        .values()
        .map(|m| {
            let h = shannon_field(m, prec);
            let n = IntervalScalar::from_int(m.n() as i64, prec);
            let per_step = h.div(&n)?;
            let dim = per_step.div(&log_inv)?.min(&one);
            Ok(GarsiaLevel {
                n: m.n(),
                support: m.len(),
                entropy: h,
                per_step,
                dim_bound: dim,
            })
        })
        .collect::<Result<_>>()?;
    let subadditivity = subadditivity_check(&levels);
    Ok(GarsiaReport {
        parameter: lambda.clone(),
        defining: lambda.defining().clone(),
        schedule: opts.schedule,
        levels,
        subadditivity,
        semantics: "upper-bound-only".into(),
    })
}

fn subadditivity_check(levels: &[GarsiaLevel]) -> CheckResult {
    let slack = Dyadic::pow2(-40);
    let by_n: BTreeMap<usize, &GarsiaLevel> = levels.iter().map(|l| (l.n, l)).collect();
    let mut check = CheckResult::new("subadditivity");
    for (&a, la) in &by_n {
        for (&b, lb) in by_n.range(a..) {
            if let Some(lc) = by_n.get(&(a + b)) {
                check.cases += 1;
                let gap = &lc.entropy - &(&la.entropy + &lb.entropy);
                if gap.hi() > &slack {
                    check.failures.push(Failure {
                        seed: 0,
                        witness: format!("H_{} > H_{a} + H_{b}", a + b),
                        witness_file: None,
                    });
                }
            }
        }
    }
    check
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn iso(a: i64, b: i64, d: i64) -> IntervalScalar {
        IntervalScalar::from_rational_bounds(&q(a, d), &q(b, d), 64)
    }

    fn golden() -> IntPolynomial {
        IntPolynomial::from_i64s(&[-1, 1, 1])
    }

    fn near(x: &IntervalScalar, v: Rational) -> bool {
        x.within(&v, &q(1, 1 << 40)) && x.width_at_most(-40)
    }

    #[test]
    fn level_examples() {
        let half = level_distribution(&IntPolynomial::from_i64s(&[-1, 2]), &iso(1, 3, 4), 4).unwrap();
        assert_eq!(half.len(), 16);
        assert!(half.counts().iter().all(|&c| c == 1));
        assert_eq!(level_distribution(&golden(), &iso(3, 7, 10), 3).unwrap().len(), 7);
        let one = level_distribution(&golden(), &iso(3, 7, 10), 1).unwrap();
        assert_eq!(one.len(), 2);
    }

    #[test]
    fn golden_entropies() {
        let rep = garsia_bounds_with(&golden(), &iso(3, 7, 10), 6, &GarsiaOptions {
            schedule: Schedule::Dense,
            ..Default::default()
        })
        .unwrap();
        assert!(near(&rep.level(1).unwrap().entropy, q(1, 1)));
        assert!(near(&rep.level(2).unwrap().entropy, q(2, 1)));
        assert!(near(&rep.level(3).unwrap().entropy, q(11, 4)));
        let h6 = &rep.level(6).unwrap().entropy;
        assert!(h6.hi().to_f64() <= 5.5 + 1e-12);
        assert!(rep.subadditivity.passed() && rep.subadditivity.cases > 0);
        for l in &rep.levels {
            assert!(l.dim_bound.hi().to_f64() <= 1.0 && l.dim_bound.lo().to_f64() > 0.0);
        }
    }

    #[test]
    fn half_is_full_dimensional() {
        let rep = garsia_bounds_with(&IntPolynomial::from_i64s(&[-1, 2]), &iso(1, 3, 4), 12, &GarsiaOptions {
            schedule: Schedule::Dense,
            ..Default::default()
        })
        .unwrap();
        for l in &rep.levels {
            assert!(near(&l.entropy, q(l.n as i64, 1)));
            assert!(l.dim_bound.within(&q(1, 1), &q(1, 1 << 40)));
        }
    }

    #[test]
    fn doubling_schedule() {
        assert_eq!(Schedule::Doubling.levels(20), vec![1, 2, 4, 8, 16]);
        assert_eq!(Schedule::Dense.levels(3), vec![1, 2, 3]);
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let opts = GarsiaOptions {
            cache: Some(dir.path()),
            ..Default::default()
        };
        let a = garsia_bounds_with(&golden(), &iso(3, 7, 10), 8, &opts).unwrap();
        assert_eq!(list_cache(dir.path()).unwrap().len(), 4);
        let lam = AlgebraicNumber::from_isolator(&golden(), &iso(3, 7, 10)).unwrap();
        let fresh = FieldMeasure::level(&lam, 8).unwrap();
        assert_eq!(load_level(dir.path(), &lam, 8).unwrap().unwrap(), fresh);
        let b = garsia_bounds_with(&golden(), &iso(3, 7, 10), 8, &opts).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let bytes = encode_level(&fresh);
        assert_eq!(&bytes[..4], b"BCL1");
        assert!(decode_level(&bytes[..bytes.len() - 1], &lam).is_err());
        assert_eq!(clear_cache(dir.path()).unwrap(), 4);
    }

    #[test]
    fn reducible_defining_polynomial_merges_less() {
        // (x^2 + x - 1)(x + 2): reducing modulo a multiple never merges more.
        let p = &golden() * &IntPolynomial::from_i64s(&[2, 1]);
        let lam = AlgebraicNumber::from_isolator(&p, &iso(3, 7, 10)).unwrap();
        let g = AlgebraicNumber::from_isolator(&golden(), &iso(3, 7, 10)).unwrap();
        for n in 1..9 {
            assert!(FieldMeasure::level(&lam, n).unwrap().len() >= FieldMeasure::level(&g, n).unwrap().len());
        }
    }
}
