//! Exhaustive audits over `P_n`: root separation and root counts near 0.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::poly::IntPolynomial;
use super::roots::{isolate_roots_with, AlgebraicNumber, IsolatedRoot};
use crate::error::{Error, Result};
use crate::numerics::{
    exp2_interval, format_rational, log2_int, Dyadic, IntervalRepr, IntervalScalar,
    PrecisionContext, Rational, Round,
};
use crate::report::{AuditReport, CheckResult, Failure};

/// Largest degree audited by default.
pub const DEFAULT_AUDIT_CAP: usize = 9;

/// Largest degree for the root-count audit.
pub const JENSEN_CAP: usize = 12;

/// Degrees from which the separation bound is guaranteed.
pub const SEPARATION_FLOOR: usize = 9;

/// `10^-3` rounded up to a dyadic.
pub fn default_pair_threshold() -> Dyadic {
    Dyadic::from_rational(&Rational::new(1.into(), 1000.into()), 24, Round::Up)
}

/// `2 n^(-4n)`.
pub fn separation_bound(n: usize) -> Rational {
    Rational::new(BigInt::from(2), BigInt::from(n).pow(4 * n as u32))
}

/// `a(k) = k/(k+1) (k+1)^(-1/k)`.
pub fn jensen_radius(k: u32, prec: u32) -> Result<IntervalScalar> {
    if k == 0 {
        return Err(Error::OutOfRange("a(k) needs k >= 1".into()));
    }
    let l = log2_int(&BigInt::from(k + 1), prec + 8)?;
    let e = exp2_interval(&(-l).div_int(k as i64))?;
    Ok(e.mul_rational(&Rational::new(k.into(), (k + 1).into())))
}

/// Every `P ∈ P_n` with constant term 1; up to sign and powers of `x`
/// these carry all non-zero roots of `P_n`.
fn normalized_polys(n: usize) -> Vec<IntPolynomial> {
    let count = 3usize.pow(n as u32);
    (0..count)
        .map(|mut i| {
            let mut c = vec![1i64];
            for _ in 0..n {
                c.push((i % 3) as i64 - 1);
                i /= 3;
            }
            IntPolynomial::from_i64s(&c)
        })
        .collect()
}

fn isolate_all(polys: &[IntPolynomial], eps: &Dyadic, ctx: &PrecisionContext) -> Result<Vec<Vec<IsolatedRoot>>> {
    polys
        .par_iter()
        .map(|p| {
            if p.is_constant() {
                Ok(Vec::new())
            } else {
                isolate_roots_with(p, eps, ctx)
            }
        })
        .collect()
}

/// Refines both numbers until their enclosures are disjoint; the lower
/// bound on their distance. The numbers must be known to be distinct.
fn certified_gap(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<Dyadic> {
    let mut exp = -64;
    loop {
        let (ra, rb) = (a.refine(&Dyadic::pow2(exp))?, b.refine(&Dyadic::pow2(exp))?);
        let s = ra.enclosure().separation(&rb.enclosure());
        if !s.lo().is_zero() {
            return Ok(s.lo().clone());
        }
        if exp < -4096 {
            return Err(Error::cap("separating distinct roots", 4096));
        }
        exp *= 2;
    }
}

struct RootClass {
    rep: AlgebraicNumber,
    refined: Option<AlgebraicNumber>,
}

/// Separation audit with the default degree cap.
pub fn separation_audit(n: usize, pair_threshold: &Dyadic) -> Result<AuditReport> {
    separation_audit_with(n, pair_threshold, DEFAULT_AUDIT_CAP, &PrecisionContext::default())
}

/// Isolates all roots of `P_n`, merges roots proven equal and reports a
/// certified lower bound on the distance between distinct roots.
pub fn separation_audit_with(
    n: usize,
    pair_threshold: &Dyadic,
    cap: usize,
    ctx: &PrecisionContext,
) -> Result<AuditReport> {
    if n < 1 || n > cap {
        return Err(Error::cap(format!("separation audit at degree {n}"), cap as u64));
    }
    if pair_threshold.signum() <= 0 {
        return Err(Error::NonPositiveArgument("pair threshold".into()));
    }
    let polys = normalized_polys(n);
    let isolated = isolate_all(&polys, &Dyadic::pow2(-30), ctx)?;
    // Widen the threshold until some compared pair realizes the minimum,
    // so the reported value is an actual distance, not just the threshold.
    let mut threshold = pair_threshold.clone();
    loop {
        let report = separation_pass(n, &polys, &isolated, &threshold, ctx)?;
        if report.0 || threshold > Dyadic::from_int(8) {
            return Ok(report.1);
        }
        threshold = threshold.mul_pow2(3);
    }
}

/// One bucketing pass; the flag is true when the minimum was realized by a
/// compared pair rather than by the threshold floor.
fn separation_pass(
    n: usize,
    polys: &[IntPolynomial],
    isolated: &[Vec<IsolatedRoot>],
    pair_threshold: &Dyadic,
    ctx: &PrecisionContext,
) -> Result<(bool, AuditReport)> {
    let th = pair_threshold.to_f64();
    let cell_of = |a: &AlgebraicNumber| {
        let (x, y) = a.enclosure().mid();
        ((x.to_f64() / th).floor() as i64, (y.to_f64() / th).floor() as i64)
    };

    let mut classes: Vec<RootClass> = Vec::new();
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let mut min_gap: Option<Dyadic> = None;
    let mut min_estimate = f64::INFINITY;
    let mut max_diam = Dyadic::zero();
    let (mut roots, mut near_pairs, mut merged) = (0usize, 0usize, 0usize);

    let zero = AlgebraicNumber::from_isolator(&IntPolynomial::x(), &IntervalScalar::zero(ctx.start))?;
    let all = std::iter::once(zero).chain(isolated.iter().flatten().map(|r| r.root.clone()));
    for root in all {
        roots += 1;
        max_diam = Dyadic::max(&max_diam, &root.location().diameter());
        let (cx, cy) = cell_of(&root);
        let mut merged_into = None;
        'scan: for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(ids) = grid.get(&(cx + dx, cy + dy)) else { continue };
                for &id in ids {
                    let class = &mut classes[id];
                    let (ea, eb) = (root.enclosure(), class.rep.enclosure());
                    let mut gap = ea.separation(&eb).lo().clone();
                    if gap.is_zero() {
                        if class.refined.is_none() {
                            class.refined = Some(class.rep.refine(&Dyadic::pow2(-64))?);
                        }
                        let rep = class.refined.as_ref().unwrap();
                        let fine = root.refine(&Dyadic::pow2(-64))?;
                        if fine.enclosure().overlaps(&rep.enclosure()) && fine.equals(rep)? {
                            merged += 1;
                            merged_into = Some(id);
                            break 'scan;
                        }
                        gap = certified_gap(&fine, rep)?;
                    }
                    if gap < *pair_threshold {
                        near_pairs += 1;
                    }
                    let (ma, mb) = (ea.mid(), eb.mid());
                    let est = (ma.0.to_f64() - mb.0.to_f64()).hypot(ma.1.to_f64() - mb.1.to_f64());
                    min_estimate = min_estimate.min(est);
                    if min_gap.as_ref().is_none_or(|m| gap < *m) {
                        min_gap = Some(gap);
                    }
                }
            }
        }
        if merged_into.is_none() {
            grid.entry((cx, cy)).or_default().push(classes.len());
            classes.push(RootClass { rep: root, refined: None });
        }
    }

    // Pairs never compared have centres at least one cell apart.
    let floor = pair_threshold - &(&max_diam.mul_pow2(1) + &Dyadic::pow2(-40));
    let (realized, lower) = match min_gap {
        Some(g) if g < floor => (true, g),
        _ => (false, floor),
    };
    let bound = separation_bound(n);
    let verdict = lower.to_rational() > bound;
    let mut report = AuditReport::new("separation");
    report.verdict = verdict;
    report.asserted = n >= SEPARATION_FLOOR;
    report.set("degree", n);
    report.set("normalized_polynomials", polys.len());
    report.set("roots", roots);
    report.set("distinct_roots", classes.len());
    report.set("merged_equal_roots", merged);
    report.set("near_pairs", near_pairs);
    report.set("pair_threshold", pair_threshold.to_string());
    report.set("min_distance_lower", lower.to_string());
    report.set("min_distance_lower_f64", lower.to_f64());
    if min_estimate.is_finite() {
        report.set("min_distance_estimate_f64", min_estimate);
    }
    report.set("bound", format_rational(&bound));
    report.set("bound_f64", crate::numerics::rational_to_f64(&bound));
    let mut check = CheckResult::new("min_distance_exceeds_bound");
    check.cases = classes.len();
    if !verdict {
        check.failures.push(Failure {
            seed: 0,
            witness: format!("min distance lower bound {lower}"),
            witness_file: None,
        });
    }
    if !report.asserted {
        check.note = Some(format!("degree {n} is below {SEPARATION_FLOOR}; reported, not asserted"));
    }
    report.checks.push(check);
    Ok((realized, report))
}

/// Root-count audit with the default precision context.
pub fn jensen_audit(n: usize, k_max: u32) -> Result<AuditReport> {
    jensen_audit_with(n, k_max, &PrecisionContext::default())
}

/// For every non-zero `P ∈ P_n` and `k <= k_max`, counts the non-zero roots
/// (with multiplicity) of modulus below `a(k)`. Roots whose modulus cannot
/// be separated from `a(k)` are counted as inside.
pub fn jensen_audit_with(n: usize, k_max: u32, ctx: &PrecisionContext) -> Result<AuditReport> {
    if n > JENSEN_CAP {
        return Err(Error::cap(format!("Jensen audit at degree {n}"), JENSEN_CAP as u64));
    }
    let radii: Vec<IntervalScalar> = (1..=k_max).map(|k| jensen_radius(k, ctx.start)).collect::<Result<_>>()?;
    let radii_sq: Vec<IntervalScalar> = radii.iter().map(|a| a.square()).collect();
    let polys = normalized_polys(n);
    let isolated = isolate_all(&polys, &Dyadic::pow2(-30), ctx)?;
    let per_poly: Vec<(Vec<usize>, usize)> = isolated
        .par_iter()
        .map(|roots| -> Result<(Vec<usize>, usize)> {
            let mut counts = vec![0usize; radii.len()];
            let mut uncertain = 0usize;
            for r in roots {
                for (k, a2) in radii_sq.iter().enumerate() {
                    let mut exp = -30;
                    let inside = loop {
                        let z = if exp == -30 { r.root.clone() } else { r.root.refine(&Dyadic::pow2(exp))? };
                        let m = z.enclosure().abs_sq();
                        if m.certainly_lt(a2) {
                            break true;
                        }
                        if a2.certainly_le(&m) {
                            break false;
                        }
                        if exp < -512 {
                            uncertain += 1;
                            break true;
                        }
                        exp *= 2;
                    };
                    if inside {
                        counts[k] += r.multiplicity;
                    }
                }
            }
            Ok((counts, uncertain))
        })
        .collect::<Result<_>>()?;

    let mut report = AuditReport::new("jensen");
    let mut max_counts = vec![0usize; radii.len()];
    for (k, max) in max_counts.iter_mut().enumerate() {
        let mut check = CheckResult::new(format!("k={}", k + 1));
        check.cases = polys.len();
        for (p, (counts, _)) in polys.iter().zip(&per_poly) {
            *max = (*max).max(counts[k]);
            if counts[k] > k + 1 {
                check.failures.push(Failure {
                    seed: 0,
                    witness: format!("{} has {} roots below a({})", p.to_text(), counts[k], k + 1),
                    witness_file: None,
                });
            }
        }
        report.checks.push(check);
    }
    report.verdict = report.checks.iter().all(|c| c.passed());
    report.set("degree", n);
    report.set("nonzero_polynomials", 3usize.pow(n as u32 + 1) - 1);
    report.set("normalized_polynomials", polys.len());
    report.set("max_counts", &max_counts);
    report.set("uncertain_moduli", per_poly.iter().map(|x| x.1).sum::<usize>());
    report.set("radii", radii.iter().map(IntervalRepr::from).collect::<Vec<_>>());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_is_one_quarter() {
        let a = jensen_radius(1, 128).unwrap();
        assert!(a.contains_rational(&Rational::new(1.into(), 4.into())));
        assert!(a.width_at_most(-120));
    }

    #[test]
    fn a2_matches_closed_form() {
        // a(2) = (2/3) / sqrt(3)
        let a = jensen_radius(2, 128).unwrap();
        let three = IntervalScalar::from_int(3, 160).sqrt().unwrap();
        let oracle = IntervalScalar::from_rational(&Rational::new(2.into(), 3.into()), 160).div(&three).unwrap();
        assert!(a.overlaps(&oracle));
    }

    #[test]
    fn separation_degree_one() {
        let r = separation_audit(1, &default_pair_threshold()).unwrap();
        assert_eq!(r.get("distinct_roots").unwrap(), 3);
        assert_eq!(r.get("min_distance_lower_f64").unwrap().as_f64().unwrap(), 1.0);
        assert!(!r.asserted);
    }

    #[test]
    fn separation_degree_two_exhaustive() {
        let r = separation_audit(2, &default_pair_threshold()).unwrap();
        assert!(r.verdict);
        assert!(r.get("min_distance_lower_f64").unwrap().as_f64().unwrap() > 2f64.powi(-7));
    }

    #[test]
    fn jensen_degree_four() {
        let r = jensen_audit(4, 1).unwrap();
        assert!(r.verdict);
        assert_eq!(r.get("nonzero_polynomials").unwrap(), 242);
        assert!(r.get("max_counts").unwrap()[0].as_u64().unwrap() <= 1);
    }
}
