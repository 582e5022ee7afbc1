use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

use super::*;
use crate::algebra::{AlgebraicNumber, IntPolynomial, SignPolynomial};
use crate::numerics::{parse_rational, IntervalScalar, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn pow_inv(b: i64, e: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(b).pow(e))
}

fn golden() -> AlgebraicNumber {
    let p = IntPolynomial::from_i64s(&[-1, 1, 1]);
    AlgebraicNumber::from_isolator(&p, &IntervalScalar::from_rational_bounds(&q(3, 5), &q(7, 10), 64)).unwrap()
}

fn sp(c: &[i8], bound: usize) -> SignPolynomial {
    SignPolynomial::new(c.to_vec(), bound).unwrap()
}

#[test]
fn dyadic_parameter_has_no_collisions() {
    let lam = Parameter::Rational(q(1, 2));
    for t in [q(0, 1), q(1, 3), q(-5, 7)] {
        let c = collision_search(&lam, 10, &pow_inv(2, 20), &t).unwrap();
        assert!(c.pairs.is_empty() && c.difference_polys.is_empty());
    }
}

#[test]
fn golden_level_three_pair() {
    let lam = Parameter::Algebraic(golden());
    let r = pow_inv(10, 30);
    let c = collision_search(&lam, 3, &r, &q(0, 1)).unwrap();
    assert_eq!(c.pairs, vec![(vec![-1, 1, 1], vec![1, -1, -1])]);
    assert_eq!(c.difference_polys, vec![sp(&[-1, 1, 1], 2)]);
    assert!(c.uncertified.is_empty());
}

#[test]
fn seven_tenths_level_two_is_clear() {
    let lam = Parameter::Rational(q(7, 10));
    let c = collision_search(&lam, 2, &pow_inv(10, 6), &q(0, 1)).unwrap();
    assert!(c.pairs.is_empty());
    // every non-zero P in P_1 is at least 3/10 in size at 7/10
    for a in -1i64..=1 {
        for b in -1i64..=1 {
            let v = q(a, 1) + q(b * 7, 10);
            assert!(v == q(0, 1) && a == 0 && b == 0 || v.abs() >= q(3, 10));
        }
    }
}

#[test]
fn meet_in_the_middle_matches_brute_force() {
    let params = [
        Parameter::Rational(q(3, 5)),
        Parameter::Rational(q(2, 3)),
        Parameter::Rational(q(1, 2)),
        Parameter::Algebraic(golden()),
    ];
    for lam in &params {
        for n in [2usize, 5, 8, 10] {
            for (r, t) in [(q(1, 40), q(1, 7)), (q(1, 1000), q(0, 1)), (pow_inv(2, 40), q(2, 9))] {
                let fast = collision_search(lam, n, &r, &t).unwrap();
                let slow = brute_force_pairs(lam, n, &r, &t).unwrap();
                assert_eq!(fast.pairs, slow, "n = {n}, r = {r}, t = {t}");
            }
        }
    }
}

#[test]
fn pairs_have_small_certified_differences() {
    let lam = Parameter::Rational(q(3, 5));
    let r = q(1, 30);
    let c = collision_search(&lam, 7, &r, &q(1, 11)).unwrap();
    assert!(!c.pairs.is_empty());
    for (w, w2) in &c.pairs {
        let p: Vec<i8> = w.iter().zip(w2).map(|(a, b)| (a - b) / 2).collect();
        let p = SignPolynomial::new(p, 6).unwrap();
        assert!(c.difference_polys.contains(&p));
        let v = p.to_int().eval_rational(&q(3, 5));
        assert!(v.abs() <= r && v.abs() < &r / q(2, 1));
    }
}

#[test]
fn interval_parameter_policies() {
    let lo = parse_rational("0.6180339887").unwrap();
    let hi = parse_rational("0.6180339888").unwrap();
    let lam = Parameter::Interval(IntervalScalar::from_rational_bounds(&lo, &hi, 128));
    let r = pow_inv(10, 30);
    let strict = collision_search(&lam, 3, &r, &q(1, 3));
    assert!(matches!(strict, Err(e) if e.is_precision_limited()));
    let ctx = crate::numerics::PrecisionContext::new(256, 4096);
    let loose = collision_search_with(&lam, 3, &r, &q(1, 3), Policy::Inclusive, &ctx).unwrap();
    assert!(loose.pairs.is_empty());
    assert!(loose.uncertified.contains(&(vec![-1, 1, 1], vec![1, -1, -1])));
}

#[test]
fn rejects_bad_arguments() {
    let lam = Parameter::Rational(q(1, 2));
    assert!(collision_search(&lam, 1, &q(1, 10), &q(0, 1)).is_err());
    assert!(collision_search(&lam, 4, &q(0, 1), &q(0, 1)).is_err());
    assert!(collision_search(&Parameter::Rational(q(3, 2)), 4, &q(1, 10), &q(0, 1)).is_err());
}

fn golden_interval() -> Parameter {
    let lo = parse_rational("0.618033988749894848200").unwrap();
    let hi = parse_rational("0.618033988749894848210").unwrap();
    Parameter::Interval(IntervalScalar::from_rational_bounds(&lo, &hi, 256))
}

#[test]
fn certificate_from_interval_parameter() {
    let lam = golden_interval();
    let r = pow_inv(10, 18);
    let c = common_root_certificate(&[sp(&[-1, 1, 1], 2)], &lam, 2, &r).unwrap();
    assert!(c.eta.equals(&golden()).unwrap());
    assert!(c.distance.rational_hi() <= pow_inv(10, 19));
    assert!(!c.asserted && c.bound_holds);
    assert_eq!(c.eta_equals_lambda, None);
    c.reverify(&lam, 512).unwrap();
}

#[test]
fn certificate_gcd_collapses() {
    let lam = golden_interval();
    let r = pow_inv(10, 18);
    let a = [sp(&[-1, 1, 1], 3), sp(&[0, -1, 1, 1], 3)];
    let c = common_root_certificate(&a, &lam, 3, &r).unwrap();
    assert_eq!(c.gcd.primitive(), IntPolynomial::from_i64s(&[-1, 1, 1]));
    assert!(c.eta.equals(&golden()).unwrap());
    assert_eq!(c.vanishing.len(), 2);
    c.bezout.verify().unwrap();
}

#[test]
fn certificate_preconditions() {
    let lam = golden_interval();
    let a = [sp(&[-1, 1, 1], 2)];
    assert!(matches!(
        common_root_certificate(&a, &lam, 2, &q(1, 100)),
        Err(crate::Error::PreconditionUnmet(_))
    ));
    assert!(matches!(
        common_root_certificate(&[], &lam, 2, &pow_inv(10, 18)),
        Err(crate::Error::PreconditionUnmet(_))
    ));
    // x + 1 is not small at the parameter
    assert!(matches!(
        common_root_certificate(&[sp(&[1, 1], 2)], &lam, 2, &pow_inv(10, 18)),
        Err(crate::Error::PreconditionUnmet(_))
    ));
}

#[test]
fn dichotomy_witness_for_dyadic_parameter() {
    let lam = Parameter::Rational(q(1, 2));
    let r = level_scale(12, 3);
    let d = dichotomy(&lam, 12, &r).unwrap();
    assert!(d.is_witness());
    assert!(d.entropy.contains_rational(&q(12, 1)));
    assert!(d.entropy.width_at_most(-40));
    let c = collision_search(&lam, 12, &r, &d.t).unwrap();
    assert!(c.pairs.is_empty());
}

#[test]
fn dichotomy_witness_at_three_fifths() {
    let lam = Parameter::Rational(q(3, 5));
    let d = dichotomy(&lam, 4, &pow_inv(4, 12)).unwrap();
    assert!(d.is_witness());
    assert!(d.entropy.contains_rational(&q(4, 1)));
}

#[test]
fn dichotomy_precondition() {
    let lam = Parameter::Rational(q(1, 2));
    assert!(matches!(dichotomy(&lam, 4, &q(1, 1000)), Err(crate::Error::PreconditionUnmet(_))));
}

#[test]
fn dichotomy_certificate_for_golden() {
    let lam = Parameter::Algebraic(golden());
    let d = dichotomy(&lam, 9, &level_scale(9, 3)).unwrap();
    let cert = d.certificate().expect("collisions are forced");
    assert_eq!(cert.eta_equals_lambda, Some(true));
    assert!(cert.asserted && cert.bound_holds);
    assert!(!d.collisions().unwrap().pairs.is_empty());
    cert.reverify(&lam, 384).unwrap();
    match &d.outcome {
        Outcome::ApproximationCertificate { eta_per_step, bound_consistent, per_step_bound, .. } => {
            assert_eq!(*bound_consistent, Some(true));
            assert!(eta_per_step.as_ref().unwrap().rational_hi() < q(1, 1));
            assert!(per_step_bound.rational_hi() < q(1, 1));
        }
        _ => unreachable!(),
    }
}

#[test]
fn nearby_certificates_agree_exactly() {
    let lam = Parameter::Algebraic(golden());
    let a = dichotomy(&lam, 9, &level_scale(9, 3)).unwrap();
    let b = dichotomy(&lam, 10, &level_scale(10, 3)).unwrap();
    let (ea, eb) = (&a.certificate().unwrap().eta, &b.certificate().unwrap().eta);
    let gap = (&ea.enclosure() - &eb.enclosure()).abs();
    let m = 10usize;
    let threshold = level_scale(m, 4) * q(2, 1);
    assert!(gap.rational_lo() < threshold);
    assert!(ea.equals(eb).unwrap());
}

/// `F_k / F_(k+1)` within `9^-39` of the golden inverse, moved by `9^-37`.
fn perturbed_golden() -> Rational {
    let (mut a, mut b) = (BigInt::one(), BigInt::one());
    let target = BigInt::from(9).pow(39);
    while &b * &b <= target {
        let c = &a + &b;
        a = b;
        b = c;
    }
    Rational::new(a, b) + pow_inv(9, 37)
}

#[test]
fn full_entropy_near_golden() {
    let lam = Parameter::Rational(perturbed_golden());
    let rep = full_entropy_check(&lam, &golden(), 9).unwrap();
    assert!(rep.verdict && rep.asserted, "{rep:?}");
    assert_eq!(rep.get("support").unwrap(), 512);
}

#[test]
fn full_entropy_guards() {
    let far = Parameter::Rational(q(5, 8));
    assert!(matches!(full_entropy_check(&far, &golden(), 9), Err(crate::Error::PreconditionUnmet(_))));
    let same = Parameter::Algebraic(golden());
    assert!(matches!(full_entropy_check(&same, &golden(), 9), Err(crate::Error::PreconditionUnmet(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn mitm_complete_on_small_rationals(p in 1i64..12, extra in 1i64..12, n in 2usize..8, rd in 2i64..200, tn in 0i64..13) {
        let lam = Parameter::Rational(q(p, p + extra));
        let r = q(1, rd);
        let t = q(tn, 13);
        let fast = collision_search(&lam, n, &r, &t).unwrap();
        let slow = brute_force_pairs(&lam, n, &r, &t).unwrap();
        prop_assert_eq!(fast.pairs, slow);
    }
}
