use num_traits::Signed;

use super::poly::IntPolynomial;
use super::roots::isolate_roots_with;
use crate::error::{Error, Result};
use crate::numerics::{Dyadic, IntervalScalar, PrecisionContext};

/// Enclosure of `|a_d| Π max(1, |root|)` (roots with multiplicity) of width
/// at most `eps`.
///
/// Roots whose modulus straddles 1 contribute the honest factor
/// `[1, |z|.hi]`; refinement continues until the product is narrow enough.
pub fn mahler_measure(p: &IntPolynomial, eps: &Dyadic) -> Result<IntervalScalar> {
    mahler_measure_with(p, eps, &PrecisionContext::default())
}

pub fn mahler_measure_with(p: &IntPolynomial, eps: &Dyadic, ctx: &PrecisionContext) -> Result<IntervalScalar> {
    let d = p.degree().ok_or_else(|| Error::PreconditionUnmet("Mahler measure of 0".into()))?;
    let lead = p.leading().unwrap().abs();
    if d == 0 {
        return Ok(IntervalScalar::from_bigint(&lead, ctx.start));
    }
    let target = if eps.is_zero() { -(ctx.cap as i64) } else { eps.msb() };
    let size_bits = lead.bits() as i64 + 2 * d as i64 + 8;
    let mut root_exp = target - size_bits;
    loop {
        let prec = ((-root_exp).max(0) as u32 + 32).max(ctx.start);
        let roots = isolate_roots_with(p, &Dyadic::pow2(root_exp), &PrecisionContext::new(prec, ctx.cap.max(prec)))?;
        let one = IntervalScalar::one(prec);
        let mut m = IntervalScalar::from_bigint(&lead, prec);
        for r in &roots {
            let modulus = r.root.enclosure().abs().with_precision(prec);
            m = &m * &modulus.max(&one).pow(r.multiplicity as u32);
        }
        if m.width() <= *eps {
            return Ok(m);
        }
        if -root_exp > 2 * ctx.cap as i64 {
            return Err(Error::cap("Mahler measure refinement", ctx.cap as u64));
        }
        root_exp -= 32.max(-root_exp / 2);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn linear_is_exact() {
        let m = mahler_measure(&p(&[-2, 1]), &Dyadic::pow2(-40)).unwrap();
        assert!(m.is_point());
        assert_eq!(m.lo(), &Dyadic::from_int(2));
    }

    #[test]
    fn golden_ratio_against_quadratic_formula() {
        let m = mahler_measure(&p(&[-1, -1, 1]), &Dyadic::pow2(-50)).unwrap();
        let five = IntervalScalar::from_int(5, 200).sqrt().unwrap();
        let phi = (&five + &IntervalScalar::one(200)).mul_pow2(-1);
        assert!(m.overlaps(&phi));
        let tol = Rational::new(BigInt::from(1), BigInt::from(10).pow(12));
        assert!(m.within(&phi.rational_lo(), &tol));
    }

    #[test]
    fn cyclotomic_measure_is_one() {
        let m = mahler_measure(&p(&[1, 1, 1]), &Dyadic::pow2(-30)).unwrap();
        assert!(m.contains(&Dyadic::one()));
        assert!(m.width() <= Dyadic::pow2(-30));
    }

    #[test]
    fn multiplicativity_on_samples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let a: Vec<i64> = (0..4).map(|_| rng.random_range(-2..=2)).chain([1]).collect();
            let b: Vec<i64> = (0..3).map(|_| rng.random_range(-2..=2)).chain([2]).collect();
            let (pa, pb) = (p(&a), p(&b));
            let prod = &pa * &pb;
            let mab = mahler_measure(&prod, &Dyadic::pow2(-60)).unwrap();
            let ma = mahler_measure(&pa, &Dyadic::pow2(-30)).unwrap();
            let mb = mahler_measure(&pb, &Dyadic::pow2(-30)).unwrap();
            assert!((&ma * &mb).contains_interval(&mab), "{a:?} {b:?}");
        }
    }
}
