//! Polynomial gcds over Z and Q, square-free decomposition.

use num_traits::One;

use super::poly::{IntPolynomial, RatPolynomial};
use crate::error::{Error, Result};

/// Primitive gcd in `Z[x]` with positive leading coefficient, by the
/// primitive remainder sequence. `gcd(0, 0) = 0`.
pub fn gcd_pair(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let (mut u, mut v) = if a.degree() >= b.degree() {
        (a.primitive(), b.primitive())
    } else {
        (b.primitive(), a.primitive())
    };
    while !v.is_zero() {
        let r = u.pseudo_rem(&v);
        u = v;
        v = r.primitive();
    }
    u.primitive()
}

/// Primitive gcd of a set of integer polynomials.
pub fn gcd_set(polys: &[IntPolynomial]) -> Result<IntPolynomial> {
    if polys.iter().all(|p| p.is_zero()) {
        return Err(Error::AllZero);
    }
    let mut g = IntPolynomial::zero();
    for p in polys {
        g = gcd_pair(&g, p);
        if g.is_constant() && !g.is_zero() {
            return Ok(IntPolynomial::one());
        }
    }
    Ok(g)
}

/// Primitive square-free part.
pub fn square_free_part(p: &IntPolynomial) -> IntPolynomial {
    if p.is_constant() {
        return p.primitive();
    }
    let g = gcd_pair(p, &p.derivative());
    if g.is_constant() {
        return p.primitive();
    }
    p.div_exact(&g)
        .expect("gcd with the derivative divides")
        .primitive()
}

/// Yun's square-free decomposition: `factors[i]` has multiplicity `i + 1`,
/// all primitive, product equal to `p` up to a constant.
pub fn square_free_decomposition(p: &IntPolynomial) -> Vec<IntPolynomial> {
    assert!(!p.is_zero());
    let p = p.primitive();
    if p.is_constant() {
        return vec![];
    }
    let dp = p.derivative();
    if gcd_pair(&p, &dp).is_constant() {
        return vec![p];
    }
    // Over Q with monic gcds so that every quotient is exact.
    let f = p.to_rat();
    let df = dp.to_rat();
    let a0 = rat_gcd(&f, &df);
    let mut b = f.div_rem(&a0).0;
    let c = df.div_rem(&a0).0;
    let mut d = &c - &rat_derivative(&b);
    let mut out = Vec::new();
    loop {
        let a = rat_gcd(&b, &d);
        out.push(a.to_int_scaled().0.primitive());
        b = b.div_rem(&a).0;
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        let c = d.div_rem(&a).0;
        d = &c - &rat_derivative(&b);
    }
    while out.last().is_some_and(|f| f.is_constant()) {
        out.pop();
    }
    out
}

fn rat_gcd(a: &RatPolynomial, b: &RatPolynomial) -> RatPolynomial {
    let g = gcd_pair(&a.to_int_scaled().0, &b.to_int_scaled().0);
    g.to_rat().monic()
}

fn rat_derivative(a: &RatPolynomial) -> RatPolynomial {
    RatPolynomial::new(
        a.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * num_rational::BigRational::from_integer(i.into()))
            .collect(),
    )
}

/// Extended Euclid over Q: `(g, s, t)` with `s a + t b = g`, `g` monic
/// (or zero when both inputs are zero).
pub fn xgcd(a: &RatPolynomial, b: &RatPolynomial) -> (RatPolynomial, RatPolynomial, RatPolynomial) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (RatPolynomial::constant(One::one()), RatPolynomial::zero());
    let (mut t0, mut t1) = (RatPolynomial::zero(), RatPolynomial::constant(One::one()));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    match r0.leading().cloned() {
        None => (r0, s0, t0),
        Some(l) => {
            let inv = num_rational::BigRational::one() / l;
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        }
    }
}

/// Number of polynomials in `P_d`.
pub fn sign_poly_count(d: usize) -> u128 {
    3u128.pow(d as u32 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn gcd_of_x2_minus_1_and_x3_minus_1() {
        assert_eq!(gcd_set(&[p(&[-1, 0, 1]), p(&[-1, 0, 0, 1])]).unwrap(), p(&[-1, 1]));
    }

    #[test]
    fn gcd_of_single_member_is_primitive_part() {
        assert_eq!(gcd_set(&[p(&[2, 0, -4])]).unwrap(), p(&[-1, 0, 2]));
    }

    #[test]
    fn gcd_recovers_constructed_common_factor() {
        let g = p(&[-1, 1, 1]);
        let a = &g * &p(&[0, 1]);
        let b = &g * &p(&[1, 1]);
        let d = gcd_set(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(d, g);
        assert!(d.divides(&a) && d.divides(&b));
    }

    #[test]
    fn gcd_of_all_zero_fails() {
        assert!(matches!(gcd_set(&[IntPolynomial::zero()]), Err(Error::AllZero)));
        assert_eq!(gcd_set(&[IntPolynomial::zero(), p(&[0, 3])]).unwrap(), p(&[0, 1]));
    }

    #[test]
    fn yun_decomposition_recovers_multiplicities() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 0, 1, 1]);
        // a^1 * b^3
        let prod = &a * &(&b * &(&b * &b));
        let f = square_free_decomposition(&prod);
        assert_eq!(f.len(), 3);
        assert_eq!(f[0], a);
        assert!(f[1].is_constant());
        assert_eq!(f[2], b);
        assert_eq!(square_free_part(&prod), (&a * &b).primitive());
    }

    #[test]
    fn xgcd_identity() {
        let a = p(&[-1, 0, 1]).to_rat();
        let b = p(&[1, 0, 0, 1]).to_rat();
        let (g, s, t) = xgcd(&a, &b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert_eq!(g, p(&[1, 1]).to_rat());
    }
}
