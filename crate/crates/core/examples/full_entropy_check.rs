//! Full entropy at level 9 for a rational parameter just off the golden
//! mean inverse.

use bcl::algebra::{AlgebraicNumber, IntPolynomial};
use bcl::diophantine::full_entropy_check;
use bcl::measures::Parameter;
use bcl::numerics::{parse_rational, IntervalScalar, Rational};
use num_bigint::BigInt;
use num_traits::One;

fn main() -> bcl::Result<()> {
    let eta = AlgebraicNumber::from_isolator(
        &IntPolynomial::parse("-1,1,1")?,
        &IntervalScalar::from_rational_bounds(&parse_rational("0.6")?, &parse_rational("0.7")?, 64),
    )?;
    let (mut a, mut b) = (BigInt::one(), BigInt::one());
    while &b * &b <= BigInt::from(9).pow(39) {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    let lam = Rational::new(a, b) + Rational::new(BigInt::one(), BigInt::from(9).pow(37));
    let report = full_entropy_check(&Parameter::Rational(lam), &eta, 9)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
