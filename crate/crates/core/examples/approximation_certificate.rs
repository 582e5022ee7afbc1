//! Common-root certificate for a parameter known only to 20 digits.

use bcl::algebra::{IntPolynomial, SignPolynomial};
use bcl::diophantine::common_root_certificate;
use bcl::measures::Parameter;
use bcl::numerics::{parse_rational, IntervalScalar};

fn main() -> bcl::Result<()> {
    let lo = parse_rational("0.618033988749894848200")?;
    let hi = parse_rational("0.618033988749894848210")?;
    let lam = Parameter::Interval(IntervalScalar::from_rational_bounds(&lo, &hi, 256));
    let a = [SignPolynomial::from_int(&IntPolynomial::parse("-1,1,1")?, 2)?];
    let r = parse_rational("1/1000000000000000000")?;
    let cert = common_root_certificate(&a, &lam, 2, &r)?;
    println!("eta is a root of {}", cert.eta.defining());
    println!("|lambda - eta| <= {:e}", cert.distance.hi().to_f64());
    println!("bound {}: {:e} (holds: {})", cert.bound_exponent, cert.bound.to_f64(), cert.bound_holds);
    println!("re-verified: {:?}", cert.reverify(&lam, 512));
    Ok(())
}
