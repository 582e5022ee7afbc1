//! Bézout certificate for a set of {-1,0,1} polynomials with a common
//! factor, re-verified in exact arithmetic.

use bcl::algebra::{bezout_certificate, cofactor_height_bound, IntPolynomial, SignPolynomial};

fn main() -> bcl::Result<()> {
    let n = 6;
    let members = ["-1,1,1", "0,-1,1,1", "-1,1,1,0,-1,1,1"]
        .iter()
        .map(|s| SignPolynomial::from_int(&IntPolynomial::parse(s)?, n))
        .collect::<bcl::Result<Vec<_>>>()?;
    let cert = bezout_certificate(&members, n)?;
    println!("gcd = {}", cert.gcd);
    for (p, q) in cert.members.iter().zip(&cert.cofactors) {
        println!("  ({}) * [{}]", q.to_text(), p.to_text());
    }
    println!("identity verified: {:?}", cert.verify());
    println!("max height {} <= {}", cert.max_height(), cofactor_height_bound(n));
    Ok(())
}
