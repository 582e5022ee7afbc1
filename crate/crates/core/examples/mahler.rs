//! Mahler measures of a few classical polynomials.

use bcl::algebra::{mahler_measure, IntPolynomial};
use bcl::numerics::Dyadic;

fn main() -> bcl::Result<()> {
    for text in ["-2,1", "-1,-1,1", "1,1,0,-1,-1,-1,-1,-1,0,1,1"] {
        let p = IntPolynomial::parse(text)?;
        let m = mahler_measure(&p, &Dyadic::pow2(-60))?;
        println!("M({p}) in {m}  (~{:.14})", m.to_f64());
    }
    Ok(())
}
