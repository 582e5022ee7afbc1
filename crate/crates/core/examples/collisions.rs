//! Collision search at a scale r and a bin offset t, compared with the
//! brute-force pair scan.

use bcl::diophantine::{brute_force_pairs, collision_search};
use bcl::measures::Parameter;
use bcl::numerics::parse_rational;

fn main() -> bcl::Result<()> {
    let lam = Parameter::Rational(parse_rational("3/5")?);
    let (r, t) = (parse_rational("1/200")?, parse_rational("1/7")?);
    let c = collision_search(&lam, 9, &r, &t)?;
    println!("{} pairs, {} difference polynomials", c.pairs.len(), c.difference_polys.len());
    for p in c.difference_polys.iter().take(5) {
        println!("  {}", p.to_text());
    }
    println!("matches brute force: {}", c.pairs == brute_force_pairs(&lam, 9, &r, &t)?);
    Ok(())
}
