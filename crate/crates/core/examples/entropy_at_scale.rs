//! Entropy at scale by the breakpoint sweep and by smoothing, plus the
//! conditional entropy between two scales.

use bcl::entropy::{cond_entropy, entropy_at_scale, shannon, Method};
use bcl::measures::bernoulli_level;
use bcl::numerics::parse_rational;

fn main() -> bcl::Result<()> {
    let mu = bernoulli_level(&parse_rational("3/5")?, 8)?;
    println!("Shannon entropy: {:.6} bits", shannon(&mu).to_f64());
    for r in ["1/2", "1/16", "1/1024"] {
        let r = parse_rational(r)?;
        let s = entropy_at_scale(&mu, &r, Method::Sweep)?;
        let m = entropy_at_scale(&mu, &r, Method::Smoothed)?;
        println!("H(mu; {r}): sweep {:.9}, smoothed {:.9}", s.value.to_f64(), m.value.to_f64());
    }
    let c = cond_entropy(&mu, &parse_rational("1/64")?, &parse_rational("1/4")?, Method::Sweep)?;
    println!("H(mu; 1/64 | 1/4) = {:.6}", c.value.to_f64());
    Ok(())
}
