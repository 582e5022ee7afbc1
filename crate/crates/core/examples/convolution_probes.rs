//! Entropy gain of a convolution between two scales, and the normalized
//! entropies of a level distribution at scales lambda^k.

use bcl::entropy::{convolution_gain_probe, monotone_fk_probe};
use bcl::measures::{bernoulli_level, AtomicMeasure};
use bcl::numerics::parse_rational;

fn main() -> bcl::Result<()> {
    let lam = parse_rational("3/5")?;
    let mu = bernoulli_level(&lam, 6)?;
    let nu = AtomicMeasure::uniform(&[parse_rational("0")?, parse_rational("1/100")?])?;
    let g = convolution_gain_probe(&mu, &nu, &parse_rational("1/256")?, &parse_rational("1/8")?)?;
    println!("gain {:.6} bits", g.gain.to_f64());
    for e in monotone_fk_probe(&lam, 10, 6)? {
        println!("k = {}: {:.6}", e.k, e.value.to_f64());
    }
    Ok(())
}
