//! Atomic measures: level distributions, convolution, rescaling, atom files
//! and smoothing by a uniform window.

use bcl::measures::{atoms_to_csv, bernoulli_level, parse_atoms, smooth, AtomicMeasure};
use bcl::numerics::parse_rational;

fn main() -> bcl::Result<()> {
    let lam = parse_rational("2/3")?;
    let level = bernoulli_level(&lam, 4)?;
    println!("level 4 at 2/3: {} atoms", level.len());

    let mu = parse_atoms("position,weight\n0,1/2\n1/3,1/4\n1,1/4\n")?;
    let nu = AtomicMeasure::uniform(&[parse_rational("0")?, parse_rational("1/2")?])?;
    let conv = mu.convolve(&nu)?;
    print!("convolution:\n{}", atoms_to_csv(&conv));
    let flipped: Vec<String> = conv.rescale(&parse_rational("-2")?)?.atoms().iter().map(|x| x.to_string()).collect();
    println!("rescaled by -2: {}", flipped.join(" "));

    let f = smooth(&nu, &parse_rational("1")?)?;
    for (a, b, v) in f.pieces() {
        println!("density {v} on [{a}, {b})");
    }
    Ok(())
}
