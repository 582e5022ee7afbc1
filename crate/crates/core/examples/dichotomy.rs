//! Entropy/approximation dichotomy at level 12 and scale 12^-36 for the
//! golden-mean inverse and for 1/2.

use bcl::algebra::{AlgebraicNumber, IntPolynomial};
use bcl::diophantine::{dichotomy, level_scale, Outcome};
use bcl::measures::Parameter;
use bcl::numerics::{parse_rational, IntervalScalar};

fn main() -> bcl::Result<()> {
    let golden = AlgebraicNumber::from_isolator(
        &IntPolynomial::parse("-1,1,1")?,
        &IntervalScalar::from_rational_bounds(&parse_rational("0.6")?, &parse_rational("0.7")?, 64),
    )?;
    let r = level_scale(12, 3);
    for lam in [Parameter::Algebraic(golden), Parameter::Rational(parse_rational("1/2")?)] {
        let d = dichotomy(&lam, 12, &r)?;
        match &d.outcome {
            Outcome::EntropyWitness { bits } => println!("entropy witness: H = {bits} bits ({})", d.entropy),
            Outcome::ApproximationCertificate { collisions, certificate, eta_per_step, .. } => {
                println!(
                    "certificate: {} pairs, gcd {}, eta = lambda: {:?}, H/n = {:.6}, H_n(eta)/n = {:?}",
                    collisions.pairs.len(),
                    certificate.gcd,
                    certificate.eta_equals_lambda,
                    d.entropy.to_f64() / 12.0,
                    eta_per_step.as_ref().map(|h| h.to_f64()),
                );
            }
        }
    }
    Ok(())
}
