//! Garsia entropy upper bounds for the golden-mean inverse along the
//! doubling schedule, cached on disk.

use bcl::algebra::IntPolynomial;
use bcl::garsia::{garsia_bounds_with, GarsiaOptions};
use bcl::numerics::{parse_rational, IntervalScalar};

fn main() -> bcl::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(16);
    let poly = IntPolynomial::parse("-1,1,1")?;
    let iso = IntervalScalar::from_rational_bounds(&parse_rational("0.6")?, &parse_rational("0.7")?, 64);
    let dir = std::env::temp_dir().join("bcl-example-cache");
    let opts = GarsiaOptions {
        cache: Some(&dir),
        ..GarsiaOptions::default()
    };
    let report = garsia_bounds_with(&poly, &iso, n, &opts)?;
    for l in &report.levels {
        println!(
            "n = {:>3}  support {:>6}  H_n/n = {:.6}  dim <= {:.6}",
            l.n,
            l.support,
            l.per_step.to_f64(),
            l.dim_bound.to_f64()
        );
    }
    println!("subadditivity holds: {}", report.subadditivity.passed());
    Ok(())
}
