//! Seeded property suite over random atomic measures:
//! `cargo run --release --example property_suite -- 1 100`

use bcl::entropy::{run_property_suite, CorpusConfig};

fn main() -> bcl::Result<()> {
    let mut args = std::env::args().skip(1);
    let cfg = CorpusConfig {
        seed: args.next().and_then(|s| s.parse().ok()).unwrap_or(1),
        cases: args.next().and_then(|s| s.parse().ok()).unwrap_or(40),
        ..CorpusConfig::default()
    };
    let report = run_property_suite(&cfg)?;
    for c in &report.checks {
        println!("{:<24} {} cases, {} failures", c.check_id, c.cases, c.failures.len());
    }
    Ok(())
}
