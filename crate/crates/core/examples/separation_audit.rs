//! Root separation over P_n: `cargo run --release --example separation_audit -- 9`

use bcl::algebra::audit::{default_pair_threshold, separation_audit};

fn main() -> bcl::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let report = separation_audit(n, &default_pair_threshold())?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
