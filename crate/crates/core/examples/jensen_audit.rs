//! Small roots of P_n against a(k): `cargo run --release --example jensen_audit -- 8 6`

use bcl::algebra::jensen_audit;

fn main() -> bcl::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(6);
    let k: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let report = jensen_audit(n, k)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
