//! Acceptance suite. Every criterion is evaluated from the JSON reports of
//! the command-line front end run with `--threads 1`; the last criterion
//! reruns every invocation with `--threads 8` and compares bytes.
//!
//! `cargo test --release --test acceptance -- 4 8` runs a subset.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use bcl::algebra::{cofactor_height_bound, IntPolynomial};
use bcl::cli::{self, EXIT_OK};
use bcl::diophantine::brute_force_pairs;
use bcl::measures::Parameter;
use bcl::numerics::{parse_rational, Dyadic, IntervalRepr, IntervalScalar};

type Check = Box<dyn Fn(&[Value]) -> Result<String, String>>;

struct Criterion {
    id: usize,
    title: &'static str,
    budget: Duration,
    invocations: Vec<Vec<String>>,
    check: Check,
}

struct Run {
    code: i32,
    stdout: String,
}

fn run_cli(args: &[String], threads: usize) -> Run {
    let mut argv = vec!["bcl".to_string(), "--threads".into(), threads.to_string()];
    argv.extend(args.iter().cloned());
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).expect("utf-8 report"),
    }
}

fn args(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

fn interval(v: &Value) -> Result<IntervalScalar, String> {
    let repr: IntervalRepr = serde_json::from_value(v.clone()).map_err(|e| format!("not an interval: {v} ({e})"))?;
    repr.parse(256).map_err(|e| e.to_string())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report(doc: &Value) -> &Value {
    &doc["report"]
}

fn verdict_true(doc: &Value) -> Result<(), String> {
    ensure(report(doc)["verdict"] == Value::Bool(true), || format!("verdict false in {}", report(doc)["audit"]))
}

fn no_failures(doc: &Value) -> Result<usize, String> {
    let checks = report(doc)["checks"].as_array().ok_or("no checks")?;
    let failures: usize = checks.iter().map(|c| c["failures"].as_array().map_or(0, |f| f.len())).sum();
    ensure(failures == 0, || format!("{failures} failures"))?;
    Ok(checks.len())
}

fn exact(v: &Value, q: &str) -> Result<(), String> {
    let x = interval(v)?;
    let q = parse_rational(q).unwrap();
    ensure(x.rational_lo() == q && x.rational_hi() == q, || format!("{v} is not exactly {q}"))
}

fn close_to(v: &Value, target: f64, tol: f64) -> Result<(), String> {
    let x = interval(v)?;
    let (lo, hi) = (x.lo().to_f64(), x.hi().to_f64());
    ensure((lo - target).abs() < tol && (hi - target).abs() < tol, || {
        format!("[{lo}, {hi}] not within {tol} of {target}")
    })
}

fn criterion_1() -> Criterion {
    Criterion {
        id: 1,
        title: "dual-oracle entropy agreement",
        budget: Duration::from_secs(60),
        invocations: vec![args(
            "props --suite dual-oracle --seed 1 --cases 200 --max-atoms 64 --scales 3 --slack-exp=-40",
        )],
        check: Box::new(|docs| {
            verdict_true(&docs[0])?;
            no_failures(&docs[0])?;
            let cases = report(&docs[0])["checks"][0]["cases"].as_u64().unwrap_or(0);
            ensure(cases == 600, || format!("{cases} comparisons"))?;
            Ok(format!(
                "{cases} comparisons, widest hull {}",
                report(&docs[0])["summary"]["widest_hull"].as_str().unwrap_or("?")
            ))
        }),
    }
}

fn criterion_2() -> Criterion {
    Criterion {
        id: 2,
        title: "property suite (a)-(h)",
        budget: Duration::from_secs(300),
        invocations: vec![args("props --seed 1 --cases 500 --slack-exp=-40")],
        check: Box::new(|docs| {
            verdict_true(&docs[0])?;
            let n = no_failures(&docs[0])?;
            ensure(n == 8, || format!("{n} checks"))?;
            for c in report(&docs[0])["checks"].as_array().unwrap() {
                ensure(c["cases"] == 500, || format!("{} ran {} cases", c["check_id"], c["cases"]))?;
            }
            Ok("8 checks x 500 cases, 0 failures".into())
        }),
    }
}

fn levels(doc: &Value) -> Result<Vec<(u64, IntervalScalar, IntervalScalar, IntervalScalar)>, String> {
    report(doc)["levels"]
        .as_array()
        .ok_or("no levels")?
        .iter()
        .map(|l| {
            Ok((
                l["n"].as_u64().ok_or("n")?,
                interval(&l["entropy"])?,
                interval(&l["per_step"])?,
                interval(&l["dim_bound"])?,
            ))
        })
        .collect()
}

/// `H_2n / 2n <= H_n / n` up to `2^-40` for every doubling pair present.
fn doubling_monotone(ls: &[(u64, IntervalScalar, IntervalScalar, IntervalScalar)]) -> Result<usize, String> {
    let slack = Dyadic::pow2(-40);
    let mut pairs = 0;
    for (n, _, a, _) in ls {
        if !n.is_power_of_two() || *n > 8 {
            continue;
        }
        if let Some((_, _, b, _)) = ls.iter().find(|l| l.0 == 2 * n) {
            ensure((b - a).hi() <= &slack, || format!("H_{}/{} > H_{n}/{n}", 2 * n, 2 * n))?;
            pairs += 1;
        }
    }
    Ok(pairs)
}

fn criterion_3() -> Criterion {
    Criterion {
        id: 3,
        title: "Garsia exact values",
        budget: Duration::from_secs(120),
        invocations: vec![
            args("garsia --poly -1,1,1 --isolator 0.6,0.7 --n 3 --schedule dense"),
            args("garsia --poly -1,1,1 --isolator 0.6,0.7 --n 16"),
            args("garsia --poly -1,2 --isolator 0.4,0.6 --n 20 --schedule dense"),
        ],
        check: Box::new(|docs| {
            let g = levels(&docs[0])?;
            for ((_, h, _, _), want) in g.iter().zip(["1", "2", "11/4"]) {
                let q = parse_rational(want).unwrap();
                ensure(h.contains_rational(&q) && h.width_at_most(-40), || format!("H = {h} vs {want}"))?;
            }
            ensure(g.len() == 3, || "golden levels 1..3 missing".into())?;
            let pg = doubling_monotone(&levels(&docs[1])?)?;
            let half = levels(&docs[2])?;
            ensure(half.len() == 20, || format!("{} levels for 1/2", half.len()))?;
            for (n, h, _, d) in &half {
                exact(&serde_json::to_value(h).unwrap(), &n.to_string())?;
                exact(&serde_json::to_value(d).unwrap(), "1")?;
            }
            let ph = doubling_monotone(&half)?;
            ensure(pg == 4 && ph == 4, || format!("doubling pairs {pg} and {ph}"))?;
            for d in docs {
                no_failures_sub(d)?;
            }
            Ok("golden H_1..H_3 = 1, 2, 11/4; H_n = n and dim 1 at 1/2 for n <= 20; doubling monotone to 16".into())
        }),
    }
}

fn no_failures_sub(doc: &Value) -> Result<(), String> {
    let f = report(doc)["subadditivity"]["failures"].as_array().map_or(0, |f| f.len());
    ensure(f == 0, || format!("{f} subadditivity failures"))
}

fn criterion_4() -> Criterion {
    Criterion {
        id: 4,
        title: "Mahler measure",
        budget: Duration::from_secs(30),
        invocations: vec![
            args("mahler --poly -2,1"),
            args("mahler --poly -1,-1,1"),
            args("mahler --poly 1,1,0,-1,-1,-1,-1,-1,0,1,1"),
        ],
        check: Box::new(|docs| {
            exact(&report(&docs[0])["mahler"], "2")?;
            close_to(&report(&docs[1])["mahler"], (1.0 + 5f64.sqrt()) / 2.0, 1e-12)?;
            close_to(&report(&docs[2])["mahler"], 1.17628081825991, 1e-10)?;
            Ok("M(x-2) = 2, golden within 1e-12, Lehmer within 1e-10".into())
        }),
    }
}

fn criterion_5() -> Criterion {
    let mut invocations: Vec<Vec<String>> = (2..=8).map(|d| args(&format!("audit separation --degree {d}"))).collect();
    invocations.push(args("audit separation --degree 9"));
    Criterion {
        id: 5,
        title: "root separation audit",
        budget: Duration::from_secs(600),
        invocations,
        check: Box::new(|docs| {
            let mut minima = Vec::new();
            for d in &docs[..7] {
                let r = report(d);
                ensure(r["asserted"] == Value::Bool(false), || "low degree asserted".into())?;
                minima.push(format!("{}:{:.2e}", r["summary"]["degree"], r["summary"]["min_distance_lower_f64"].as_f64().unwrap_or(f64::NAN)));
            }
            let top = report(&docs[7]);
            ensure(top["asserted"] == Value::Bool(true), || "degree 9 not asserted".into())?;
            verdict_true(&docs[7])?;
            no_failures(&docs[7])?;
            let lower = Dyadic::parse(top["summary"]["min_distance_lower"].as_str().unwrap_or("")).map_err(|e| e.to_string())?;
            let bound = parse_rational(top["summary"]["bound"].as_str().unwrap_or("")).map_err(|e| e.to_string())?;
            ensure(lower.to_rational() > bound, || format!("min distance {lower} <= bound"))?;
            Ok(format!(
                "degree 9 min distance >= {:.3e} > 2*9^-36; observed {}",
                lower.to_f64(),
                minima.join(" ")
            ))
        }),
    }
}

fn criterion_6() -> Criterion {
    Criterion {
        id: 6,
        title: "Jensen root-count audit",
        budget: Duration::from_secs(300),
        invocations: vec![args("audit jensen --degree 8 --k-max 6")],
        check: Box::new(|docs| {
            verdict_true(&docs[0])?;
            let n = no_failures(&docs[0])?;
            ensure(n == 6, || format!("{n} values of k"))?;
            exact(&report(&docs[0])["summary"]["radii"][0], "1/4")?;
            Ok("k = 1..6 over P_8, a(1) = 1/4".into())
        }),
    }
}

/// Random members of `P_10`; odd subsets share a factor.
fn bezout_subsets() -> Vec<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let factors: [&[i64]; 4] = [&[-1, 1, 1], &[1, 1], &[1, 0, 1], &[-1, 1]];
    let mut out = Vec::new();
    for i in 0..100 {
        let size = rng.random_range(1..=5usize);
        let mut members = Vec::new();
        while members.len() < size {
            let coeffs: Vec<i64> = if i % 2 == 0 {
                (0..=10).map(|_| rng.random_range(-1..=1i64)).collect()
            } else {
                let f = factors[(i / 2) % factors.len()];
                let step = f.len();
                let mut g = vec![0i64; 11 - (f.len() - 1)];
                let mut k = rng.random_range(0..step);
                while k < g.len() {
                    if rng.random_bool(0.6) {
                        g[k] = if rng.random_bool(0.5) { 1 } else { -1 };
                    }
                    k += step;
                }
                let p = &IntPolynomial::from_i64s(f) * &IntPolynomial::from_i64s(&g);
                p.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
            };
            let p = IntPolynomial::from_i64s(&coeffs);
            if !p.is_zero() && p.is_sign_polynomial() {
                members.push(p.to_text());
            }
        }
        let mut a = args("bezout --n 10");
        for m in members {
            a.push(format!("--poly={m}"));
        }
        out.push(a);
    }
    out
}

fn criterion_7() -> Criterion {
    Criterion {
        id: 7,
        title: "Bezout certificates",
        budget: Duration::from_secs(120),
        invocations: bezout_subsets(),
        check: Box::new(|docs| {
            let bound = cofactor_height_bound(10);
            let mut divisor_checks = 0;
            let mut nontrivial = 0;
            for d in docs {
                let r = report(d);
                ensure(r["verified"] == Value::Bool(true), || format!("identity fails: {r}"))?;
                for q in r["certificate"]["cofactors"].as_array().ok_or("cofactors")? {
                    let deg = q.as_str().unwrap_or("").split(',').count() - 1;
                    ensure(deg <= 9, || format!("cofactor degree {deg}"))?;
                }
                let h: BigInt = r["max_height"].as_str().unwrap_or("").parse().map_err(|_| "height")?;
                ensure(h <= bound, || format!("height {h} exceeds 2^n (2n)!"))?;
                match &r["divisor_norm_check"] {
                    Value::Bool(true) => divisor_checks += 1,
                    Value::Bool(false) => return Err("l1(gcd) exceeds 2^n n".into()),
                    _ => {}
                }
                if r["certificate"]["gcd"].as_str().is_some_and(|g| g.contains(',')) {
                    nontrivial += 1;
                }
            }
            Ok(format!(
                "{} subsets verified, {nontrivial} with non-constant gcd, {divisor_checks} l1 checks",
                docs.len()
            ))
        }),
    }
}

const COLLISION_PARAMS: [&str; 4] = [
    "--lambda 3/5",
    "--lambda 2/3",
    "--lambda 1/2",
    "--lambda-minpoly=-1,1,1 --lambda-isolator 0.6,0.7",
];

fn collision_param(i: usize) -> Parameter {
    match i {
        0 => Parameter::Rational(parse_rational("3/5").unwrap()),
        1 => Parameter::Rational(parse_rational("2/3").unwrap()),
        2 => Parameter::Rational(parse_rational("1/2").unwrap()),
        _ => Parameter::Algebraic(
            bcl::algebra::AlgebraicNumber::from_isolator(
                &IntPolynomial::parse("-1,1,1").unwrap(),
                &IntervalScalar::from_rational_bounds(&parse_rational("0.6").unwrap(), &parse_rational("0.7").unwrap(), 64),
            )
            .unwrap(),
        ),
    }
}

fn criterion_8() -> Criterion {
    let mut invocations = vec![
        args("approx --lambda-minpoly=-1,1,1 --lambda-isolator 0.6,0.7 --n 12 --r n^-3n --mode dichotomy --precision 256"),
        args("approx --lambda 1/2 --n 12 --r n^-3n --mode dichotomy --precision 256"),
    ];
    for p in COLLISION_PARAMS {
        for n in 2..=10 {
            invocations.push(args(&format!(
                "approx {p} --n {n} --r 1/40 --t 1/7 --mode collisions --policy strict --precision 256"
            )));
        }
    }
    Criterion {
        id: 8,
        title: "dichotomy end to end",
        budget: Duration::from_secs(300),
        invocations,
        check: Box::new(|docs| {
            let g = report(&docs[0]);
            ensure(g["outcome"]["kind"] == "approximation-certificate", || format!("golden outcome {}", g["outcome"]["kind"]))?;
            let cert = &g["outcome"]["certificate"];
            ensure(cert["eta_equals_lambda"] == Value::Bool(true), || "eta differs from lambda".into())?;
            let h = interval(&g["outcome"]["eta_per_step"])?;
            let bound = interval(&g["outcome"]["per_step_bound"])?;
            ensure(h.hi() < &Dyadic::one() && bound.hi() < &Dyadic::one(), || format!("h bound {h}"))?;
            ensure(g["outcome"]["bound_consistent"] == Value::Bool(true), || "H_n(eta) > H".into())?;
            let pairs = g["outcome"]["collisions"]["pairs"].as_array().map_or(0, |p| p.len());

            let w = report(&docs[1]);
            ensure(w["outcome"]["kind"] == "entropy-witness" && w["outcome"]["bits"] == 12, || {
                format!("1/2 outcome {}", w["outcome"])
            })?;
            exact(&w["entropy"], "12")?;

            let mut compared = 0;
            for (k, d) in docs[2..].iter().enumerate() {
                let (pi, n) = (k / 9, 2 + k % 9);
                let mut got: Vec<(Vec<i8>, Vec<i8>)> =
                    serde_json::from_value(report(d)["pairs"].clone()).map_err(|e| e.to_string())?;
                let r = parse_rational("1/40").unwrap();
                let t = parse_rational("1/7").unwrap();
                let mut want = brute_force_pairs(&collision_param(pi), n, &r, &t).map_err(|e| e.to_string())?;
                got.sort();
                want.sort();
                ensure(got == want, || format!("{} n = {n}: {} pairs vs {} brute force", COLLISION_PARAMS[pi], got.len(), want.len()))?;
                compared += want.len();
            }
            Ok(format!(
                "golden: eta = lambda, {pairs} pairs, h <= {:.4} < 1; 1/2: H = 12; {} collision lists match brute force ({compared} pairs)",
                h.hi().to_f64(),
                docs.len() - 2
            ))
        }),
    }
}

fn main() {
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let wanted = |id: usize| only.is_empty() || only.contains(&id);
    let criteria: Vec<Criterion> = [
        criterion_1 as fn() -> Criterion,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
    ]
    .iter()
    .map(|f| f())
    .filter(|c| wanted(c.id))
    .collect();

    let mut all_pass = true;
    let mut single_thread: Vec<(usize, Vec<String>)> = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let runs: Vec<Run> = c.invocations.iter().map(|a| run_cli(a, 1)).collect();
        let elapsed = start.elapsed();
        let result = runs
            .iter()
            .zip(&c.invocations)
            .find(|(r, _)| r.code != EXIT_OK)
            .map(|(r, a)| Err(format!("`{}` exited with {}", a.join(" "), r.code)))
            .unwrap_or_else(|| {
                let docs: Vec<Value> = runs.iter().map(|r| serde_json::from_str(&r.stdout).expect("JSON report")).collect();
                (c.check)(&docs)
            })
            .and_then(|detail| {
                if elapsed <= c.budget {
                    Ok(detail)
                } else {
                    Err(format!("{detail}; runtime {:.1} s over budget {} s", elapsed.as_secs_f64(), c.budget.as_secs()))
                }
            });
        match &result {
            Ok(detail) => println!("criterion {} ({}): PASS in {:.1} s: {detail}", c.id, c.title, elapsed.as_secs_f64()),
            Err(why) => {
                all_pass = false;
                println!("criterion {} ({}): FAIL in {:.1} s: {why}", c.id, c.title, elapsed.as_secs_f64());
            }
        }
        single_thread.push((c.id, runs.into_iter().map(|r| r.stdout).collect()));
    }

    if wanted(9) {
        let start = Instant::now();
        let mut mismatches = Vec::new();
        let mut compared = 0;
        for (c, (id, outputs)) in criteria.iter().zip(&single_thread) {
            for (a, one) in c.invocations.iter().zip(outputs) {
                let eight = run_cli(a, 8);
                compared += 1;
                if &eight.stdout != one {
                    mismatches.push(format!("criterion {id}: `{}`", a.join(" ")));
                }
            }
        }
        let elapsed = start.elapsed().as_secs_f64();
        if mismatches.is_empty() && compared > 0 {
            println!("criterion 9 (determinism across thread counts): PASS in {elapsed:.1} s: {compared} reports byte-identical with --threads 1 and --threads 8");
        } else {
            all_pass = false;
            println!(
                "criterion 9 (determinism across thread counts): FAIL in {elapsed:.1} s: {} of {compared} differ: {}",
                mismatches.len(),
                mismatches.join("; ")
            );
        }
    }
    if !all_pass {
        std::process::exit(1);
    }
}
