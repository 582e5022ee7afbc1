//! Command-line front end. Every command prints one JSON document
//! `{"schema":"bcl/1","manifest":{..},"report":{..}}` on stdout; logs and
//! wall time go to stderr.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::audit::{default_pair_threshold, jensen_audit_with, separation_audit};
use crate::algebra::{bezout_certificate, mahler_measure, AlgebraicNumber, IntPolynomial, SignPolynomial};
use crate::diophantine::{
    collision_search_with, common_root_certificate_with, dichotomy_with, full_entropy_check_with, ApproxConfig, Policy,
};
use crate::entropy::{cond_entropy, entropy_at_scale_field, entropy_at_scale_interval, entropy_at_scale, run_dual_oracle, run_property_suite, CorpusConfig, Method};
use crate::error::{Error, Result};
use crate::garsia::{clear_cache, garsia_bounds_for, list_cache, GarsiaOptions, Schedule};
use crate::measures::{bernoulli_level_of, parse_atoms, LevelMeasure, Parameter, DEFAULT_SUPPORT_CAP};
use crate::numerics::{format_rational, parse_rational, Dyadic, IntervalScalar, PrecisionContext, Rational, DEFAULT_PRECISION};

pub const SCHEMA: &str = "bcl/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_AUDIT_FAILED: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_EXHAUSTED: i32 = 4;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "bcl", version, about = "Certified computations for Bernoulli convolutions")]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "BCL_PRECISION")]
    precision: Option<u32>,
    /// Root of the level cache.
    #[arg(long, global = true, env = "BCL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads for parallel inner loops.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Entropy at scale of an atom file or of a level distribution.
    Entropy(EntropyArgs),
    /// Garsia entropy upper bounds along a level schedule.
    Garsia(GarsiaArgs),
    /// Dimension upper bound from the Garsia bound at one level.
    DimBound(GarsiaArgs),
    /// Mahler measure enclosure.
    Mahler(MahlerArgs),
    /// Bézout certificate for a set of {-1,0,1} polynomials.
    Bezout(BezoutArgs),
    /// Collision search, common-root certificates and the dichotomy.
    Approx(ApproxArgs),
    /// Root separation or Jensen root-count audit over P_n.
    Audit(AuditArgs),
    /// Property suite over a seeded random corpus.
    Props(PropsArgs),
    /// List or clear the level cache.
    Cache(CacheArgs),
}

#[derive(Args, Debug, Serialize)]
struct EntropyArgs {
    /// Atom file (CSV or JSON).
    #[arg(long, conflicts_with = "lambda")]
    atoms: Option<PathBuf>,
    /// Rational Bernoulli parameter; with --n uses the level distribution.
    #[arg(long, allow_hyphen_values = true, requires = "n")]
    lambda: Option<String>,
    /// Defining polynomial of an algebraic parameter.
    #[arg(long, allow_hyphen_values = true, requires_all = ["lambda_isolator", "n"], conflicts_with_all = ["atoms", "lambda"])]
    lambda_minpoly: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda_isolator: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Scale r.
    #[arg(long, allow_hyphen_values = true)]
    r: String,
    /// Coarser scale for the conditional entropy H(r | r2).
    #[arg(long, allow_hyphen_values = true)]
    r2: Option<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::Sweep)]
    method: MethodArg,
}

#[derive(Copy, Clone, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum MethodArg {
    Sweep,
    Smoothed,
}

#[derive(Args, Debug, Serialize)]
struct GarsiaArgs {
    /// Defining polynomial, constant term first.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Isolating interval "lo,hi".
    #[arg(long, allow_hyphen_values = true)]
    isolator: String,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = ScheduleArg::Doubling)]
    schedule: ScheduleArg,
    /// Support cap per level.
    #[arg(long, default_value_t = DEFAULT_SUPPORT_CAP)]
    cap: usize,
}

#[derive(Copy, Clone, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ScheduleArg {
    Doubling,
    Dense,
}

#[derive(Args, Debug, Serialize)]
struct MahlerArgs {
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Target width 2^-eps_bits.
    #[arg(long, default_value_t = 60)]
    eps_bits: u32,
}

#[derive(Args, Debug, Serialize)]
struct BezoutArgs {
    /// Member polynomials, repeated or separated by ';'.
    #[arg(long = "poly", allow_hyphen_values = true, required = true)]
    polys: Vec<String>,
    #[arg(long)]
    n: usize,
}

#[derive(Copy, Clone, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Mode {
    Collisions,
    Certificate,
    Dichotomy,
    FullCheck,
}

#[derive(Copy, Clone, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum PolicyArg {
    Strict,
    Inclusive,
}

#[derive(Args, Debug, Serialize)]
struct ApproxArgs {
    /// Bare interval "lo,hi" for the parameter.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["lambda_minpoly", "lambda"])]
    lambda_interval: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "lambda_isolator", conflicts_with = "lambda")]
    lambda_minpoly: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda_isolator: Option<String>,
    /// Exact rational parameter.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long)]
    n: usize,
    /// Scale: a rational or a literal "n^-kn".
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    /// Bin offset for collision mode.
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    t: String,
    #[arg(long, value_enum, default_value_t = Mode::Dichotomy)]
    mode: Mode,
    /// Defaults to strict for certificates and inclusive for collision reports.
    #[arg(long, value_enum)]
    policy: Option<PolicyArg>,
    /// Polynomials for certificate mode; defaults to the collisions at --t.
    #[arg(long = "poly", allow_hyphen_values = true)]
    polys: Vec<String>,
    /// Exponent of the reported sharper bound and of the full check.
    #[arg(long, allow_hyphen_values = true, default_value = "1/2")]
    c: String,
    /// Level floor below which bounds are reported only.
    #[arg(long, default_value_t = 9)]
    floor: usize,
    #[arg(long, allow_hyphen_values = true, requires = "eta_isolator")]
    eta_minpoly: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eta_isolator: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct AuditArgs {
    #[arg(value_enum)]
    kind: AuditKind,
    #[arg(long)]
    degree: usize,
    /// Largest k for the Jensen audit.
    #[arg(long, default_value_t = 6)]
    k_max: u32,
}

#[derive(Copy, Clone, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum AuditKind {
    Separation,
    Jensen,
}

#[derive(Args, Debug, Serialize)]
struct PropsArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::Properties)]
    suite: SuiteArg,
    /// Scales per case for the dual-oracle suite.
    #[arg(long, default_value_t = 3)]
    scales: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    cases: usize,
    #[arg(long, default_value_t = 32)]
    max_atoms: usize,
    #[arg(long, default_value_t = 12)]
    max_denominator_exp: u32,
    #[arg(long, default_value_t = -40)]
    slack_exp: i64,
    /// Directory for witness files of failing cases.
    #[arg(long)]
    witness_dir: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SuiteArg {
    /// Checks (a)-(h).
    Properties,
    /// Sweep against smoothing.
    DualOracle,
}

#[derive(Args, Debug, Serialize)]
struct CacheArgs {
    #[arg(value_enum)]
    action: CacheAction,
}

#[derive(Copy, Clone, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum CacheAction {
    List,
    Clear,
}

/// Everything that determines a report. Thread count and wall time are
/// deliberately absent.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub flags: Value,
    pub seed: Option<u64>,
    pub precision: u32,
    pub version: String,
    pub input_hashes: BTreeMap<String, String>,
}

#[derive(Serialize)]
struct Document {
    schema: &'static str,
    manifest: RunManifest,
    report: Value,
}

struct Outcome {
    report: Value,
    audit_failed: bool,
}

impl Outcome {
    fn ok(report: impl Serialize) -> Result<Self> {
        Ok(Outcome {
            report: serde_json::to_value(report)?,
            audit_failed: false,
        })
    }
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } | Error::UndecidableAtPrecision { .. } | Error::ScaleNotRational(_) => EXIT_EXHAUSTED,
        Error::Parse(_) => EXIT_USAGE,
        _ => EXIT_PRECONDITION,
    }
}

/// Runs the command line `args` (program name first), writing the report
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    let start = Instant::now();
    let threads = cli.threads.unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: thread pool: {e}");
            return EXIT_USAGE;
        }
    };
    let mut hashes = BTreeMap::new();
    let result = pool.install(|| dispatch(&cli, &mut hashes));
    let _ = writeln!(err, "wall time: {:.3} s", start.elapsed().as_secs_f64());
    match result {
        Ok(outcome) => {
            let manifest = RunManifest {
                command: command_name(&cli.command).to_string(),
                flags: serde_json::to_value(&cli.command).unwrap_or(Value::Null),
                seed: match &cli.command {
                    Command::Props(p) => Some(p.seed),
                    _ => None,
                },
                precision: resolved_precision(&cli),
                version: env!("CARGO_PKG_VERSION").to_string(),
                input_hashes: hashes,
            };
            let doc = Document {
                schema: SCHEMA,
                manifest,
                report: outcome.report,
            };
            match serde_json::to_string_pretty(&doc) {
                Ok(s) => {
                    let _ = writeln!(out, "{s}");
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_PRECONDITION;
                }
            }
            if outcome.audit_failed {
                EXIT_AUDIT_FAILED
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Entropy(_) => "entropy",
        Command::Garsia(_) => "garsia",
        Command::DimBound(_) => "dim-bound",
        Command::Mahler(_) => "mahler",
        Command::Bezout(_) => "bezout",
        Command::Approx(_) => "approx",
        Command::Audit(_) => "audit",
        Command::Props(_) => "props",
        Command::Cache(_) => "cache",
    }
}

fn resolved_precision(cli: &Cli) -> u32 {
    cli.precision.unwrap_or(match cli.command {
        Command::Approx(_) => 256,
        _ => DEFAULT_PRECISION,
    })
}

fn dispatch(cli: &Cli, hashes: &mut BTreeMap<String, String>) -> Result<Outcome> {
    let prec = resolved_precision(cli);
    match &cli.command {
        Command::Entropy(a) => entropy_cmd(a, prec, hashes),
        Command::Garsia(a) => garsia_cmd(a, prec, cli.cache_dir.as_deref(), false),
        Command::DimBound(a) => garsia_cmd(a, prec, cli.cache_dir.as_deref(), true),
        Command::Mahler(a) => {
            let p = IntPolynomial::parse(&a.poly)?;
            let m = mahler_measure(&p, &Dyadic::pow2(-(a.eps_bits as i64)))?;
            Outcome::ok(json!({"poly": p.to_text(), "mahler": m}))
        }
        Command::Bezout(a) => {
            let members = a
                .polys
                .iter()
                .flat_map(|s| s.split(';'))
                .map(|s| SignPolynomial::from_int(&IntPolynomial::parse(s)?, a.n))
                .collect::<Result<Vec<_>>>()?;
            let cert = bezout_certificate(&members, a.n)?;
            let verified = cert.verify();
            Ok(Outcome {
                audit_failed: verified.is_err(),
                report: json!({
                    "certificate": cert,
                    "verified": verified.is_ok(),
                    "max_height": cert.max_height().to_string(),
                    "divisor_norm_check": cert.divisor_norm_check(),
                }),
            })
        }
        Command::Approx(a) => approx_cmd(a, prec),
        Command::Audit(a) => {
            let rep = match a.kind {
                AuditKind::Separation => separation_audit(a.degree, &default_pair_threshold())?,
                AuditKind::Jensen => jensen_audit_with(a.degree, a.k_max, &PrecisionContext::new(prec, 4096))?,
            };
            Ok(Outcome {
                audit_failed: rep.asserted && !rep.verdict,
                report: serde_json::to_value(&rep)?,
            })
        }
        Command::Props(a) => {
            let cfg = CorpusConfig {
                seed: a.seed,
                cases: a.cases,
                max_atoms: a.max_atoms,
                max_denominator_exp: a.max_denominator_exp,
                precision: prec,
                slack_exp: a.slack_exp,
                witness_dir: a.witness_dir.clone(),
            };
            let rep = match a.suite {
                SuiteArg::Properties => run_property_suite(&cfg)?,
                SuiteArg::DualOracle => run_dual_oracle(&cfg, a.scales)?,
            };
            Ok(Outcome {
                audit_failed: rep.failures() > 0,
                report: serde_json::to_value(&rep)?,
            })
        }
        Command::Cache(a) => {
            let root = cli
                .cache_dir
                .as_deref()
                .ok_or_else(|| Error::PreconditionUnmet("no cache directory (--cache-dir or BCL_CACHE_DIR)".into()))?;
            match a.action {
                CacheAction::List => {
                    let files: Vec<String> = list_cache(root)?
                        .iter()
                        .map(|p| p.strip_prefix(root).unwrap_or(p).display().to_string())
                        .collect();
                    Outcome::ok(json!({"files": files}))
                }
                CacheAction::Clear => Outcome::ok(json!({"removed": clear_cache(root)?})),
            }
        }
    }
}

/// Parses "lo,hi" with rational, decimal or dyadic endpoints.
pub fn parse_interval(s: &str, prec: u32) -> Result<IntervalScalar> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected \"lo,hi\", got {s:?}")))?;
    let end = |t: &str| parse_rational(t).or_else(|_| Dyadic::parse(t).map(|d| d.to_rational()));
    let (lo, hi) = (end(lo)?, end(hi)?);
    if lo > hi {
        return Err(Error::Parse(format!("interval {s:?} out of order")));
    }
    Ok(IntervalScalar::from_rational_bounds(&lo, &hi, prec))
}

/// A rational, or a literal `n^-kn` evaluated at `n`.
pub fn parse_scale(s: &str, n: usize) -> Result<Rational> {
    let t = s.replace(' ', "");
    if let Some(rest) = t.strip_prefix("n^-") {
        let k: usize = rest
            .strip_suffix('n')
            .map(|k| if k.is_empty() { Ok(1) } else { k.parse() })
            .ok_or_else(|| Error::Parse(format!("bad scale literal {s:?}")))?
            .map_err(|_| Error::Parse(format!("bad scale literal {s:?}")))?;
        return Ok(Rational::new(BigInt::one(), BigInt::from(n).pow((k * n) as u32)));
    }
    parse_rational(&t)
}

fn algebraic(poly: &str, isolator: &str) -> Result<AlgebraicNumber> {
    AlgebraicNumber::from_isolator(&IntPolynomial::parse(poly)?, &parse_interval(isolator, 128)?)
}

fn hash_file(path: &Path, hashes: &mut BTreeMap<String, String>) -> Result<String> {
    let text = std::fs::read_to_string(path)?;
    hashes.insert(path.display().to_string(), hex::encode(Sha256::digest(text.as_bytes())));
    Ok(text)
}

fn entropy_cmd(a: &EntropyArgs, prec: u32, hashes: &mut BTreeMap<String, String>) -> Result<Outcome> {
    let r = parse_rational(&a.r)?;
    let method = match a.method {
        MethodArg::Sweep => Method::Sweep,
        MethodArg::Smoothed => Method::Smoothed,
    };
    if let Some(path) = &a.atoms {
        let mu = parse_atoms(&hash_file(path, hashes)?)?;
        let v = match &a.r2 {
            Some(r2) => cond_entropy(&mu, &r, &parse_rational(r2)?, method)?,
            None => entropy_at_scale(&mu, &r, method)?,
        };
        return Outcome::ok(json!({"atoms": mu.len(), "entropy": v}));
    }
    let n = a.n.ok_or_else(|| Error::Parse("--n is required with a parameter".into()))?;
    let lambda = match (&a.lambda, &a.lambda_minpoly, &a.lambda_isolator) {
        (Some(q), _, _) => Parameter::Rational(parse_rational(q)?),
        (None, Some(p), Some(i)) => Parameter::Algebraic(algebraic(p, i)?),
        _ => return Err(Error::Parse("give --atoms, --lambda, or --lambda-minpoly with --lambda-isolator".into())),
    };
    if a.r2.is_some() {
        return Err(Error::Parse("--r2 is supported for atom files only".into()));
    }
    let level = bernoulli_level_of(&lambda, n)?;
    let ctx = PrecisionContext::new(prec, 4096);
    let (v, t) = match &level {
        LevelMeasure::Rational(m) => {
            let v = entropy_at_scale(m, &r, method)?;
            (v, None)
        }
        LevelMeasure::Field(m) => {
            let (v, t) = entropy_at_scale_field(m, &r, &ctx)?;
            (v, Some(t))
        }
        LevelMeasure::Interval(m) => {
            let (v, t) = entropy_at_scale_interval(m, &r)?;
            (v, Some(t))
        }
    };
    Outcome::ok(json!({
        "n": n,
        "support": level.len(),
        "entropy": v,
        "witness_offset": t.map(|t| format_rational(&t)),
    }))
}

fn garsia_cmd(a: &GarsiaArgs, prec: u32, cache: Option<&Path>, dim_only: bool) -> Result<Outcome> {
    let lambda = algebraic(&a.poly, &a.isolator)?;
    let opts = GarsiaOptions {
        schedule: match a.schedule {
            ScheduleArg::Doubling => Schedule::Doubling,
            ScheduleArg::Dense => Schedule::Dense,
        },
        cap: a.cap,
        precision: prec,
        cache,
    };
    let rep = garsia_bounds_for(&lambda, a.n, &opts)?;
    let failed = !rep.subadditivity.passed();
    if dim_only {
        let best = rep
            .levels
            .iter()
            .min_by(|x, y| x.dim_bound.hi().cmp(y.dim_bound.hi()))
            .expect("at least one level");
        return Ok(Outcome {
            audit_failed: failed,
            report: json!({
                "parameter": rep.parameter,
                "n": best.n,
                "per_step": best.per_step,
                "dim_bound": best.dim_bound,
            }),
        });
    }
    Ok(Outcome {
        audit_failed: failed,
        report: serde_json::to_value(&rep)?,
    })
}

fn approx_cmd(a: &ApproxArgs, prec: u32) -> Result<Outcome> {
    let lambda = match (&a.lambda_interval, &a.lambda_minpoly, &a.lambda_isolator, &a.lambda) {
        (Some(i), _, _, _) => Parameter::Interval(parse_interval(i, prec)?),
        (None, Some(p), Some(i), _) => Parameter::Algebraic(algebraic(p, i)?),
        (None, None, _, Some(q)) => Parameter::Rational(parse_rational(q)?),
        _ => {
            return Err(Error::Parse(
                "give --lambda-interval, --lambda-minpoly with --lambda-isolator, or --lambda".into(),
            ))
        }
    };
    let default_policy = match a.mode {
        Mode::Collisions => Policy::Inclusive,
        _ => Policy::Strict,
    };
    let cfg = ApproxConfig {
        floor: a.floor,
        c: parse_rational(&a.c)?,
        policy: match a.policy {
            Some(PolicyArg::Strict) => Policy::Strict,
            Some(PolicyArg::Inclusive) => Policy::Inclusive,
            None => default_policy,
        },
        ctx: PrecisionContext::new(prec, 4096),
    };
    let r = || -> Result<Rational> {
        let s = a.r.as_deref().ok_or_else(|| Error::Parse("--r is required in this mode".into()))?;
        parse_scale(s, a.n)
    };
    match a.mode {
        Mode::Collisions => {
            let c = collision_search_with(&lambda, a.n, &r()?, &parse_rational(&a.t)?, cfg.policy, &cfg.ctx)?;
            Outcome::ok(c)
        }
        Mode::Certificate => {
            let r = r()?;
            let polys = if a.polys.is_empty() {
                collision_search_with(&lambda, a.n, &r, &parse_rational(&a.t)?, cfg.policy, &cfg.ctx)?.difference_polys
            } else {
                a.polys
                    .iter()
                    .flat_map(|s| s.split(';'))
                    .map(|s| SignPolynomial::from_int(&IntPolynomial::parse(s)?, a.n))
                    .collect::<Result<Vec<_>>>()?
            };
            let cert = common_root_certificate_with(&polys, &lambda, a.n, &r, &cfg)?;
            let reverified = cert.reverify(&lambda, prec * 2);
            Ok(Outcome {
                audit_failed: reverified.is_err(),
                report: json!({"certificate": cert, "reverified": reverified.is_ok()}),
            })
        }
        Mode::Dichotomy => Outcome::ok(dichotomy_with(&lambda, a.n, &r()?, &cfg)?),
        Mode::FullCheck => {
            let eta = match (&a.eta_minpoly, &a.eta_isolator) {
                (Some(p), Some(i)) => algebraic(p, i)?,
                _ => return Err(Error::Parse("--eta-minpoly and --eta-isolator are required".into())),
            };
            let rep = full_entropy_check_with(&lambda, &eta, a.n, &cfg)?;
            Ok(Outcome {
                audit_failed: rep.asserted && !rep.verdict,
                report: serde_json::to_value(&rep)?,
            })
        }
    }
}
