use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::{check_parameter, enclosure, eval_signs, exact_sum, working_precision, ApproxConfig};
use crate::algebra::{bezout_certificate, gcd_pair, gcd_set, isolate_roots, AlgebraicNumber, BezoutCertificate, IntPolynomial, SignPolynomial};
use crate::entropy::log2_rational;
use crate::error::{Error, Result};
use crate::measures::Parameter;
use crate::numerics::{
    exp2_interval, format_rational, serialize_rational, ComplexInterval, Dyadic, IntervalScalar, Rational,
};

/// The sharper `|λ - η| ≤ r^c` claim. Reported, never asserted.
#[derive(Clone, Debug, Serialize)]
pub struct SharpClaim {
    pub c: String,
    pub bound: IntervalScalar,
    pub holds: bool,
}

/// A common root `η` of a set of small polynomials, close to `λ`.
#[derive(Clone, Debug, Serialize)]
pub struct ApproximationCertificate {
    pub n: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub r: Rational,
    pub eta: AlgebraicNumber,
    /// Encloses `|λ - η|`.
    pub distance: IntervalScalar,
    /// Whether `distance` is certified smaller than for every other root.
    pub minimal_certified: bool,
    pub vanishing: Vec<SignPolynomial>,
    pub gcd: IntPolynomial,
    /// Encloses `|D(λ)|` for the gcd `D`.
    pub gcd_value: IntervalScalar,
    pub bound_exponent: String,
    pub bound: IntervalScalar,
    /// False below the configured level floor, where the bound is reported only.
    pub asserted: bool,
    pub bound_holds: bool,
    pub sharp: SharpClaim,
    pub bezout: BezoutCertificate,
    /// Exact equality with the parameter, when the parameter is exact.
    pub eta_equals_lambda: Option<bool>,
}

pub fn common_root_certificate(
    a: &[SignPolynomial],
    lambda: &Parameter,
    n: usize,
    r: &Rational,
) -> Result<ApproximationCertificate> {
    common_root_certificate_with(a, lambda, n, r, &ApproxConfig::default())
}

fn int_of(p: &SignPolynomial) -> IntPolynomial {
    p.to_int()
}

/// `(2n)^(-2n)`.
fn explicit_threshold(n: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2 * n).pow((2 * n) as u32))
}

/// Encloses `r^e`.
fn rational_power(r: &Rational, e: &Rational, prec: u32) -> Result<IntervalScalar> {
    let l = log2_rational(r, prec)?.mul_rational(e);
    exp2_interval(&l)
}

/// The explicit bound `r^(1/n) (2n)^2`.
fn explicit_bound(r: &Rational, n: usize, prec: u32) -> Result<IntervalScalar> {
    let root = rational_power(r, &Rational::new(BigInt::one(), BigInt::from(n)), prec)?;
    Ok(root.mul_rational(&Rational::from_integer(BigInt::from(4 * n * n))))
}

/// A subset with the same gcd, added greedily while the gcd shrinks.
fn generating_subset(members: &[SignPolynomial], d: &IntPolynomial) -> Vec<SignPolynomial> {
    let mut out: Vec<SignPolynomial> = Vec::new();
    let mut g: Option<IntPolynomial> = None;
    for p in members {
        let next = match &g {
            None => int_of(p).primitive(),
            Some(g) => gcd_pair(g, &int_of(p)),
        };
        if g.as_ref().map(|g| g.degree() != next.degree()).unwrap_or(true) {
            out.push(p.clone());
            g = Some(next);
        }
        if g.as_ref().and_then(|g| g.degree()) == d.degree() {
            break;
        }
    }
    out
}

fn check_small(lambda: &Parameter, p: &SignPolynomial, r: &Rational, cfg: &ApproxConfig, start: u32) -> Result<()> {
    if let Some(v) = exact_sum(lambda, p.coeffs()) {
        return if &v.abs() <= r {
            Ok(())
        } else {
            Err(Error::PreconditionUnmet(format!("|P(λ)| > r for P = {}", p.to_text())))
        };
    }
    let mut prec = start;
    loop {
        let x = enclosure(lambda, prec)?;
        let v = eval_signs(p.coeffs(), &x).abs();
        if v.rational_hi() <= *r {
            return Ok(());
        }
        let fixed = matches!(lambda, Parameter::Interval(_));
        if v.rational_lo() > *r || fixed || prec >= cfg.ctx.cap {
            return Err(Error::PreconditionUnmet(format!(
                "|P(λ)| <= r not certified for P = {} (enclosure {v})",
                p.to_text()
            )));
        }
        prec = (prec * 2).min(cfg.ctx.cap);
    }
}

fn distance(eta: &AlgebraicNumber, x: &IntervalScalar) -> IntervalScalar {
    (&eta.enclosure() - &ComplexInterval::real(x.clone())).abs()
}

/// Builds and checks the certificate for `A`: the gcd `D`, a Bézout
/// identity for it, the root of `D` nearest to `λ`, and the explicit
/// bound `|λ - η| < r^(1/n) (2n)^2`.
pub fn common_root_certificate_with(
    a: &[SignPolynomial],
    lambda: &Parameter,
    n: usize,
    r: &Rational,
    cfg: &ApproxConfig,
) -> Result<ApproximationCertificate> {
    check_parameter(lambda)?;
    let mut members: Vec<SignPolynomial> = a.iter().filter(|p| !p.is_zero()).map(|p| p.sign_normalized()).collect();
    members.sort();
    members.dedup();
    if members.is_empty() {
        return Err(Error::PreconditionUnmet("empty polynomial set".into()));
    }
    if let Some(p) = members.iter().find(|p| p.degree().unwrap_or(0) > n) {
        return Err(Error::PreconditionUnmet(format!("{} is not in P_{n}", p.to_text())));
    }
    if !r.is_positive() || r >= &explicit_threshold(n) {
        return Err(Error::PreconditionUnmet(format!(
            "r = {} is not below (2n)^(-2n) for n = {n}",
            format_rational(r)
        )));
    }
    let prec = working_precision(r, &cfg.ctx);
    for p in &members {
        check_small(lambda, p, r, cfg, prec)?;
    }

    let ints: Vec<IntPolynomial> = members.iter().map(int_of).collect();
    let d = gcd_set(&ints)?;
    if d.is_constant() {
        return Err(Error::NoRootInRange("the gcd of the set is constant".into()));
    }
    for (p, q) in members.iter().zip(&ints) {
        if !d.divides(q) {
            return Err(Error::NoRootInRange(format!("gcd does not divide {}", p.to_text())));
        }
    }
    let bezout = bezout_certificate(&generating_subset(&members, &d), n)?;
    bezout.verify().map_err(Error::NoRootInRange)?;

    let x = enclosure(lambda, prec)?;
    let gcd_value = d.eval_interval(&x).abs();
    let roots = isolate_roots(&d, &Dyadic::pow2(-(prec as i64)))?;
    let dists: Vec<IntervalScalar> = roots.iter().map(|e| distance(e, &x)).collect();
    let best = (0..roots.len())
        .min_by(|&i, &j| dists[i].hi().cmp(dists[j].hi()))
        .expect("non-constant gcd has a root");
    let minimal_certified = (0..roots.len()).all(|j| j == best || dists[best].hi() < dists[j].lo());

    let bound = explicit_bound(r, n, prec)?;
    let bound_holds = dists[best].hi() < bound.lo();
    let asserted = n >= cfg.floor;
    if asserted && !bound_holds {
        return Err(Error::NoRootInRange(format!(
            "nearest root at distance {} exceeds r^(1/n)(2n)^2 = {}",
            dists[best], bound
        )));
    }
    let sharp_bound = rational_power(r, &cfg.c, prec)?;
    let sharp = SharpClaim {
        c: format_rational(&cfg.c),
        holds: dists[best].hi() <= sharp_bound.lo(),
        bound: sharp_bound,
    };
    let eta = roots[best].clone();
    let eta_equals_lambda = match lambda {
        Parameter::Algebraic(l) => Some(eta.equals(l)?),
        Parameter::Rational(q) => Some(eta.as_rational().as_ref() == Some(q)),
        Parameter::Interval(_) => None,
    };
    Ok(ApproximationCertificate {
        n,
        r: r.clone(),
        eta,
        distance: dists[best].clone(),
        minimal_certified,
        vanishing: members,
        gcd: d,
        gcd_value,
        bound_exponent: "r^(1/n)*(2n)^2".into(),
        bound,
        asserted,
        bound_holds,
        sharp,
        bezout,
        eta_equals_lambda,
    })
}

impl ApproximationCertificate {
    /// Rechecks everything from scratch at `prec` bits: a fresh gcd, fresh
    /// isolation of its roots, fresh evaluations at `λ`, the Bézout
    /// identity and the asserted bound. Returns the first failure.
    pub fn reverify(&self, lambda: &Parameter, prec: u32) -> std::result::Result<(), String> {
        let fail = |e: Error| e.to_string();
        let ints: Vec<IntPolynomial> = self.vanishing.iter().map(int_of).collect();
        let d = gcd_set(&ints).map_err(fail)?;
        if d.primitive() != self.gcd.primitive() && d.primitive() != (-&self.gcd).primitive() {
            return Err(format!("fresh gcd {d} differs from {}", self.gcd));
        }
        for (p, q) in self.vanishing.iter().zip(&ints) {
            if q.div_exact(&d).is_none() {
                return Err(format!("gcd does not divide {}", p.to_text()));
            }
        }
        self.bezout.verify()?;
        if self.bezout.gcd.primitive() != d.primitive() && self.bezout.gcd.primitive() != (-&d).primitive() {
            return Err("Bézout gcd differs from the fresh gcd".into());
        }
        let x = match lambda {
            Parameter::Interval(x) => x.clone(),
            _ => enclosure(lambda, prec).map_err(fail)?,
        };
        for p in &self.vanishing {
            if let Some(v) = exact_sum(lambda, p.coeffs()) {
                if v.abs() > self.r {
                    return Err(format!("|P(λ)| > r for {}", p.to_text()));
                }
            } else if eval_signs(p.coeffs(), &x).abs().rational_hi() > self.r {
                return Err(format!("|P(λ)| <= r not recertified for {}", p.to_text()));
            }
        }
        let roots = isolate_roots(&d, &Dyadic::pow2(-(prec as i64))).map_err(fail)?;
        let mut found = None;
        for e in &roots {
            if e.enclosure().overlaps(&self.eta.enclosure()) && e.equals(&self.eta).map_err(fail)? {
                found = Some(e.clone());
            }
        }
        let eta = found.ok_or("η is not a root of the fresh gcd")?;
        let dist = distance(&eta, &x);
        if self.asserted {
            let bound = explicit_bound(&self.r, self.n, prec).map_err(fail)?;
            if dist.hi() >= bound.lo() {
                return Err(format!("fresh distance {dist} exceeds the bound {bound}"));
            }
        }
        Ok(())
    }
}
