//! Certified root isolation and algebraic numbers.
//!
//! Approximations come from the Aberth–Ehrlich iteration (first in `f64`,
//! then in dyadic arithmetic at increasing precision). They are certified
//! with Weierstrass corrections `W_i = f(z_i) / (a_d Π_{j≠i} (z_i - z_j))`:
//! the discs centred at `z_i - W_i` with radius `(d-1)|W_i|` cover all roots
//! (column Gerschgorin on `diag(z) - 1 Wᵀ`), and a disc disjoint from the
//! others contains exactly one root.

use std::cmp::Ordering;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use super::gcd::{gcd_pair, square_free_decomposition, square_free_part};
use super::poly::IntPolynomial;
use crate::error::{Error, Result};
use crate::numerics::{
    ComplexInterval, Dyadic, IntervalRepr, IntervalScalar, PrecisionContext, Rational, Round,
    DEFAULT_PRECISION_CAP,
};

/// Where a root sits: a real isolating interval or a complex box whose
/// imaginary part excludes zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootLocation {
    Real(IntervalScalar),
    Complex(ComplexInterval),
}

impl RootLocation {
    pub fn enclosure(&self) -> ComplexInterval {
        match self {
            RootLocation::Real(x) => ComplexInterval::real(x.clone()),
            RootLocation::Complex(b) => b.clone(),
        }
    }

    pub fn diameter(&self) -> Dyadic {
        match self {
            RootLocation::Real(x) => x.width(),
            RootLocation::Complex(b) => b.diameter(),
        }
    }
}

/// A root of a square-free primitive integer polynomial, pinned down by an
/// enclosure that contains no other root of that polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    defining: IntPolynomial,
    location: RootLocation,
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AlgebraicNumber", 3)?;
        st.serialize_field("defining", &self.defining.to_text())?;
        match &self.location {
            RootLocation::Real(x) => {
                st.serialize_field("re", &IntervalRepr::from(x))?;
                st.serialize_field("im", &IntervalRepr::from(&IntervalScalar::zero(x.precision())))?;
            }
            RootLocation::Complex(b) => {
                st.serialize_field("re", &IntervalRepr::from(&b.re))?;
                st.serialize_field("im", &IntervalRepr::from(&b.im))?;
            }
        }
        st.end()
    }
}

/// A root together with its multiplicity in the polynomial it came from.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    pub root: AlgebraicNumber,
    pub multiplicity: usize,
}

impl AlgebraicNumber {
    pub fn defining(&self) -> &IntPolynomial {
        &self.defining
    }

    pub fn location(&self) -> &RootLocation {
        &self.location
    }

    pub fn is_real(&self) -> bool {
        matches!(self.location, RootLocation::Real(_))
    }

    /// The real isolating interval, when the root is real.
    pub fn real_interval(&self) -> Option<&IntervalScalar> {
        match &self.location {
            RootLocation::Real(x) => Some(x),
            RootLocation::Complex(_) => None,
        }
    }

    pub fn enclosure(&self) -> ComplexInterval {
        self.location.enclosure()
    }

    /// The exact value when the defining polynomial is linear.
    pub fn as_rational(&self) -> Option<Rational> {
        (self.defining.degree() == Some(1)).then(|| {
            Rational::new(-self.defining.coeff(0), self.defining.coeff(1))
        })
    }

    /// Certifies that `isolator` contains exactly one real root of the
    /// square-free part of `defining`, returning that root.
    pub fn from_isolator(defining: &IntPolynomial, isolator: &IntervalScalar) -> Result<Self> {
        if defining.is_constant() {
            return Err(Error::PreconditionUnmet("defining polynomial is constant".into()));
        }
        let sf = square_free_part(defining);
        let target_exp = isolator.width().msb_or(-64) - 8;
        let mut eps_exp = target_exp.min(-20);
        let ctx = PrecisionContext::default();
        loop {
            let roots = isolate_squarefree(&sf, &Dyadic::pow2(eps_exp), &ctx)?;
            let mut inside = Vec::new();
            let mut ambiguous = false;
            for loc in roots {
                if let RootLocation::Real(x) = &loc {
                    if isolator.contains_interval(x) {
                        inside.push(loc);
                    } else if isolator.overlaps(x) {
                        ambiguous = true;
                    }
                }
            }
            if !ambiguous {
                return match inside.len() {
                    1 => Ok(AlgebraicNumber {
                        defining: sf,
                        location: inside.pop().unwrap(),
                    }),
                    k => Err(Error::PreconditionUnmet(format!(
                        "isolator {isolator} contains {k} real roots of {}",
                        defining.to_text()
                    ))),
                };
            }
            if eps_exp < -(DEFAULT_PRECISION_CAP as i64) {
                return Err(Error::cap("isolator certification", DEFAULT_PRECISION_CAP as u64));
            }
            eps_exp *= 2;
        }
    }

    /// Same root with an enclosure of diameter at most `eps`.
    pub fn refine(&self, eps: &Dyadic) -> Result<AlgebraicNumber> {
        if self.location.diameter() <= *eps {
            return Ok(self.clone());
        }
        if let Some(q) = self.as_rational() {
            let prec = (eps.msb_or(0).unsigned_abs() as u32 + 64).max(64);
            return Ok(AlgebraicNumber {
                defining: self.defining.clone(),
                location: RootLocation::Real(IntervalScalar::from_rational(&q, prec)),
            });
        }
        match &self.location {
            RootLocation::Real(x) => {
                let x = bisect(&self.defining, x, eps)?;
                Ok(AlgebraicNumber {
                    defining: self.defining.clone(),
                    location: RootLocation::Real(x),
                })
            }
            RootLocation::Complex(b) => {
                let roots = isolate_squarefree(&self.defining, eps, &PrecisionContext::default())?;
                let mut hits = roots.into_iter().filter(|l| l.enclosure().overlaps(b));
                match (hits.next(), hits.next()) {
                    (Some(l), None) => Ok(AlgebraicNumber {
                        defining: self.defining.clone(),
                        location: l,
                    }),
                    _ => Err(Error::undecidable("complex root refinement", DEFAULT_PRECISION_CAP)),
                }
            }
        }
    }

    /// Real enclosure refined to width at most `2^exp`.
    pub fn real_enclosure(&self, exp: i64) -> Result<IntervalScalar> {
        let r = self.refine(&Dyadic::pow2(exp))?;
        r.real_interval()
            .cloned()
            .ok_or_else(|| Error::PreconditionUnmet("algebraic number is not real".into()))
    }

    /// Exact equality, by the gcd of the defining polynomials and box
    /// containment, refining as needed.
    pub fn equals(&self, other: &AlgebraicNumber) -> Result<bool> {
        if !self.enclosure().overlaps(&other.enclosure()) {
            return Ok(false);
        }
        let g = gcd_pair(&self.defining, &other.defining);
        if g.is_constant() {
            return Ok(false);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut exp = a.location.diameter().msb_or(-32).max(b.location.diameter().msb_or(-32)) - 4;
        loop {
            let (ea, eb) = (a.enclosure(), b.enclosure());
            if !ea.overlaps(&eb) {
                return Ok(false);
            }
            let groots = isolate_squarefree(&g, &Dyadic::pow2(exp - 24), &PrecisionContext::default())?;
            let mut meets = false;
            for l in &groots {
                let e = l.enclosure();
                if ea.contains_box(&e) && eb.contains_box(&e) {
                    return Ok(true);
                }
                if e.overlaps(&ea) && e.overlaps(&eb) {
                    meets = true;
                }
            }
            if !meets {
                return Ok(false);
            }
            if exp < -(DEFAULT_PRECISION_CAP as i64) {
                return Err(Error::cap("algebraic equality", DEFAULT_PRECISION_CAP as u64));
            }
            exp *= 2;
            a = a.refine(&Dyadic::pow2(exp))?;
            b = b.refine(&Dyadic::pow2(exp))?;
        }
    }

    /// Certified comparison of two real algebraic numbers.
    pub fn compare(&self, other: &AlgebraicNumber) -> Result<Ordering> {
        if self.equals(other)? {
            return Ok(Ordering::Equal);
        }
        let mut exp = -32;
        loop {
            let x = self.real_enclosure(exp)?;
            let y = other.real_enclosure(exp)?;
            if let Some(o) = x.compare(&y) {
                return Ok(o);
            }
            if exp < -(DEFAULT_PRECISION_CAP as i64) {
                return Err(Error::cap("algebraic comparison", DEFAULT_PRECISION_CAP as u64));
            }
            exp *= 2;
        }
    }
}

trait MsbOr {
    fn msb_or(&self, default: i64) -> i64;
}

impl MsbOr for Dyadic {
    fn msb_or(&self, default: i64) -> i64 {
        if self.is_zero() {
            default
        } else {
            self.msb()
        }
    }
}

/// Certified isolation of every distinct complex root, each enclosure of
/// diameter at most `eps`, at the default precision context.
pub fn isolate_roots(p: &IntPolynomial, eps: &Dyadic) -> Result<Vec<AlgebraicNumber>> {
    Ok(isolate_roots_with(p, eps, &PrecisionContext::default())?
        .into_iter()
        .map(|r| r.root)
        .collect())
}

/// Isolation with multiplicities; roots of different square-free factors
/// are isolated separately and are certified distinct.
pub fn isolate_roots_with(
    p: &IntPolynomial,
    eps: &Dyadic,
    ctx: &PrecisionContext,
) -> Result<Vec<IsolatedRoot>> {
    if p.is_zero() {
        return Err(Error::PreconditionUnmet("zero polynomial has no isolated roots".into()));
    }
    let mut out = Vec::new();
    let k = p.x_valuation();
    if k > 0 {
        out.push(IsolatedRoot {
            root: AlgebraicNumber {
                defining: IntPolynomial::x(),
                location: RootLocation::Real(IntervalScalar::zero(ctx.start)),
            },
            multiplicity: k,
        });
    }
    let rest = p.strip_x();
    if rest.is_constant() {
        return Ok(out);
    }
    for (i, f) in square_free_decomposition(&rest).into_iter().enumerate() {
        if f.is_constant() {
            continue;
        }
        for loc in isolate_squarefree(&f, eps, ctx)? {
            out.push(IsolatedRoot {
                root: AlgebraicNumber {
                    defining: f.clone(),
                    location: loc,
                },
                multiplicity: i + 1,
            });
        }
    }
    Ok(out)
}

/// Isolation for a square-free polynomial of positive degree.
pub(crate) fn isolate_squarefree(
    f: &IntPolynomial,
    eps: &Dyadic,
    ctx: &PrecisionContext,
) -> Result<Vec<RootLocation>> {
    let d = f.degree().expect("non-zero polynomial");
    assert!(d >= 1, "constant polynomial has no roots");
    if d == 1 {
        let q = Rational::new(-f.coeff(0), f.coeff(1));
        let prec = (eps.msb_or(0).unsigned_abs() as u32 + 8).max(ctx.start);
        return Ok(vec![RootLocation::Real(IntervalScalar::from_rational(&q, prec))]);
    }
    let mut approx: Vec<Cx> = match aberth_f64(f) {
        Some(z) => z
            .into_iter()
            .map(|c| Cx {
                re: Dyadic::from_f64(c.re),
                im: Dyadic::from_f64(c.im),
            })
            .collect(),
        None => circle_start(f),
    };
    let need = (-eps.msb_or(0)).max(0) as u32 + 16;
    let cap = ctx.cap.max(need);
    let mut prec = ctx.start;
    let mut polished = false;
    loop {
        if let Some(locs) = certify(f, &approx, prec) {
            let locs = shrink_reals(f, locs, eps)?;
            if locs.iter().all(|l| l.diameter() <= *eps) {
                return Ok(locs);
            }
        }
        if polished && prec >= cap {
            return Err(Error::cap(format!("root isolation of {}", f.to_text()), cap as u64));
        }
        prec = if polished { (prec * 2).min(cap) } else { prec.max(need).min(cap) };
        approx = aberth_big(f, approx, prec);
        polished = true;
    }
}

/// Bisects every real location to width `eps`.
fn shrink_reals(f: &IntPolynomial, locs: Vec<RootLocation>, eps: &Dyadic) -> Result<Vec<RootLocation>> {
    locs.into_iter()
        .map(|l| match l {
            RootLocation::Real(x) if x.width() > *eps => Ok(RootLocation::Real(bisect(f, &x, eps)?)),
            other => Ok(other),
        })
        .collect()
}

/// Bisection on an interval holding exactly one simple root of `f`.
fn bisect(f: &IntPolynomial, x: &IntervalScalar, eps: &Dyadic) -> Result<IntervalScalar> {
    let prec = x.precision().max((eps.msb_or(0).unsigned_abs() as u32) + 8);
    let (mut lo, mut hi) = (x.lo().clone(), x.hi().clone());
    let mut slo = f.eval_dyadic(&lo).signum();
    let shi = f.eval_dyadic(&hi).signum();
    if slo == 0 {
        return Ok(IntervalScalar::point(lo, prec));
    }
    if shi == 0 {
        return Ok(IntervalScalar::point(hi, prec));
    }
    if slo == shi {
        return Err(Error::undecidable("isolating interval without a sign change", prec));
    }
    while &hi - &lo > *eps {
        let mid = (&lo + &hi).mul_pow2(-1);
        let s = f.eval_dyadic(&mid).signum();
        if s == 0 {
            return Ok(IntervalScalar::point(mid, prec));
        }
        if s == slo {
            lo = mid;
            slo = s;
        } else {
            hi = mid;
        }
    }
    Ok(IntervalScalar::new(lo, hi, prec))
}

/// Gerschgorin certification of approximate roots; `None` when the discs
/// are not disjoint or real/non-real classification is undecided.
fn certify(f: &IntPolynomial, z: &[Cx], prec: u32) -> Option<Vec<RootLocation>> {
    let d = z.len();
    let lead = IntervalScalar::from_bigint(f.leading().unwrap(), prec);
    let pts: Vec<ComplexInterval> = z
        .iter()
        .map(|c| ComplexInterval::point(c.re.clone(), c.im.clone(), prec))
        .collect();
    let factor = IntervalScalar::from_int(d as i64 - 1, prec);
    let mut boxes = Vec::with_capacity(d);
    for i in 0..d {
        let mut den = ComplexInterval::real(lead.clone());
        for j in 0..d {
            if j != i {
                den = &den * &(&pts[i] - &pts[j]);
            }
        }
        let w = f.eval_complex(&pts[i]).div(&den).ok()?;
        // A floor on the radius keeps exact hits from collapsing to points.
        let scale = z[i].msb().unwrap_or(0).max(0);
        let floor = Dyadic::pow2(scale - prec as i64 + 8);
        let r = Dyadic::max(&(&w.abs() * &factor).hi().clone(), &floor);
        boxes.push((&pts[i] - &w).inflate(&r));
    }
    for i in 0..d {
        for j in (i + 1)..d {
            if boxes[i].overlaps(&boxes[j]) {
                return None;
            }
        }
    }
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let b = &boxes[i];
        if !b.im.contains_zero() {
            out.push(RootLocation::Complex(b.clone()));
            continue;
        }
        let c = b.conj();
        let alone = boxes
            .iter()
            .enumerate()
            .all(|(j, o)| j == i || !o.overlaps(&c));
        if !alone {
            return None;
        }
        out.push(RootLocation::Real(b.re.clone()));
    }
    Some(out)
}

fn circle_start(f: &IntPolynomial) -> Vec<Cx> {
    let d = f.degree().unwrap();
    let r = f.root_bound().clamp(1e-3, 1e300) * 0.5;
    (0..d)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / d as f64 + 0.4;
            Cx {
                re: Dyadic::from_f64(r * t.cos()),
                im: Dyadic::from_f64(r * t.sin()),
            }
        })
        .collect()
}

/// Aberth–Ehrlich in double precision; `None` when coefficients do not fit
/// or the iteration does not settle.
fn aberth_f64(f: &IntPolynomial) -> Option<Vec<Complex64>> {
    let c: Vec<f64> = f.coeffs().iter().map(|x| x.to_f64().unwrap_or(f64::INFINITY)).collect();
    if c.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let d = c.len() - 1;
    let r = f.root_bound().max(1e-3) * 0.5;
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / d as f64 + 0.4))
        .collect();
    for _ in 0..500 {
        let mut done = true;
        for i in 0..d {
            let (p, dp) = horner_f64(&c, z[i]);
            if p == Complex64::zero() {
                continue;
            }
            let n = p / dp;
            let s: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = n / (Complex64::new(1.0, 0.0) - n * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                return None;
            }
            z[i] -= w;
            if w.norm() > 1e-15 * z[i].norm().max(1e-300) {
                done = false;
            }
        }
        if done {
            return Some(z);
        }
    }
    z.iter().all(|x| x.re.is_finite() && x.im.is_finite()).then_some(z)
}

fn horner_f64(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Approximate complex number with dyadic parts.
#[derive(Clone, Debug)]
struct Cx {
    re: Dyadic,
    im: Dyadic,
}

impl Cx {
    fn zero() -> Cx {
        Cx {
            re: Dyadic::zero(),
            im: Dyadic::zero(),
        }
    }

    fn add(&self, o: &Cx) -> Cx {
        Cx {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn sub(&self, o: &Cx) -> Cx {
        Cx {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &Cx, p: u32) -> Cx {
        Cx {
            re: (&(&self.re * &o.re) - &(&self.im * &o.im)).round(p, Round::Down),
            im: (&(&self.re * &o.im) + &(&self.im * &o.re)).round(p, Round::Down),
        }
    }

    fn div(&self, o: &Cx, p: u32) -> Option<Cx> {
        let den = &(&o.re * &o.re) + &(&o.im * &o.im);
        if den.is_zero() {
            return None;
        }
        let nr = &(&self.re * &o.re) + &(&self.im * &o.im);
        let ni = &(&self.im * &o.re) - &(&self.re * &o.im);
        Some(Cx {
            re: Dyadic::div(&nr, &den, p, Round::Down),
            im: Dyadic::div(&ni, &den, p, Round::Down),
        })
    }

    fn msb(&self) -> Option<i64> {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => None,
            (false, true) => Some(self.re.msb()),
            (true, false) => Some(self.im.msb()),
            (false, false) => Some(self.re.msb().max(self.im.msb())),
        }
    }
}

/// Aberth–Ehrlich in dyadic arithmetic rounded to `p` bits.
fn aberth_big(f: &IntPolynomial, mut z: Vec<Cx>, p: u32) -> Vec<Cx> {
    let d = z.len();
    let coeffs: Vec<Cx> = f
        .coeffs()
        .iter()
        .map(|c| Cx {
            re: Dyadic::from_bigint(c.clone()),
            im: Dyadic::zero(),
        })
        .collect();
    let one = Cx {
        re: Dyadic::one(),
        im: Dyadic::zero(),
    };
    // Separate coincident starting points.
    for i in 0..d {
        for j in 0..i {
            if z[i].sub(&z[j]).msb().is_none() {
                z[i].re = &z[i].re + &Dyadic::pow2(-(p as i64) / 4 - i as i64);
                z[i].im = &z[i].im + &Dyadic::pow2(-(p as i64) / 4 - 2 * i as i64);
            }
        }
    }
    let max_iter = 60 + 4 * d;
    for _ in 0..max_iter {
        let mut done = true;
        for i in 0..d {
            let mut pv = Cx::zero();
            let mut dv = Cx::zero();
            for c in coeffs.iter().rev() {
                dv = dv.mul(&z[i], p).add(&pv);
                pv = pv.mul(&z[i], p).add(c);
            }
            if pv.msb().is_none() {
                continue;
            }
            let Some(n) = pv.div(&dv, p) else {
                done = false;
                continue;
            };
            let mut s = Cx::zero();
            for j in 0..d {
                if j != i {
                    if let Some(t) = one.div(&z[i].sub(&z[j]), p) {
                        s = s.add(&t);
                    }
                }
            }
            let Some(w) = n.div(&one.sub(&n.mul(&s, p)), p) else {
                done = false;
                continue;
            };
            z[i] = z[i].sub(&w);
            let scale = z[i].msb().unwrap_or(0).max(0);
            if let Some(m) = w.msb() {
                if m > scale - p as i64 + 8 {
                    done = false;
                }
            }
        }
        if done {
            break;
        }
    }
    z
}

/// Sign of `p` at a real algebraic number, certified by refinement.
pub fn sign_at(p: &IntPolynomial, x: &AlgebraicNumber) -> Result<i32> {
    if p.is_zero() {
        return Ok(0);
    }
    let g = gcd_pair(p, x.defining());
    if !g.is_constant() {
        let groots = isolate_squarefree(&g, &Dyadic::pow2(-32), &PrecisionContext::default())?;
        for l in groots {
            let probe = AlgebraicNumber {
                defining: g.clone(),
                location: l,
            };
            if probe.equals(x)? {
                return Ok(0);
            }
        }
    }
    let mut exp = -64;
    loop {
        let v = p.eval_interval(&x.real_enclosure(exp)?.with_precision((-exp) as u32 + 64));
        if v.certainly_positive() {
            return Ok(1);
        }
        if v.certainly_negative() {
            return Ok(-1);
        }
        if exp < -(DEFAULT_PRECISION_CAP as i64) {
            return Err(Error::cap("sign evaluation", DEFAULT_PRECISION_CAP as u64));
        }
        exp *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn eps() -> Dyadic {
        Dyadic::pow2(-60)
    }

    #[test]
    fn x2_minus_1() {
        let r = isolate_roots(&p(&[-1, 0, 1]), &eps()).unwrap();
        assert_eq!(r.len(), 2);
        let mut v: Vec<f64> = r.iter().map(|a| a.real_interval().unwrap().to_f64()).collect();
        v.sort_by(f64::total_cmp);
        assert_eq!(v, vec![-1.0, 1.0]);
    }

    #[test]
    fn x2_plus_1_boxes() {
        let r = isolate_roots(&p(&[1, 0, 1]), &eps()).unwrap();
        assert_eq!(r.len(), 2);
        for a in &r {
            let b = a.enclosure();
            assert!(!a.is_real());
            assert!(b.re.contains(&Dyadic::zero()));
            assert!(b.im.contains(&Dyadic::one()) || b.im.contains(&Dyadic::from_int(-1)));
            assert!(b.diameter() <= eps());
        }
    }

    #[test]
    fn golden_quadratic_matches_formula() {
        let r = isolate_roots(&p(&[-1, 1, 1]), &eps()).unwrap();
        let five = IntervalScalar::from_int(5, 200).sqrt().unwrap();
        let plus = (&five - &IntervalScalar::one(200)).mul_pow2(-1);
        let minus = (-&(&five + &IntervalScalar::one(200))).mul_pow2(-1);
        for a in &r {
            let x = a.real_interval().unwrap();
            assert!(x.overlaps(&plus) || x.overlaps(&minus));
            assert!(x.width() <= eps());
        }
        assert!(r[0].real_interval().unwrap().overlaps(&plus) != r[1].real_interval().unwrap().overlaps(&plus));
    }

    #[test]
    fn multiplicities_and_root_zero() {
        // x^2 (x-1)^3 (x^2+1)
        let a = &p(&[0, 0, 1]) * &(&p(&[-1, 1]) * &(&p(&[-1, 1]) * &p(&[-1, 1])));
        let f = &a * &p(&[1, 0, 1]);
        let roots = isolate_roots_with(&f, &eps(), &PrecisionContext::default()).unwrap();
        let total: usize = roots.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, f.degree().unwrap());
        assert_eq!(roots.len(), 4);
    }

    #[test]
    fn lehmer_root_count_and_disjointness() {
        let f = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let r = isolate_roots(&f, &Dyadic::pow2(-40)).unwrap();
        assert_eq!(r.len(), 10);
        for i in 0..r.len() {
            for j in (i + 1)..r.len() {
                assert!(!r[i].enclosure().overlaps(&r[j].enclosure()));
            }
        }
    }

    #[test]
    fn clustered_roots_need_high_precision() {
        // (1024x - 1)(1025x - 1) and a Mignotte-like polynomial x^5 - 2(10x - 1)^2
        let f = &p(&[-1, 1024]) * &p(&[-1, 1025]);
        assert_eq!(isolate_roots(&f, &Dyadic::pow2(-40)).unwrap().len(), 2);
        let m = p(&[-2, 40, -200, 0, 0, 1]);
        let r = isolate_roots(&m, &Dyadic::pow2(-80)).unwrap();
        assert_eq!(r.len(), 5);
    }

    #[test]
    fn from_isolator_and_equality() {
        let phi_inv = AlgebraicNumber::from_isolator(
            &p(&[-1, 1, 1]),
            &IntervalScalar::from_rational_bounds(&Rational::new(1.into(), 2.into()), &Rational::new(7.into(), 10.into()), 64),
        )
        .unwrap();
        let times_x = AlgebraicNumber::from_isolator(
            &p(&[0, -1, 1, 1]),
            &IntervalScalar::from_rational_bounds(&Rational::new(1.into(), 2.into()), &Rational::new(7.into(), 10.into()), 64),
        )
        .unwrap();
        assert!(phi_inv.equals(&times_x).unwrap());
        let other = AlgebraicNumber::from_isolator(
            &p(&[-1, 1, 0, 1]),
            &IntervalScalar::from_rational_bounds(&Rational::new(1.into(), 2.into()), &Rational::new(7.into(), 10.into()), 64),
        )
        .unwrap();
        assert!(!phi_inv.equals(&other).unwrap());
        assert_eq!(phi_inv.compare(&other).unwrap(), Ordering::Less);
        assert!(AlgebraicNumber::from_isolator(&p(&[-1, 0, 1]), &IntervalScalar::from_int(3, 64)).is_err());
    }

    #[test]
    fn sign_at_root_and_off_root() {
        let phi_inv = AlgebraicNumber::from_isolator(&p(&[-1, 1, 1]), &IntervalScalar::new(Dyadic::pow2(-1), Dyadic::one(), 64)).unwrap();
        assert_eq!(sign_at(&p(&[0, -1, 1, 1]), &phi_inv).unwrap(), 0);
        assert_eq!(sign_at(&p(&[-1, 2]), &phi_inv).unwrap(), 1);
    }
}
