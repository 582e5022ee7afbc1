//! Bézout identities `D = Σ Q_j P_j` for subsets of `P_n` with controlled
//! cofactor degree and height.
//!
//! The construction runs in four stages:
//! 1. extended Euclid combines the members into some identity over Q;
//! 2. members are cut down to a linearly independent subset (`m <= n + 1`);
//! 3. every cofactor but the last is reduced modulo the last member, which
//!    bounds all degrees by `n - 1`;
//! 4. the cofactor coefficients are recomputed as the solution of the
//!    `2n`-row linear system `w = Σ λ_{j,k} v_{j,k}` restricted to a maximal
//!    non-singular minor, so every coefficient is a ratio of two small
//!    determinants (Cramer).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::gcd::{gcd_set, xgcd};
use super::poly::{IntPolynomial, RatPolynomial, SignPolynomial};
use crate::error::{Error, Result};
use crate::numerics::Rational;

#[derive(Clone, Debug, Serialize)]
pub struct BezoutCertificate {
    pub gcd: IntPolynomial,
    pub members: Vec<SignPolynomial>,
    pub cofactors: Vec<RatPolynomial>,
    pub n: usize,
}

/// `2^n (2n)!`.
pub fn cofactor_height_bound(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for k in 2..=(2 * n) {
        f *= k;
    }
    f << n
}

/// `2^n n`, the l1 bound for divisors of members of `P_n`.
pub fn divisor_l1_bound(n: usize) -> BigInt {
    BigInt::from(n) << n
}

impl BezoutCertificate {
    /// `Σ Q_j P_j - gcd` in exact rational arithmetic.
    pub fn residual(&self) -> RatPolynomial {
        let mut acc = RatPolynomial::zero();
        for (q, p) in self.cofactors.iter().zip(&self.members) {
            acc = &acc + &(q * &p.to_int().to_rat());
        }
        &acc - &self.gcd.to_rat()
    }

    /// Checks every invariant; returns the first violation.
    pub fn verify(&self) -> std::result::Result<(), String> {
        if self.members.len() != self.cofactors.len() {
            return Err("member/cofactor count mismatch".into());
        }
        if !self.residual().is_zero() {
            return Err("identity Σ Q_j P_j = D fails".into());
        }
        if self.members.len() > self.n + 1 {
            return Err(format!("{} members exceed n + 1", self.members.len()));
        }
        let deg_cap = self.n.max(1) - 1;
        let h = cofactor_height_bound(self.n);
        for q in &self.cofactors {
            if q.degree().is_some_and(|d| d > deg_cap) {
                return Err(format!("cofactor {} has degree above {deg_cap}", q.to_text()));
            }
            if q.naive_height() > h {
                return Err(format!("cofactor {} exceeds height bound {h}", q.to_text()));
            }
        }
        for p in &self.members {
            if p.degree().is_some_and(|d| d > self.n) {
                return Err(format!("member {} not in P_{}", p.to_text(), self.n));
            }
        }
        Ok(())
    }

    /// Largest cofactor height.
    pub fn max_height(&self) -> BigInt {
        self.cofactors
            .iter()
            .map(|q| q.naive_height())
            .max()
            .unwrap_or_default()
    }

    /// True when the gcd divides some member and its l1 norm obeys `2^n n`.
    /// `None` when no member is verified to be divisible.
    pub fn divisor_norm_check(&self) -> Option<bool> {
        let divides = self
            .members
            .iter()
            .any(|p| !p.is_zero() && self.gcd.divides(&p.to_int()));
        divides.then(|| self.gcd.l1_norm() <= divisor_l1_bound(self.n))
    }
}

fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Indices of pivot columns of `rows` (row-major), by Gaussian elimination.
pub(crate) fn pivot_columns(rows: &[Vec<Rational>]) -> Vec<usize> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for k in c..ncols {
                let t = &f * &m[r][k];
                m[i][k] -= t;
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

/// Solves the square non-singular system `a x = b` exactly.
pub(crate) fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let pivot = m[c][c].clone();
        for k in c..=n {
            m[c][k] = &m[c][k] / &pivot;
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for k in c..=n {
                let t = &f * &m[c][k];
                m[i][k] -= t;
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Coefficients expressing `target` in the span of `basis` (vectors in Q^len).
fn express_in_basis(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    // Columns are basis vectors; choose independent rows.
    let len = target.len();
    let cols: Vec<Vec<Rational>> = (0..len)
        .map(|i| basis.iter().map(|v| v[i].clone()).collect())
        .collect();
    let transposed: Vec<Vec<Rational>> = (0..basis.len())
        .map(|j| (0..len).map(|i| cols[i][j].clone()).collect())
        .collect();
    let rows = pivot_columns(&transposed);
    if rows.len() != basis.len() {
        return None;
    }
    let a: Vec<Vec<Rational>> = rows.iter().map(|&i| cols[i].clone()).collect();
    let b: Vec<Rational> = rows.iter().map(|&i| target[i].clone()).collect();
    let x = solve_square(&a, &b)?;
    // Confirm on every row.
    for i in 0..len {
        let s: Rational = x.iter().zip(&cols[i]).map(|(u, v)| u * v).sum();
        if s != target[i] {
            return None;
        }
    }
    Some(x)
}

fn coeff_vector(p: &IntPolynomial, len: usize, shift: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    for (i, c) in p.coeffs().iter().enumerate() {
        v[i + shift] = Rational::from_integer(c.clone());
    }
    v
}

fn combination(members: &[IntPolynomial], cofactors: &[RatPolynomial]) -> RatPolynomial {
    members
        .iter()
        .zip(cofactors)
        .fold(RatPolynomial::zero(), |acc, (p, q)| &acc + &(q * &p.to_rat()))
}

/// Builds a Bézout certificate for the gcd of `a ⊂ P_n`.
pub fn bezout_certificate(a: &[SignPolynomial], n: usize) -> Result<BezoutCertificate> {
    let mut members: Vec<SignPolynomial> = Vec::new();
    for p in a {
        if p.degree().is_some_and(|d| d > n) {
            return Err(Error::PreconditionUnmet(format!("{} is not in P_{n}", p.to_text())));
        }
        if !p.is_zero() && !members.contains(p) {
            members.push(p.clone());
        }
    }
    if members.is_empty() {
        return Err(Error::AllZero);
    }
    let ints: Vec<IntPolynomial> = members.iter().map(|p| p.to_int()).collect();
    let d = gcd_set(&ints)?;
    let d_rat = d.to_rat();

    // Stage 1: extended Euclid.
    let mut g = ints[0].to_rat();
    let mut cof = vec![RatPolynomial::constant(rat(1))];
    for p in &ints[1..] {
        let (g2, s, t) = xgcd(&g, &p.to_rat());
        cof = cof.iter().map(|q| q * &s).collect();
        cof.push(t);
        g = g2;
    }
    // g is monic; rescale to D.
    let lead = d_rat.leading().cloned().expect("gcd is non-zero");
    let scale = &lead / g.leading().expect("non-zero gcd");
    cof = cof.iter().map(|q| q.scale(&scale)).collect();
    if combination(&ints, &cof) != d_rat {
        return Err(Error::PreconditionUnmet("extended Euclid identity failed".into()));
    }

    // Stage 2: independent subset; fold dependent members into the basis.
    let len = n + 1;
    let vecs: Vec<Vec<Rational>> = ints.iter().map(|p| coeff_vector(p, len, 0)).collect();
    let mut basis_idx: Vec<usize> = Vec::new();
    for (j, v) in vecs.iter().enumerate() {
        let mut trial: Vec<Vec<Rational>> = basis_idx.iter().map(|&b| vecs[b].clone()).collect();
        trial.push(v.clone());
        let transposed_rank = pivot_columns(&trial).len();
        if transposed_rank == trial.len() {
            basis_idx.push(j);
        }
    }
    let basis_vecs: Vec<Vec<Rational>> = basis_idx.iter().map(|&b| vecs[b].clone()).collect();
    let mut bcof: Vec<RatPolynomial> = basis_idx.iter().map(|&b| cof[b].clone()).collect();
    for (j, v) in vecs.iter().enumerate() {
        if basis_idx.contains(&j) {
            continue;
        }
        let coeffs = express_in_basis(&basis_vecs, v)
            .ok_or_else(|| Error::PreconditionUnmet("dependent member outside span".into()))?;
        for (slot, c) in bcof.iter_mut().zip(&coeffs) {
            *slot = &*slot + &cof[j].scale(c);
        }
    }
    let basis: Vec<IntPolynomial> = basis_idx.iter().map(|&b| ints[b].clone()).collect();
    if combination(&basis, &bcof) != d_rat {
        return Err(Error::PreconditionUnmet("independence reduction broke the identity".into()));
    }

    // Stage 3: degree reduction modulo the highest-degree basis member.
    let m = (0..basis.len())
        .max_by_key(|&j| (basis[j].degree(), std::cmp::Reverse(j)))
        .unwrap();
    let pm = basis[m].to_rat();
    for j in 0..basis.len() {
        if j == m {
            continue;
        }
        let (qq, rr) = bcof[j].div_rem(&pm);
        bcof[j] = rr;
        bcof[m] = &bcof[m] + &(&qq * &basis[j].to_rat());
    }
    if combination(&basis, &bcof) != d_rat {
        return Err(Error::PreconditionUnmet("degree reduction broke the identity".into()));
    }

    // Stage 4: bounded-height solution of the coefficient system.
    let n_eff = n.max(1);
    let rows = 2 * n_eff;
    let mut columns: Vec<(usize, usize, Vec<Rational>)> = Vec::new();
    for (j, p) in basis.iter().enumerate() {
        for k in 0..n_eff {
            columns.push((j, k, coeff_vector(p, rows, k)));
        }
    }
    let w = coeff_vector(&d, rows, 0);
    let col_vectors: Vec<Vec<Rational>> = columns.iter().map(|c| c.2.clone()).collect();
    let matrix: Vec<Vec<Rational>> = (0..rows)
        .map(|i| col_vectors.iter().map(|v| v[i].clone()).collect())
        .collect();
    let pivots = pivot_columns(&matrix);
    let chosen: Vec<Vec<Rational>> = pivots.iter().map(|&c| col_vectors[c].clone()).collect();
    let lambda = express_in_basis(&chosen, &w)
        .ok_or_else(|| Error::PreconditionUnmet("gcd outside the cofactor span".into()))?;
    let mut final_cof: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n_eff]; basis.len()];
    for (&c, l) in pivots.iter().zip(lambda) {
        let (j, k, _) = &columns[c];
        final_cof[*j][*k] = l;
    }
    let cofactors: Vec<RatPolynomial> = final_cof.into_iter().map(RatPolynomial::new).collect();
    let members: Vec<SignPolynomial> = basis_idx.iter().map(|&b| members[b].clone()).collect();
    let cert = BezoutCertificate {
        gcd: d,
        members,
        cofactors,
        n,
    };
    cert.verify().map_err(Error::PreconditionUnmet)?;
    Ok(cert)
}
