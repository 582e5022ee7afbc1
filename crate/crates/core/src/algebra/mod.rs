//! Integer and rational polynomials, `P_d`, gcds, Bézout certificates,
//! Mahler measure, certified roots and the audits over `P_n`.

pub mod audit;
pub mod bezout;
pub mod enumerate;
pub mod gcd;
pub mod mahler;
pub mod poly;
pub mod roots;

pub use audit::{jensen_audit, jensen_radius, separation_audit, separation_bound};
pub use bezout::{bezout_certificate, cofactor_height_bound, BezoutCertificate};
pub use enumerate::{enumerate_signpolys, sign_poly_at};
pub use gcd::{gcd_pair, gcd_set, square_free_part};
pub use mahler::mahler_measure;
pub use poly::{IntPolynomial, RatPolynomial, SignPolynomial};
pub use roots::{isolate_roots, isolate_roots_with, AlgebraicNumber, IsolatedRoot, RootLocation};

/// `l1` norm of an integer polynomial.
pub fn l1_norm(p: &IntPolynomial) -> num_bigint::BigInt {
    p.l1_norm()
}

/// Largest absolute numerator or denominator among the coefficients.
pub fn naive_height(q: &RatPolynomial) -> num_bigint::BigInt {
    q.naive_height()
}
