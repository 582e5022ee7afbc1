use super::poly::SignPolynomial;
use crate::error::{Error, Result};

/// Default cap on unfiltered enumeration: all of `P_20`.
pub const DEFAULT_ENUMERATION_CAP: u128 = 3u128.pow(21);

/// The `index`-th element of `P_d` in enumeration order: base-3 digits of
/// `index`, constant term least significant, digit `k` meaning coefficient
/// `k - 1`.
pub fn sign_poly_at(d: usize, mut index: u128) -> SignPolynomial {
    let mut c = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        c.push((index % 3) as i8 - 1);
        index /= 3;
    }
    SignPolynomial::new(c, d).expect("digits are in range")
}

/// Iterator over `P_d` in lexicographic order (`-1 < 0 < 1`), constant term
/// varying fastest.
pub struct SignPolyIter {
    digits: Vec<i8>,
    bound: usize,
    done: bool,
}

impl Iterator for SignPolyIter {
    type Item = SignPolynomial;

    fn next(&mut self) -> Option<SignPolynomial> {
        if self.done {
            return None;
        }
        let out = SignPolynomial::new(self.digits.clone(), self.bound).expect("in range");
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.done = true;
                break;
            }
            if self.digits[i] < 1 {
                self.digits[i] += 1;
                break;
            }
            self.digits[i] = -1;
            i += 1;
        }
        Some(out)
    }
}

/// Stream of `P_d`, optionally filtered. Without a filter the full size
/// `3^(d+1)` must not exceed `cap`.
pub fn enumerate_signpolys<'a>(
    d: usize,
    filter: Option<Box<dyn Fn(&SignPolynomial) -> bool + 'a>>,
    cap: u128,
) -> Result<Box<dyn Iterator<Item = SignPolynomial> + 'a>> {
    let total = 3u128
        .checked_pow(d as u32 + 1)
        .ok_or_else(|| Error::cap(format!("3^{} overflows", d + 1), u64::MAX))?;
    let it = SignPolyIter {
        digits: vec![-1; d + 1],
        bound: d,
        done: false,
    };
    match filter {
        Some(f) => Ok(Box::new(it.filter(move |p| f(p)))),
        None if total > cap => Err(Error::cap(
            format!("enumerating P_{d} ({total} polynomials)"),
            cap.min(u64::MAX as u128) as u64,
        )),
        None => Ok(Box::new(it)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_degree_counts() {
        let all0: Vec<_> = enumerate_signpolys(0, None, DEFAULT_ENUMERATION_CAP).unwrap().collect();
        assert_eq!(all0.len(), 3);
        assert_eq!(all0[0].coeffs(), &[-1]);
        assert!(all0[1].is_zero());
        assert_eq!(enumerate_signpolys(1, None, DEFAULT_ENUMERATION_CAP).unwrap().count(), 9);
        assert_eq!(enumerate_signpolys(9, None, DEFAULT_ENUMERATION_CAP).unwrap().count(), 59049);
    }

    #[test]
    fn order_is_constant_term_fastest_and_matches_index() {
        let v: Vec<_> = enumerate_signpolys(2, None, DEFAULT_ENUMERATION_CAP).unwrap().collect();
        assert_eq!(v[1].coeffs(), &[0, -1, -1]);
        for (i, p) in v.iter().enumerate() {
            assert_eq!(p, &sign_poly_at(2, i as u128));
        }
        let mut sorted = v.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), 27);
    }

    #[test]
    fn cap_and_filter() {
        assert!(matches!(enumerate_signpolys(5, None, 100), Err(Error::CapExceeded { .. })));
        let f: Box<dyn Fn(&SignPolynomial) -> bool> = Box::new(|p| p.coeffs().first() == Some(&1));
        assert_eq!(enumerate_signpolys(5, Some(f), 100).unwrap().count(), 243);
    }
}
