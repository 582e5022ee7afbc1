use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::atomic::AtomicMeasure;
use crate::numerics::{format_rational, Rational};

/// Piecewise-constant probability density with rational breakpoints.
///
/// `values[i]` is the density on `[breakpoints[i], breakpoints[i+1])`.
/// Adjacent pieces with equal values are merged and the outermost pieces
/// are non-zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepDensity {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
}

#[derive(Serialize)]
struct PieceRepr {
    from: String,
    to: String,
    density: String,
}

impl Serialize for StepDensity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<PieceRepr> = self
            .pieces()
            .map(|(a, b, v)| PieceRepr {
                from: format_rational(a),
                to: format_rational(b),
                density: format_rational(v),
            })
            .collect();
        v.serialize(s)
    }
}

impl StepDensity {
    pub fn new(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        if breakpoints.len() != values.len() + 1 {
            return Err(Error::OutOfRange("need one more breakpoint than values".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::OutOfRange("breakpoints must increase strictly".into()));
        }
        if values.iter().any(|v| v.is_negative()) {
            return Err(Error::OutOfRange("negative density".into()));
        }
        let f = StepDensity::canonical(breakpoints, values);
        let mass = f.mass();
        if !mass.is_one() {
            return Err(Error::PreconditionUnmet(format!("density integrates to {mass}, not 1")));
        }
        Ok(f)
    }

    /// Uniform density on `[a, b]`.
    pub fn uniform(a: &Rational, b: &Rational) -> Result<Self> {
        if a >= b {
            return Err(Error::NonPositiveArgument(format!("interval [{a}, {b}]")));
        }
        let len = b - a;
        Ok(StepDensity {
            breakpoints: vec![a.clone(), b.clone()],
            values: vec![len.recip()],
        })
    }

    fn canonical(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Self {
        let mut bps: Vec<Rational> = Vec::with_capacity(breakpoints.len());
        let mut vals: Vec<Rational> = Vec::with_capacity(values.len());
        for (b, v) in breakpoints.iter().zip(values) {
            if vals.last() != Some(&v) {
                bps.push(b.clone());
                vals.push(v);
            }
        }
        if let Some(end) = breakpoints.last() {
            bps.push(end.clone());
        }
        let lead = vals.iter().take_while(|v| v.is_zero()).count();
        vals.drain(..lead);
        bps.drain(..lead);
        while vals.last().is_some_and(|v| v.is_zero()) {
            vals.pop();
            bps.pop();
        }
        if vals.is_empty() {
            bps.clear();
        }
        StepDensity {
            breakpoints: bps,
            values: vals,
        }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `(left, right, density)` for each piece.
    pub fn pieces(&self) -> impl Iterator<Item = (&Rational, &Rational, &Rational)> {
        self.breakpoints
            .windows(2)
            .zip(&self.values)
            .map(|(w, v)| (&w[0], &w[1], v))
    }

    pub fn mass(&self) -> Rational {
        self.pieces().map(|(a, b, v)| (b - a) * v).sum()
    }

    /// Density at `x` (pieces are closed on the left).
    pub fn at(&self, x: &Rational) -> Rational {
        self.pieces()
            .find(|(a, b, _)| *a <= x && x < *b)
            .map(|(_, _, v)| v.clone())
            .unwrap_or_else(Rational::zero)
    }
}

/// Density of `X + Y` with `X ~ f` and `Y ~ μ` independent.
pub fn step_convolve(f: &StepDensity, mu: &AtomicMeasure) -> StepDensity {
    let mut delta: BTreeMap<Rational, Rational> = BTreeMap::new();
    for (x, w) in mu.iter() {
        let mut prev = Rational::zero();
        for (a, _, v) in f.pieces() {
            *delta.entry(a + x).or_insert_with(Rational::zero) += (v - &prev) * w;
            prev = v.clone();
        }
        if let Some(end) = f.breakpoints.last() {
            *delta.entry(end + x).or_insert_with(Rational::zero) -= prev * w;
        }
    }
    let mut bps = Vec::with_capacity(delta.len());
    let mut vals = Vec::with_capacity(delta.len());
    let mut level = Rational::zero();
    for (x, d) in delta {
        bps.push(x);
        level += d;
        vals.push(level.clone());
    }
    vals.pop();
    StepDensity::canonical(bps, vals)
}

/// Density of `X + U` with `U` uniform on `[0, r]`.
pub fn smooth(mu: &AtomicMeasure, r: &Rational) -> Result<StepDensity> {
    if !r.is_positive() {
        return Err(Error::NonPositiveArgument(format!("scale {r}")));
    }
    Ok(step_convolve(&StepDensity::uniform(&Rational::zero(), r)?, mu))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn smooth_dirac() {
        let f = smooth(&AtomicMeasure::dirac(q(0, 1)), &q(1, 1)).unwrap();
        assert_eq!(f.breakpoints(), &[q(0, 1), q(1, 1)]);
        assert_eq!(f.values(), &[q(1, 1)]);
    }

    #[test]
    fn smooth_two_atoms() {
        let mu = AtomicMeasure::uniform(&[q(0, 1), q(1, 2)]).unwrap();
        let f = smooth(&mu, &q(1, 1)).unwrap();
        assert_eq!(f.breakpoints(), &[q(0, 1), q(1, 2), q(1, 1), q(3, 2)]);
        assert_eq!(f.values(), &[q(1, 2), q(1, 1), q(1, 2)]);
        assert_eq!(f.at(&q(1, 2)), q(1, 1));
        assert_eq!(f.at(&q(3, 2)), q(0, 1));
    }

    #[test]
    fn disjoint_shifts_keep_a_gap() {
        let mu = AtomicMeasure::uniform(&[q(0, 1), q(3, 1)]).unwrap();
        let f = smooth(&mu, &q(1, 1)).unwrap();
        assert_eq!(f.breakpoints(), &[q(0, 1), q(1, 1), q(3, 1), q(4, 1)]);
        assert_eq!(f.values(), &[q(1, 2), q(0, 1), q(1, 2)]);
        assert!(f.mass().is_one());
    }

    #[test]
    fn adjacent_shifts_merge() {
        let mu = AtomicMeasure::uniform(&[q(0, 1), q(1, 1)]).unwrap();
        let f = smooth(&mu, &q(1, 1)).unwrap();
        assert_eq!(f.breakpoints(), &[q(0, 1), q(2, 1)]);
    }

    #[test]
    fn constructor_checks_mass() {
        assert!(StepDensity::new(vec![q(0, 1), q(1, 1)], vec![q(1, 2)]).is_err());
        let f = StepDensity::new(vec![q(0, 1), q(1, 1), q(2, 1)], vec![q(1, 2), q(1, 2)]).unwrap();
        assert_eq!(f.values().len(), 1);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn convolution_conserves_mass(atoms in proptest::collection::vec((-64i64..64, 1i64..9), 1..12), r in 1i64..16) {
                let mu = AtomicMeasure::normalized(atoms.iter().map(|&(x, w)| (q(x, 16), q(w, 1)))).unwrap();
                let f = smooth(&mu, &q(r, 8)).unwrap();
                prop_assert!(f.mass().is_one());
                let g = step_convolve(&f, &mu);
                prop_assert!(g.mass().is_one());
                prop_assert!(g.values().iter().all(|v| !v.is_negative()));
            }
        }
    }
}
