//! Rectangular complex enclosures.

use std::ops::{Add, Mul, Neg, Sub};

use super::dyadic::Dyadic;
use super::interval::IntervalScalar;
use crate::error::Result;

/// A box `re x im` containing a complex value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: IntervalScalar,
    pub im: IntervalScalar,
}

impl ComplexInterval {
    pub fn new(re: IntervalScalar, im: IntervalScalar) -> Self {
        ComplexInterval { re, im }
    }

    pub fn real(re: IntervalScalar) -> Self {
        let p = re.precision();
        ComplexInterval {
            re,
            im: IntervalScalar::zero(p),
        }
    }

    pub fn point(re: Dyadic, im: Dyadic, prec: u32) -> Self {
        ComplexInterval {
            re: IntervalScalar::point(re, prec),
            im: IntervalScalar::point(im, prec),
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        ComplexInterval::point(Dyadic::from_f64(re), Dyadic::from_f64(im), prec)
    }

    pub fn precision(&self) -> u32 {
        self.re.precision().max(self.im.precision())
    }

    pub fn abs_sq(&self) -> IntervalScalar {
        &self.re.square() + &self.im.square()
    }

    pub fn abs(&self) -> IntervalScalar {
        self.abs_sq().sqrt().expect("sum of squares is non-negative")
    }

    pub fn conj(&self) -> Self {
        ComplexInterval {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn div(&self, other: &ComplexInterval) -> Result<ComplexInterval> {
        let den = other.abs_sq();
        let num = self * &other.conj();
        Ok(ComplexInterval {
            re: num.re.div(&den)?,
            im: num.im.div(&den)?,
        })
    }

    pub fn scale(&self, k: &IntervalScalar) -> ComplexInterval {
        ComplexInterval {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    /// Widen every side by `r`.
    pub fn inflate(&self, r: &Dyadic) -> ComplexInterval {
        let p = self.precision();
        let e = IntervalScalar::new(-r, r.clone(), p);
        ComplexInterval {
            re: &self.re + &e,
            im: &self.im + &e,
        }
    }

    pub fn overlaps(&self, other: &ComplexInterval) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }

    pub fn contains_box(&self, other: &ComplexInterval) -> bool {
        self.re.contains_interval(&other.re) && self.im.contains_interval(&other.im)
    }

    /// Lower bound on the Euclidean distance between the two boxes.
    pub fn separation(&self, other: &ComplexInterval) -> IntervalScalar {
        let p = self.precision().max(other.precision());
        let dx = IntervalScalar::point(self.re.separation(&other.re), p);
        let dy = IntervalScalar::point(self.im.separation(&other.im), p);
        let d = (&dx.square() + &dy.square()).sqrt().unwrap();
        IntervalScalar::point(d.lo().clone(), p)
    }

    /// Upper bound on the Euclidean distance between any two points.
    pub fn max_distance(&self, other: &ComplexInterval) -> Dyadic {
        let dx = Dyadic::max(&(&self.re.hi().clone() - other.re.lo()), &(other.re.hi() - self.re.lo()));
        let dy = Dyadic::max(&(&self.im.hi().clone() - other.im.lo()), &(other.im.hi() - self.im.lo()));
        let p = self.precision();
        let d = (&IntervalScalar::point(dx, p).square() + &IntervalScalar::point(dy, p).square())
            .sqrt()
            .unwrap();
        d.hi().clone()
    }

    /// Larger of the two side lengths.
    pub fn diameter(&self) -> Dyadic {
        Dyadic::max(&self.re.width(), &self.im.width())
    }

    pub fn mid(&self) -> (Dyadic, Dyadic) {
        (self.re.mid(), self.im.mid())
    }
}

impl Add for &ComplexInterval {
    type Output = ComplexInterval;
    fn add(self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &ComplexInterval {
    type Output = ComplexInterval;
    fn sub(self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &ComplexInterval {
    type Output = ComplexInterval;
    fn neg(self) -> ComplexInterval {
        ComplexInterval {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = ComplexInterval::from_f64(0.0, 1.0, 64);
        let sq = &i * &i;
        assert_eq!(sq.re, IntervalScalar::from_int(-1, 64));
        assert!(sq.im.is_point() && sq.im.contains_zero());
    }

    #[test]
    fn division_contains_quotient() {
        let a = ComplexInterval::from_f64(1.0, 2.0, 64);
        let b = ComplexInterval::from_f64(3.0, -1.0, 64);
        // (1+2i)/(3-i) = (1+2i)(3+i)/10 = (1 + 7i)/10
        let q = a.div(&b).unwrap();
        assert!(q.re.contains(&Dyadic::from_f64(0.1)) || q.re.width_at_most(-60));
        assert!((q.re.to_f64() - 0.1).abs() < 1e-15 && (q.im.to_f64() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn separation_of_disjoint_boxes() {
        let a = ComplexInterval::from_f64(0.0, 0.0, 64);
        let b = ComplexInterval::from_f64(3.0, 4.0, 64);
        assert_eq!(a.separation(&b).lo(), &Dyadic::from_int(5));
        assert!(a.max_distance(&b) >= Dyadic::from_int(5));
    }
}
