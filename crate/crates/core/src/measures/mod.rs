//! Finitely supported measures and piecewise-constant densities.

mod atomic;
mod field;
mod io;
mod step;

pub use atomic::{
    bernoulli_level, bernoulli_level_capped, bernoulli_level_interval, convolve, rescale, AtomicMeasure,
    IntervalMeasure, DEFAULT_SUPPORT_CAP,
};
pub use field::FieldMeasure;
pub(crate) use field::check_unit_interval;
pub use io::{atoms_to_csv, parse_atoms, read_atoms};
pub use step::{smooth, step_convolve, StepDensity};

use crate::algebra::AlgebraicNumber;
use crate::error::Result;
use crate::numerics::{IntervalScalar, Rational};

/// A Bernoulli parameter in one of its accepted forms.
#[derive(Clone, Debug)]
pub enum Parameter {
    Rational(Rational),
    Algebraic(AlgebraicNumber),
    Interval(IntervalScalar),
}

/// Level distribution in the carrier matching its parameter.
#[derive(Clone, Debug)]
pub enum LevelMeasure {
    Rational(AtomicMeasure),
    Field(FieldMeasure),
    Interval(IntervalMeasure),
}

impl LevelMeasure {
    pub fn len(&self) -> usize {
        match self {
            LevelMeasure::Rational(m) => m.len(),
            LevelMeasure::Field(m) => m.len(),
            LevelMeasure::Interval(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Dispatches on the parameter form. Algebraic parameters with a linear
/// defining polynomial use the rational path.
pub fn bernoulli_level_of(lambda: &Parameter, n: usize) -> Result<LevelMeasure> {
    match lambda {
        Parameter::Rational(q) => Ok(LevelMeasure::Rational(bernoulli_level(q, n)?)),
        Parameter::Algebraic(a) => match a.as_rational() {
            Some(q) => Ok(LevelMeasure::Rational(bernoulli_level(&q, n)?)),
            None => Ok(LevelMeasure::Field(FieldMeasure::level(a, n)?)),
        },
        Parameter::Interval(x) => Ok(LevelMeasure::Interval(bernoulli_level_interval(x, n)?)),
    }
}
