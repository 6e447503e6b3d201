//! Exact phases on the unit circle.
//!
//! Every cocycle value, character value, and grading weight in this crate is a
//! root of unity. Storing the angle as a reduced fraction of a full turn keeps
//! the algebraic laws exact: cocycle verification, pairing bilinearity, and
//! power/conjugation identities are checked by rational equality rather than
//! floating-point comparison. The complex value is materialized only where
//! numerics actually need it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::Ratio;

/// A point on the unit circle, stored as a fraction of a full turn in `[0, 1)`.
///
/// `Phase::new(1, 4)` is the imaginary unit, `Phase::new(1, 2)` is `-1`.
/// Arithmetic is exact; two phases are equal iff they denote the same root of
/// unity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(Ratio<i64>);

impl Phase {
    /// The trivial phase, i.e. the complex number `1`.
    pub fn zero() -> Self {
        Phase(Ratio::from_integer(0))
    }

    /// The half turn, i.e. the complex number `-1`.
    pub fn half() -> Self {
        Phase::new(1, 2)
    }

    /// The phase of `numer/denom` turns, reduced and wrapped into `[0, 1)`.
    ///
    /// # Panics
    ///
    /// Panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Self {
        Phase(wrap(Ratio::new(numer, denom)))
    }

    /// The angle as a reduced fraction of a full turn, in `[0, 1)`.
    pub fn turns(&self) -> Ratio<i64> {
        self.0
    }

    /// The multiplicative order of this phase as a root of unity.
    pub fn order(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        *self.0.numer() == 0
    }

    /// `e^{2πi · turns}`.
    pub fn to_complex(&self) -> Complex64 {
        let angle = std::f64::consts::TAU * (*self.0.numer() as f64) / (*self.0.denom() as f64);
        Complex64::new(angle.cos(), angle.sin())
    }

    /// The numerator when the phase is written over the denominator `order`.
    ///
    /// `order` must be a positive multiple of `self.order()`.
    pub fn numer_for_order(&self, order: i64) -> i64 {
        assert!(order > 0 && order % self.order() == 0);
        self.0.numer() * (order / self.0.denom())
    }

    /// Complex conjugation, i.e. the negated angle.
    pub fn conj(&self) -> Self {
        -*self
    }
}

fn wrap(r: Ratio<i64>) -> Ratio<i64> {
    r - r.floor()
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Phase(wrap(self.0 + rhs.0))
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        Phase(wrap(self.0 - rhs.0))
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase(wrap(-self.0))
    }
}

impl Mul<i64> for Phase {
    type Output = Phase;
    fn mul(self, rhs: i64) -> Phase {
        Phase(wrap(self.0 * rhs))
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} turn", self.0.numer(), self.0.denom())
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
