//! Integer lattice vectors and projective rationals.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;

/// Exact rational scalar.
pub type Rational = Ratio<i64>;

/// A vector of the rank-2 lattice, written `a·e₁ + b·e₂`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVec {
    pub a: i64,
    pub b: i64,
}

impl LatticeVec {
    pub const ZERO: LatticeVec = LatticeVec { a: 0, b: 0 };
    pub const E1: LatticeVec = LatticeVec { a: 1, b: 0 };
    pub const E2: LatticeVec = LatticeVec { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        LatticeVec { a, b }
    }

    /// Determinant of the pair `(self, other)`.
    pub fn det(self, other: LatticeVec) -> i64 {
        self.a * other.b - self.b * other.a
    }

    pub fn gcd(self) -> i64 {
        self.a.gcd(&self.b)
    }

    pub fn is_primitive(self) -> bool {
        self.gcd() == 1
    }

    /// Both coordinates strictly positive: the interior of the cone spanned by `e₁, e₂`.
    pub fn is_interior(self) -> bool {
        self.a > 0 && self.b > 0
    }
}

impl Add for LatticeVec {
    type Output = LatticeVec;
    fn add(self, rhs: LatticeVec) -> LatticeVec {
        LatticeVec::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for LatticeVec {
    type Output = LatticeVec;
    fn sub(self, rhs: LatticeVec) -> LatticeVec {
        LatticeVec::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for LatticeVec {
    type Output = LatticeVec;
    fn neg(self) -> LatticeVec {
        LatticeVec::new(-self.a, -self.b)
    }
}

impl Mul<LatticeVec> for i64 {
    type Output = LatticeVec;
    fn mul(self, rhs: LatticeVec) -> LatticeVec {
        LatticeVec::new(self * rhs.a, self * rhs.b)
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// A point of the rational projective line: a finite rational or `∞`.
///
/// Continued fractions are evaluated in this type so that a vanishing
/// denominator in the middle of an evaluation simply produces `∞`, and
/// `a ± 1/∞ = a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Projective {
    Finite(Rational),
    Infinity,
}

impl Projective {
    pub fn from_integer(n: i64) -> Self {
        Projective::Finite(Rational::from_integer(n))
    }

    /// Builds `num/den` from homogeneous coordinates; `den = 0` is `∞`.
    pub fn from_pair(num: i64, den: i64) -> Self {
        if den == 0 {
            Projective::Infinity
        } else {
            Projective::Finite(Rational::new(num, den))
        }
    }

    pub fn finite(self) -> Option<Rational> {
        match self {
            Projective::Finite(r) => Some(r),
            Projective::Infinity => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Projective::from_integer(0)
    }

    /// Strictly positive finite value.
    pub fn is_positive(self) -> bool {
        matches!(self, Projective::Finite(r) if *r.numer() > 0)
    }

    /// Finite and non-negative.
    pub fn is_non_negative(self) -> bool {
        matches!(self, Projective::Finite(r) if *r.numer() >= 0)
    }
}

impl From<Rational> for Projective {
    fn from(r: Rational) -> Self {
        Projective::Finite(r)
    }
}

impl fmt::Display for Projective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Projective::Finite(r) => write!(f, "{r}"),
            Projective::Infinity => f.write_str("inf"),
        }
    }
}

/// Raised when an intermediate value leaves the `i64` range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("arithmetic overflow")]
pub struct Overflow;

/// `x·p + s·q` and `p` as homogeneous coordinates, with overflow checks.
pub(crate) fn affine_step(x: i64, sign: i64, num: i64, den: i64) -> Result<(i64, i64), Overflow> {
    let head = x.checked_mul(num).ok_or(Overflow)?;
    let tail = sign.checked_mul(den).ok_or(Overflow)?;
    let n = head.checked_add(tail).ok_or(Overflow)?;
    Ok((n, num))
}
