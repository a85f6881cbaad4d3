use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// `a + b s` with `s^2 = lambda`, where `lambda > 0` is fixed by the
/// surrounding algebra and `s` is its positive square root. Multiplication
/// needs `lambda` and is therefore a method rather than an operator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadScalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadScalar { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadScalar { a, b: BigRational::zero() }
    }

    pub fn from_i64(a: i64) -> Self {
        Self::rational(BigRational::from_integer(a.into()))
    }

    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    /// The generator `s`.
    pub fn root() -> Self {
        QuadScalar { a: BigRational::zero(), b: BigRational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// `a - b s`.
    pub fn galois_conj(&self) -> Self {
        QuadScalar { a: self.a.clone(), b: -self.b.clone() }
    }

    pub fn mul(&self, o: &Self, lambda: &BigRational) -> Self {
        QuadScalar {
            a: &self.a * &o.a + &self.b * &o.b * lambda,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QuadScalar { a: &self.a * r, b: &self.b * r }
    }

    /// `a^2 - lambda b^2`.
    pub fn norm(&self, lambda: &BigRational) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * lambda
    }

    /// Inverse, or `None` when the norm vanishes (zero, or `lambda` a square).
    pub fn inv(&self, lambda: &BigRational) -> Option<Self> {
        let n = self.norm(lambda);
        if n.is_zero() {
            return None;
        }
        Some(self.galois_conj().scale(&n.recip()))
    }

    /// The real number `a + b t`, for `t` a rational square root of `lambda`.
    pub fn embed(&self, t: &BigRational) -> BigRational {
        &self.a + &self.b * t
    }
}

impl Add for &QuadScalar {
    type Output = QuadScalar;
    fn add(self, o: &QuadScalar) -> QuadScalar {
        QuadScalar { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &QuadScalar {
    type Output = QuadScalar;
    fn sub(self, o: &QuadScalar) -> QuadScalar {
        QuadScalar { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl AddAssign<&QuadScalar> for QuadScalar {
    fn add_assign(&mut self, o: &QuadScalar) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { a: -self.a.clone(), b: -self.b.clone() }
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*s", self.b),
            (false, false) => write!(f, "{} + {}*s", self.a, self.b),
        }
    }
}
