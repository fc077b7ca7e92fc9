//! Elements `a + b sqrt(p)` of `Q(sqrt p)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::weight::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    pub a: BigRational,
    pub b: BigRational,
    pub p: i64,
}

fn big(r: Rat) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl QuadScalar {
    pub fn new(p: i64, a: Rat, b: Rat) -> Self {
        QuadScalar { a: big(a), b: big(b), p }
    }

    pub fn zero(p: i64) -> Self {
        QuadScalar { a: BigRational::zero(), b: BigRational::zero(), p }
    }

    pub fn one(p: i64) -> Self {
        Self::rational(p, Rat::one())
    }

    pub fn rational(p: i64, a: Rat) -> Self {
        Self::new(p, a, Rat::zero())
    }

    /// `b sqrt(p)`.
    pub fn surd(p: i64, b: Rat) -> Self {
        Self::new(p, Rat::zero(), b)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `a^2 - p b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigInt::from(self.p)
    }

    /// `None` when the norm vanishes (zero, or a zero divisor for square `p`).
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadScalar { a: &self.a / &n, b: -&self.b / &n, p: self.p })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QuadScalar { a: &self.a * r, b: &self.b * r, p: self.p }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.p), |acc, _| &acc * self)
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt({})", self.b, self.p),
            (false, false) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}*sqrt({})", self.a, sign, self.b.abs(), self.p)
            }
        }
    }
}

impl Add for &QuadScalar {
    type Output = QuadScalar;
    fn add(self, o: &QuadScalar) -> QuadScalar {
        debug_assert_eq!(self.p, o.p);
        QuadScalar { a: &self.a + &o.a, b: &self.b + &o.b, p: self.p }
    }
}

impl Sub for &QuadScalar {
    type Output = QuadScalar;
    fn sub(self, o: &QuadScalar) -> QuadScalar {
        debug_assert_eq!(self.p, o.p);
        QuadScalar { a: &self.a - &o.a, b: &self.b - &o.b, p: self.p }
    }
}

impl Mul for &QuadScalar {
    type Output = QuadScalar;
    fn mul(self, o: &QuadScalar) -> QuadScalar {
        debug_assert_eq!(self.p, o.p);
        let p = BigInt::from(self.p);
        QuadScalar {
            a: &self.a * &o.a + &self.b * &o.b * p,
            b: &self.a * &o.b + &self.b * &o.a,
            p: self.p,
        }
    }
}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { a: -&self.a, b: -&self.b, p: self.p }
    }
}

impl AddAssign<&QuadScalar> for QuadScalar {
    fn add_assign(&mut self, o: &QuadScalar) {
        debug_assert_eq!(self.p, o.p);
        self.a += &o.a;
        self.b += &o.b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_squares_to_p() {
        let r = QuadScalar::surd(3, Rat::one());
        assert_eq!(&r * &r, QuadScalar::rational(3, Rat::from(3)));
    }

    #[test]
    fn inverse() {
        let x = QuadScalar::new(2, Rat::new(1, 2), Rat::from(-3));
        assert_eq!(&x * &x.inv().unwrap(), QuadScalar::one(2));
        assert!(QuadScalar::zero(2).inv().is_none());
        // 2 - sqrt(4) is a zero divisor in the formal ring.
        assert!(QuadScalar::new(4, Rat::from(2), Rat::from(-1)).inv().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(QuadScalar::new(2, Rat::from(1), Rat::new(-1, 2)).to_string(), "1-1/2*sqrt(2)");
        assert_eq!(QuadScalar::surd(5, Rat::from(2)).to_string(), "2*sqrt(5)");
        assert_eq!(QuadScalar::zero(5).to_string(), "0");
    }
}
