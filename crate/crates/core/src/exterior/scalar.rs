//! Exact elements of the field ℚ(√2).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element `rational + surd·√2` of ℚ(√2).
///
/// Both parts are kept in lowest terms by `BigRational`, so structural
/// equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    rational: BigRational,
    surd: BigRational,
}

impl Scalar {
    pub fn new(rational: BigRational, surd: BigRational) -> Self {
        Scalar { rational, surd }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// The element √2.
    pub fn sqrt2() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.surd
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rational.is_one() && self.surd.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    /// Galois conjugate `a - b√2`.
    pub fn conjugate(&self) -> Self {
        Scalar::new(self.rational.clone(), -self.surd.clone())
    }

    /// Field norm `a² - 2b²`; zero only for the zero element since √2 is irrational.
    pub fn norm(&self) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        &self.rational * &self.rational - two * &self.surd * &self.surd
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(Scalar::new(&c.rational / &n, &c.surd / &n))
    }

    /// Real sign of `a + b√2`, decided exactly by comparing squares.
    pub fn signum(&self) -> i32 {
        let a = &self.rational;
        let b = &self.surd;
        let sa = sign_of(a);
        let sb = sign_of(b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        // opposite signs: compare a² with 2b²
        let a2 = a * a;
        let b2 = BigRational::from_integer(BigInt::from(2)) * b * b;
        if a2 > b2 {
            sa
        } else {
            sb
        }
    }

    /// Renders the scalar as it appears in coefficient position.
    /// Mixed values are parenthesised, e.g. `(1+r2)`.
    fn fmt_plain(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.surd.is_zero()) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => fmt_surd(&self.surd, f),
            (false, false) => {
                write!(f, "({}", self.rational)?;
                if self.surd.is_positive() {
                    write!(f, "+")?;
                }
                fmt_surd(&self.surd, f)?;
                write!(f, ")")
            }
        }
    }
}

fn sign_of(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn fmt_surd(b: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if b.is_one() {
        write!(f, "r2")
    } else if (-b).is_one() {
        write!(f, "-r2")
    } else {
        write!(f, "{}*r2", b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_plain(f)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::new(q, BigRational::zero())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.rational + &rhs.rational, &self.surd + &rhs.surd)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.rational - &rhs.rational, &self.surd - &rhs.surd)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.surd.is_zero() && rhs.surd.is_zero() {
            return Scalar::new(&self.rational * &rhs.rational, BigRational::zero());
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let r = &self.rational * &rhs.rational + two * &self.surd * &rhs.surd;
        let s = &self.rational * &rhs.surd + &self.surd * &rhs.rational;
        Scalar::new(r, s)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inverse().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.rational.clone(), -self.surd.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.rational, -self.surd)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.rational += &rhs.rational;
        self.surd += &rhs.surd;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.rational -= &rhs.rational;
        self.surd -= &rhs.surd;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_operations_are_exact() {
        let a = Scalar::new(BigRational::from_integer(1.into()), BigRational::from_integer(1.into()));
        let inv = a.inverse().unwrap();
        // (1+√2)^{-1} = √2 - 1
        assert_eq!(inv, Scalar::sqrt2() - Scalar::one());
        assert!((&a * &inv).is_one());
        assert_eq!(&Scalar::sqrt2() * &Scalar::sqrt2(), Scalar::from_int(2));
        assert!(Scalar::zero().inverse().is_none());
    }

    #[test]
    fn half_sqrt2_is_inverse_of_sqrt2() {
        let half_r2 = &Scalar::from_ratio(1, 2) * &Scalar::sqrt2();
        assert_eq!(Scalar::sqrt2().inverse().unwrap(), half_r2);
    }

    #[test]
    fn lowest_terms_equality() {
        assert_eq!(Scalar::from_ratio(2, 4), Scalar::from_ratio(-1, -2));
        assert!(Scalar::from_ratio(0, 7).is_zero());
    }

    #[test]
    fn sign_is_exact() {
        // 1 - √2 < 0, 3 - 2√2 > 0
        let a = Scalar::one() - Scalar::sqrt2();
        assert_eq!(a.signum(), -1);
        let b = Scalar::from_int(3) - Scalar::from_int(2) * Scalar::sqrt2();
        assert_eq!(b.signum(), 1);
        assert_eq!(Scalar::zero().signum(), 0);
    }

    #[test]
    fn display() {
        assert_eq!(Scalar::from_ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(Scalar::sqrt2().to_string(), "r2");
        assert_eq!((Scalar::from_ratio(1, 2) * Scalar::sqrt2()).to_string(), "1/2*r2");
        assert_eq!((Scalar::one() - Scalar::sqrt2()).to_string(), "(1-r2)");
    }
}
