//! Exact rational scalars.
//!
//! `Rat` wraps an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. All model arithmetic in the crate bottoms out here;
//! there is no floating-point mode anywhere.

use alloc::string::ToString;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An exact rational number, canonical form `p/q` with `q > 0` and
/// `gcd(|p|, q) = 1`; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Parses `p/q` or a plain integer, with an optional leading sign.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let bad = |msg: &str| Error::Syntax { pos: 0, msg: msg.to_string() };
        let (num_str, den_str) = match text.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (text, None),
        };
        let numer: BigInt = num_str
            .trim()
            .parse()
            .map_err(|_| bad("expected integer numerator"))?;
        let denom: BigInt = match den_str {
            Some(d) => d.trim().parse().map_err(|_| bad("expected integer denominator"))?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

// Debug forwards to Display to keep counterexample dumps readable.
impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

/// Serializes as the canonical `p/q` string so reports stay exact.
impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(-2, -4), Rat::new(1, 2));
        assert_eq!(Rat::new(2, -4), Rat::new(-1, 2));
        assert_eq!(Rat::new(0, 7), Rat::zero());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(Rat::parse("3/6").unwrap(), Rat::new(1, 2));
        assert_eq!(Rat::parse("-5").unwrap(), Rat::from_int(-5));
        assert_eq!(Rat::parse("7").unwrap().to_string(), "7");
        assert_eq!(Rat::parse("-1/2").unwrap().to_string(), "-1/2");
        assert!(Rat::parse("1/0").is_err());
        assert!(Rat::parse("x").is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Rat::new(1, 3);
        let b = Rat::new(1, 6);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&a * &Rat::from_int(3), Rat::one());
        assert_eq!(&Rat::new(5, 6) / &Rat::new(5, 6), Rat::one());
    }

    #[test]
    fn ordering() {
        assert!(Rat::new(1, 3) < Rat::new(1, 2));
        assert!(Rat::from_int(-1) < Rat::zero());
    }
}
