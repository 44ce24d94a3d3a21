//! Exact coefficient fields.
//!
//! Everything in this crate is generic over [`Field`]. Two implementations are
//! provided: arbitrary-precision rationals ([`Q`]) and prime fields
//! ([`Fp`]), the latter with the modulus fixed at compile time.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

pub trait Field:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    /// Parses `"a"` or `"a/b"` with integer `a`, `b`.
    fn parse(s: &str) -> Result<Self, Error>;
    /// Short identifier used in reports, e.g. `Q` or `F7`.
    fn name() -> String;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn sign(odd: bool) -> Self {
        if odd {
            -Self::one()
        } else {
            Self::one()
        }
    }
}

/// Rational numbers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q(pub BigRational);

impl Q {
    pub fn new(num: i64, den: i64) -> Self {
        Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Add for Q {
    type Output = Q;
    fn add(self, rhs: Q) -> Q {
        Q(self.0 + rhs.0)
    }
}

impl Sub for Q {
    type Output = Q;
    fn sub(self, rhs: Q) -> Q {
        Q(self.0 - rhs.0)
    }
}

impl Mul for Q {
    type Output = Q;
    fn mul(self, rhs: Q) -> Q {
        Q(self.0 * rhs.0)
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

fn split_fraction(s: &str) -> Result<(BigInt, BigInt), Error> {
    let bad = || Error::Parse {
        pointer: String::new(),
        message: format!("invalid scalar `{s}`"),
    };
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok((num, den))
}

impl Field for Q {
    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Q(self.0.recip()))
        }
    }
    fn from_i64(v: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(v)))
    }
    fn parse(s: &str) -> Result<Self, Error> {
        let (n, d) = split_fraction(s)?;
        Ok(Q(BigRational::new(n, d)))
    }
    fn name() -> String {
        "Q".to_string()
    }
}

/// The prime field with `P` elements. `P` must be a prime below `2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn parse(s: &str) -> Result<Self, Error> {
        let (n, d) = split_fraction(s)?;
        let p = BigInt::from(P);
        let reduce = |x: BigInt| -> u64 {
            let r = ((x % &p) + &p) % &p;
            r.to_string().parse().expect("residue fits in u64")
        };
        let den = Fp::<P>(reduce(d));
        let inv = den.inv().ok_or_else(|| Error::Parse {
            pointer: String::new(),
            message: format!("denominator of `{s}` vanishes mod {P}"),
        })?;
        Ok(Fp::<P>(reduce(n)) * inv)
    }
    fn name() -> String {
        format!("F{P}")
    }
}

/// Primes the command line accepts for `--field Fp:P`.
pub const SUPPORTED_PRIMES: &[u64] = &[2, 3, 5, 7, 11, 13, 65521, 2_147_483_647];

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn rational_parse_and_print() {
        let a = Q::parse("6/4").unwrap();
        assert_eq!(a.to_string(), "3/2");
        assert_eq!(Q::parse(" -3 ").unwrap(), Q::from_i64(-3));
        assert!(Q::parse("1/0").is_err());
        assert!(Q::parse("x").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let a = F7::from_i64(3);
        assert_eq!((a * a.inv().unwrap()), F7::one());
        assert_eq!(-a + a, F7::zero());
        assert_eq!(F7::parse("1/2").unwrap(), F7::from_i64(4));
        assert!(F7::parse("1/7").is_err());
        assert_eq!(F7::from_i64(-1).value(), 6);
    }

    #[test]
    fn every_nonzero_residue_is_invertible() {
        for v in 1..97 {
            let x = Fp::<97>::from_i64(v);
            assert!((x * x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn supported_primes_are_prime() {
        for &p in SUPPORTED_PRIMES {
            let mut d = 2;
            while d * d <= p {
                assert!(p % d != 0, "{p} divisible by {d}");
                d += 1;
            }
        }
    }
}
