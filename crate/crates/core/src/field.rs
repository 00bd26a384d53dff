//! Exact scalar fields: the rationals and prime fields `GF(p)`.
//!
//! A field is a value, not a type-level constant, so the modulus of a prime
//! field travels with each call.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("cannot read {0:?} as a scalar")]
    BadScalar(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown field {0:?}; expected `q` or `fp:<prime>`")]
    BadSpec(String),
}

#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Result<Self::Elem, FieldError>;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// A uniformly random element for prime fields; a small integer for the
    /// rationals.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    fn from_ratio(&self, num: i64, den: i64) -> Result<Self::Elem, FieldError> {
        let d = self.inv(&self.from_i64(den))?;
        Ok(self.mul(&self.from_i64(num), &d))
    }

    /// Reads an integer `n` or a fraction `n/d`.
    fn parse(&self, text: &str) -> Result<Self::Elem, FieldError> {
        let bad = || FieldError::BadScalar(text.to_string());
        let t = text.trim();
        match t.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                self.from_ratio(n, d)
            }
            None => Ok(self.from_i64(t.parse().map_err(|_| bad())?)),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x + y
    }
    fn neg(&self, x: &BigRational) -> BigRational {
        -x
    }
    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }
    fn inv(&self, x: &BigRational) -> Result<BigRational, FieldError> {
        if x.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(x.recip())
        }
    }
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let n: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(1..=4);
        BigRational::new(n.into(), d.into())
    }
}

/// `GF(p)` for a prime `p < 2^32`; elements are residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut x: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * x % self.p;
            }
            x = x * x % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, x: &u64, y: &u64) -> u64 {
        (x + y) % self.p
    }
    fn neg(&self, x: &u64) -> u64 {
        (self.p - x) % self.p
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        x * y % self.p
    }
    fn inv(&self, x: &u64) -> Result<u64, FieldError> {
        if *x == 0 {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self.pow(*x, self.p - 2))
        }
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

/// Field selector used on the command line: `q` or `fp:<p>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(PrimeField),
}

impl FromStr for FieldSpec {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, FieldError> {
        match s.trim() {
            "q" | "Q" => Ok(FieldSpec::Rationals),
            t => {
                let p = t
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| FieldError::BadSpec(s.to_string()))?;
                Ok(FieldSpec::Prime(PrimeField::new(p)?))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("q"),
            FieldSpec::Prime(pf) => write!(f, "fp:{}", pf.modulus()),
        }
    }
}

/// Renders a rational as `n` or `n/d`.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        let sign = if x.is_negative() { "-" } else { "" };
        format!("{sign}{}/{}", x.numer().abs(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_validation() {
        assert!(PrimeField::new(101).is_ok());
        assert_eq!(PrimeField::new(100), Err(FieldError::NotPrime(100)));
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(4_294_967_311).is_err());
    }

    #[test]
    fn parse_scalars() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.parse("-1").unwrap(), 6);
        assert_eq!(f.parse("1/2").unwrap(), 4);
        assert_eq!(f.parse("1/7"), Err(FieldError::DivisionByZero));
        assert!(f.parse("x").is_err());
        let q = Rationals;
        assert_eq!(format_rational(&q.parse("-6/4").unwrap()), "-3/2");
        assert_eq!(format_rational(&q.parse("8").unwrap()), "8");
    }

    #[test]
    fn field_specs() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("fp:101".parse::<FieldSpec>().unwrap().to_string(), "fp:101");
        assert!("fp:9".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
    }

    proptest! {
        #[test]
        fn prime_field_inverse(x in 1u64..101) {
            let f = PrimeField::new(101).unwrap();
            prop_assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), 1);
        }

        #[test]
        fn prime_field_distributes(x in 0u64..7, y in 0u64..7, z in 0u64..7) {
            let f = PrimeField::new(7).unwrap();
            prop_assert_eq!(f.mul(&x, &f.add(&y, &z)), f.add(&f.mul(&x, &y), &f.mul(&x, &z)));
            prop_assert_eq!(f.add(&x, &f.neg(&x)), 0);
        }
    }
}
