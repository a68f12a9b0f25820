//! Exact coefficient fields.

use std::fmt::Debug;
use std::str::FromStr;

use ficat::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

pub trait Field: Clone + Debug + Send + Sync {
    type E: Clone + PartialEq + Debug + Send + Sync;

    fn name(&self) -> String;
    fn zero(&self) -> Self::E;
    fn from_i64(&self, x: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn to_json(&self, a: &Self::E) -> Value;

    fn one(&self) -> Self::E {
        self.from_i64(1)
    }

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;

    fn name(&self) -> String {
        "Q".into()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        BigRational::one() / a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn to_json(&self, a: &BigRational) -> Value {
        if a.is_integer() && a.abs() < BigRational::from_integer(BigInt::from(1i64 << 53)) {
            json!(a.to_integer().to_string().parse::<i64>().unwrap())
        } else {
            json!(a.to_string())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField> {
        let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !prime || p >= 1 << 31 {
            return Err(Error::Precondition(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type E = u64;

    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        let (mut base, mut e, mut acc) = (*a, self.p - 2, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn to_json(&self, a: &u64) -> Value {
        json!(a)
    }
}

/// Runtime choice of coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefField {
    Rationals,
    Prime(u64),
}

impl FromStr for CoefField {
    type Err = Error;

    /// Accepts `Q`, `QQ`, `F_p`, `Fp` or `GF(p)`.
    fn from_str(s: &str) -> Result<CoefField> {
        let t = s.trim();
        if t == "Q" || t == "QQ" {
            return Ok(CoefField::Rationals);
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|x| x.strip_suffix(')'))
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix('F'));
        let p: u64 = digits
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::Parse(format!("unknown coefficient field '{s}'")))?;
        PrimeField::new(p)?;
        Ok(CoefField::Prime(p))
    }
}

impl CoefField {
    pub fn name(&self) -> String {
        match self {
            CoefField::Rationals => "Q".into(),
            CoefField::Prime(p) => format!("F_{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_i64(-1), 6);
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn parse_fields() {
        assert_eq!("Q".parse::<CoefField>().unwrap(), CoefField::Rationals);
        assert_eq!("F_5".parse::<CoefField>().unwrap(), CoefField::Prime(5));
        assert_eq!("GF(3)".parse::<CoefField>().unwrap(), CoefField::Prime(3));
        assert!("F_4".parse::<CoefField>().is_err());
        assert!("R".parse::<CoefField>().is_err());
    }

    #[test]
    fn rationals_json() {
        let q = Rationals;
        assert_eq!(q.to_json(&q.from_i64(-3)), json!(-3));
        let half = q.inv(&q.from_i64(2));
        assert_eq!(q.to_json(&half), json!("1/2"));
    }
}
