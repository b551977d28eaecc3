//! Exact coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    /// `F_p` for a prime `p < 2^31`.
    Prime(u32),
}

impl Field {
    /// Builds `F_p`, rejecting composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if !(2..(1u64 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn zero(&self) -> Coeff {
        match *self {
            Field::Rationals => Coeff::Q(BigRational::zero()),
            Field::Prime(p) => Coeff::P(0, p),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match *self {
            Field::Rationals => Coeff::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Coeff::P(v.rem_euclid(p as i64) as u32, p),
        }
    }

    /// The image of `num/den` in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match *self {
            Field::Rationals => Ok(Coeff::Q(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(p) => {
                let pm = BigInt::from(p);
                let n = num.mod_floor(&pm).to_u32().unwrap();
                let d = den.mod_floor(&pm).to_u32().unwrap();
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Coeff::P(n, p).mul(&Coeff::P(d, p).inv()?))
            }
        }
    }

    pub fn characteristic(&self) -> u32 {
        match *self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "ZZ/{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A field element. Prime-field elements carry their modulus so arithmetic
/// needs no outside context; mixing fields is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    P(u32, u32),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_zero(),
            Coeff::P(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_one(),
            Coeff::P(v, _) => *v == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Coeff::Q(_) => Field::Rationals,
            Coeff::P(_, p) => Field::Prime(*p),
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a + b),
            (Coeff::P(a, p), Coeff::P(b, _)) => {
                Coeff::P(((*a as u64 + *b as u64) % *p as u64) as u32, *p)
            }
            _ => panic!("coefficient field mismatch"),
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a * b),
            (Coeff::P(a, p), Coeff::P(b, _)) => {
                Coeff::P(((*a as u64 * *b as u64) % *p as u64) as u32, *p)
            }
            _ => panic!("coefficient field mismatch"),
        }
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Q(a) => Coeff::Q(-a),
            Coeff::P(a, p) => Coeff::P(if *a == 0 { 0 } else { p - a }, *p),
        }
    }

    pub fn inv(&self) -> Result<Coeff> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Coeff::Q(a) => Coeff::Q(a.recip()),
            Coeff::P(a, p) => Coeff::P(pow_mod(*a as u64, *p as u64 - 2, *p as u64) as u32, *p),
        })
    }

    pub fn div(&self, other: &Coeff) -> Result<Coeff> {
        Ok(self.mul(&other.inv()?))
    }

    /// Sign used when printing; prime-field elements print as nonnegative residues.
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Q(a) => a.is_negative(),
            Coeff::P(..) => false,
        }
    }

    /// Integer value when the element is an integer (always true in `F_p`).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Coeff::Q(a) if a.is_integer() => a.to_integer().to_i64(),
            Coeff::Q(_) => None,
            Coeff::P(v, _) => Some(*v as i64),
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(a) => {
                if a.is_integer() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
            Coeff::P(v, _) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = Field::prime(7).unwrap();
        for v in 1..7 {
            let c = f.from_i64(v);
            assert!(c.mul(&c.inv().unwrap()).is_one());
        }
        assert!(matches!(f.zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    fn ratio_in_prime_field() {
        let f = Field::prime(5).unwrap();
        let c = f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(c, f.from_i64(3));
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(5)).is_err());
    }
}
