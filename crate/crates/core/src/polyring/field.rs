use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Default characteristic for generic-coordinate computations.
pub const DEFAULT_PRIME: u64 = 32003;

/// Primes below this bound trigger a small-field warning.
pub const SMALL_PRIME_WARNING: u64 = 1000;

/// Coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    /// The prime field F_p. `p` is prime and below 2^31 so products fit in a `u64`.
    Prime(u64),
    Rational,
}

/// An exact field element. Prime-field values are kept in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(u64),
    Rat(BigRational),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, Error> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "{p} is not a prime below 2^31"
            )));
        }
        Ok(Field::Prime(p))
    }

    /// `0` selects the rationals, anything else must be a prime.
    pub fn from_characteristic(c: u64) -> Result<Self, Error> {
        if c == 0 {
            Ok(Field::Rational)
        } else {
            Field::prime(c)
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Mod(0),
            Field::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Mod(1),
            Field::Rational => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod(v.rem_euclid(*p as i64) as u64),
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Scalar::Mod(r.to_u64().expect("residue fits"))
            }
            Field::Rational => Scalar::Rat(BigRational::from_integer(v.clone())),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % p),
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => unreachable!("scalar from a different field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + p - y) % p),
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            _ => unreachable!("scalar from a different field"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(x * y % p),
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => unreachable!("scalar from a different field"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Mod(x)) => Scalar::Mod((p - x) % p),
            (Field::Rational, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => unreachable!("scalar from a different field"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        Some(match (self, a) {
            (Field::Prime(p), Scalar::Mod(x)) => Scalar::Mod(pow_mod(*x, p - 2, *p)),
            (Field::Rational, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            _ => unreachable!("scalar from a different field"),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// Uniform nonzero element for random linear combinations.
    ///
    /// Over F_p this is uniform on `1..p`; over the rationals the integers
    /// `-50..=50` without zero.
    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod(rng.gen_range(1..*p)),
            Field::Rational => {
                let mut v = 0i64;
                while v == 0 {
                    v = rng.gen_range(-50..=50);
                }
                self.from_i64(v)
            }
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod(x) => *x == 0,
            Scalar::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod(x) => *x == 1,
            Scalar::Rat(x) => x.is_one(),
        }
    }

    /// Printable form in the polynomial grammar: prime-field values use the
    /// symmetric residue, rationals print as `n` or `n/d`.
    pub(crate) fn signed_parts(&self, field: Field) -> (bool, String) {
        match (self, field) {
            (Scalar::Mod(x), Field::Prime(p)) => {
                if *x > p / 2 {
                    (true, (p - x).to_string())
                } else {
                    (false, x.to_string())
                }
            }
            (Scalar::Rat(x), Field::Rational) => {
                let neg = x.is_negative();
                let a = x.abs();
                if a.is_integer() {
                    (neg, a.numer().to_string())
                } else {
                    (neg, format!("{}/{}", a.numer(), a.denom()))
                }
            }
            _ => unreachable!("scalar from a different field"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(x) => write!(f, "{x}"),
            Scalar::Rat(x) => write!(f, "{x}"),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(5);
        let b = f.from_i64(4);
        assert_eq!(f.add(&a, &b), Scalar::Mod(2));
        assert_eq!(f.sub(&b, &a), Scalar::Mod(6));
        assert_eq!(f.mul(&a, &b), Scalar::Mod(6));
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn rejects_composites() {
        assert!(Field::prime(32001).is_err());
        assert!(Field::prime(1).is_err());
        assert_eq!(Field::from_characteristic(32003).unwrap(), Field::Prime(32003));
        assert_eq!(Field::from_characteristic(0).unwrap(), Field::Rational);
    }

    #[test]
    fn symmetric_printing() {
        let f = Field::Prime(32003);
        assert_eq!(f.from_i64(-1).signed_parts(f), (true, "1".to_string()));
        let q = Field::Rational;
        let half = q.div(&q.one(), &q.from_i64(-2)).unwrap();
        assert_eq!(half.signed_parts(q), (true, "1/2".to_string()));
    }
}
