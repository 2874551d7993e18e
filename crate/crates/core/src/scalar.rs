//! Exact coefficient fields: prime fields GF(p) and the rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default characteristic.
pub const DEFAULT_PRIME: u32 = 32003;

/// The coefficient field of the ambient polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    /// GF(p) for a prime p < 2^31.
    Prime(u32),
    /// The rational numbers.
    Rational,
}

impl Default for Field {
    fn default() -> Self {
        Field::Prime(DEFAULT_PRIME)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p as u64 {
        if (p as u64).is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

impl Field {
    /// Builds a field from a characteristic: 0 selects the rationals.
    pub fn from_characteristic(p: u32) -> Result<Field> {
        match p {
            0 => Ok(Field::Rational),
            p if p < (1 << 31) && is_prime(p) => Ok(Field::Prime(p)),
            p => Err(Error::Precondition(format!("characteristic {p} is not a prime below 2^31"))),
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod {
                value: v.rem_euclid(*p as i64) as u32,
                modulus: *p,
            },
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// Image of the integer `v` (arbitrary size) in the field.
    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Prime(p) => {
                let r = v % BigInt::from(*p);
                let r = if r.is_negative() { r + BigInt::from(*p) } else { r };
                Scalar::Mod {
                    value: r.to_u32().expect("reduced residue fits u32"),
                    modulus: *p,
                }
            }
            Field::Rational => Scalar::Rat(BigRational::from_integer(v.clone())),
        }
    }

    /// Image of `num / den`; fails when `den` vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::Precondition(format!(
                "denominator {den} vanishes in characteristic {}",
                self.characteristic()
            )));
        }
        Ok(&self.from_bigint(num) / &d)
    }

    /// True if `s` belongs to this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        matches!(
            (self, s),
            (Field::Prime(p), Scalar::Mod { modulus, .. }) if p == modulus
        ) || matches!((self, s), (Field::Rational, Scalar::Rat(_)))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Rational => write!(f, "QQ"),
        }
    }
}

/// An exact field element.
///
/// Prime-field elements keep the canonical representative in `[0, p)`;
/// rationals are kept in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod { value: u32, modulus: u32 },
    Rat(BigRational),
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
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

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
            Scalar::Rat(_) => Field::Rational,
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: mod_pow(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
        }
    }

    /// True when the printed form should carry a leading minus sign.
    pub fn is_negative_display(&self) -> bool {
        match self {
            Scalar::Mod { value, modulus } => *value > modulus / 2,
            Scalar::Rat(r) => r.is_negative(),
        }
    }
}

fn mismatch() -> ! {
    panic!("arithmetic between scalars of different fields")
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => mismatch(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => mismatch(),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            Scalar::Rat(r) => Scalar::Rat(-r),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    /// Prime-field elements print with the symmetric representative.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod { value, modulus } => {
                if *value > modulus / 2 {
                    write!(f, "-{}", modulus - value)
                } else {
                    write!(f, "{value}")
                }
            }
            Scalar::Rat(r) => write!(f, "{r}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = Field::Prime(32003);
        for v in [1i64, 2, 17, 32002] {
            let s = f.from_i64(v);
            assert!((&s * &s.inv()).is_one());
        }
    }

    #[test]
    fn rationals_stay_reduced() {
        let f = Field::Rational;
        let a = f.from_fraction(&BigInt::from(4), &BigInt::from(-6)).unwrap();
        assert_eq!(a, Scalar::Rat(BigRational::new(BigInt::from(-2), BigInt::from(3))));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn characteristic_must_be_prime() {
        assert!(Field::from_characteristic(32003).is_ok());
        assert!(Field::from_characteristic(0).is_ok());
        assert!(Field::from_characteristic(32004).is_err());
        assert!(Field::from_characteristic(1).is_err());
    }

    #[test]
    fn fraction_with_vanishing_denominator() {
        let f = Field::Prime(7);
        assert!(f.from_fraction(&BigInt::from(1), &BigInt::from(14)).is_err());
        let half = f.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(half, f.from_i64(4));
    }

    #[test]
    fn symmetric_display() {
        let f = Field::Prime(7);
        assert_eq!(f.from_i64(-2).to_string(), "-2");
        assert_eq!(f.from_i64(3).to_string(), "3");
    }
}
