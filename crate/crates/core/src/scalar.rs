//! Exact scalars over ℚ or a prime field 𝔽_p.
//!
//! Every [`Scalar`] carries its field, so arithmetic between elements of
//! different fields can be detected. The operator impls panic on a mismatch;
//! use the `checked_*` methods where the inputs are not already known to agree.
//! Matrix routines check field tags once up front and then use the operators.

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    /// The prime field 𝔽_p. `p` must be prime and below 2^31 so that products
    /// of two residues fit in a `u64`.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    /// Number of elements, `None` for ℚ.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(u64::from(p)),
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar::from_i64(self, 0)
    }

    pub fn one(self) -> Scalar {
        Scalar::from_i64(self, 1)
    }

    pub(crate) fn check(self, other: Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self,
                right: other,
            })
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q` or `Fp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        let p = s
            .strip_prefix("Fp:")
            .and_then(|rest| rest.parse::<u64>().ok())
            .ok_or_else(|| Error::ParseScalar(s.to_string()))?;
        Field::prime(p)
    }
}

/// Trial division; the moduli used here are small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
///
/// Rationals are kept in lowest terms with a positive denominator (the
/// `BigRational` normal form); residues lie in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn from_i64(field: Field, v: i64) -> Self {
        match field {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Mod {
                value: v.rem_euclid(i64::from(p)) as u32,
                modulus: p,
            },
        }
    }

    /// Residue `v mod p` (or the integer `v` over ℚ).
    pub fn from_u64(field: Field, v: u64) -> Self {
        match field {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Mod {
                value: (v % u64::from(p)) as u32,
                modulus: p,
            },
        }
    }

    /// Image of a rational number in `field`. Fails over 𝔽_p when the
    /// denominator vanishes mod p.
    pub fn from_rational(field: Field, q: &BigRational) -> Result<Self> {
        match field {
            Field::Rationals => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let reduce = |x: &BigInt| -> u32 {
                    let m = BigInt::from(p);
                    let r = ((x % &m) + &m) % &m;
                    r.to_u32().expect("residue below modulus")
                };
                let num = Scalar::Mod {
                    value: reduce(q.numer()),
                    modulus: p,
                };
                let den = Scalar::Mod {
                    value: reduce(q.denom()),
                    modulus: p,
                };
                Ok(&num * &den.inverse()?)
            }
        }
    }

    /// Parses `"a"` or `"a/b"` (ℚ) or a residue in `[0, p)` (𝔽_p).
    pub fn parse(field: Field, s: &str) -> Result<Self> {
        let bad = || Error::ParseScalar(s.to_string());
        match field {
            Field::Rationals => {
                let q = match s.split_once('/') {
                    Some((n, d)) => {
                        let n: BigInt = n.parse().map_err(|_| bad())?;
                        let d: BigInt = d.parse().map_err(|_| bad())?;
                        if d.is_zero() {
                            return Err(bad());
                        }
                        BigRational::new(n, d)
                    }
                    None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
                };
                Ok(Scalar::Rational(q))
            }
            Field::Prime(p) => {
                let v: u64 = s.parse().map_err(|_| bad())?;
                if v >= u64::from(p) {
                    return Err(bad());
                }
                Ok(Scalar::Mod {
                    value: v as u32,
                    modulus: p,
                })
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    /// The rational value, if this is an element of ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Mod { .. } => None,
        }
    }

    /// The residue, if this is an element of 𝔽_p.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Mod { value, .. } => Some(*value),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.field().check(rhs.field())?;
        Ok(self + rhs)
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.field().check(rhs.field())?;
        Ok(self - rhs)
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.field().check(rhs.field())?;
        Ok(self * rhs)
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.field().check(rhs.field())?;
        Ok(self * &rhs.inverse()?)
    }

    /// Exact string encoding: `"n"`/`"n/d"` over ℚ, the residue over 𝔽_p.
    pub fn encode(&self) -> String {
        self.to_string()
    }

    /// `true` when the value is a negative rational. Residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }
}

fn pow_mod(base: u32, mut exp: u32, modulus: u32) -> u32 {
    let m = u64::from(modulus);
    let mut b = u64::from(base) % m;
    let mut acc = 1u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u32
}

#[track_caller]
fn same_modulus(a: u32, b: u32) -> u32 {
    assert_eq!(a, b, "scalar arithmetic across different prime fields");
    a
}

#[track_caller]
fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!(
        "scalar arithmetic across fields {} and {}",
        a.field(),
        b.field()
    )
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Mod {
                    value: a,
                    modulus: p,
                },
                Scalar::Mod {
                    value: b,
                    modulus: q,
                },
            ) => {
                let p = same_modulus(*p, *q);
                Scalar::Mod {
                    value: ((u64::from(*a) + u64::from(*b)) % u64::from(p)) as u32,
                    modulus: p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (
                Scalar::Mod {
                    value: a,
                    modulus: p,
                },
                Scalar::Mod {
                    value: b,
                    modulus: q,
                },
            ) => {
                let p = same_modulus(*p, *q);
                Scalar::Mod {
                    value: ((u64::from(*a) + u64::from(p) - u64::from(*b)) % u64::from(p)) as u32,
                    modulus: p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Mod {
                    value: a,
                    modulus: p,
                },
                Scalar::Mod {
                    value: b,
                    modulus: q,
                },
            ) => {
                let p = same_modulus(*p, *q);
                Scalar::Mod {
                    value: (u64::from(*a) * u64::from(*b) % u64::from(p)) as u32,
                    modulus: p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}
