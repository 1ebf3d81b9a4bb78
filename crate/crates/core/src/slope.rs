//! Framed Hilbert polynomials and `(H, δ)`-slopes of framed modules.
//!
//! This is exact rational arithmetic on user-supplied intersection numbers;
//! nothing here looks at an actual sheaf.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial in one variable with rational coefficients, lowest degree first.
/// Trailing zero coefficients are trimmed, so the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, k: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * k + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Self::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (d, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match d {
                0 => {}
                1 => f.write_str("k")?,
                _ => write!(f, "k^{d}")?,
            }
        }
        Ok(())
    }
}

/// Whether the framing of a module is nonzero (`ε(α) = 1`) or zero (`ε(α) = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Epsilon {
    Zero,
    One,
}

impl Epsilon {
    pub fn from_flag(v: u8) -> Result<Self> {
        match v {
            0 => Ok(Epsilon::Zero),
            1 => Ok(Epsilon::One),
            _ => Err(Error::ParameterOutOfRange(format!(
                "epsilon must be 0 or 1, got {v}"
            ))),
        }
    }

    fn factor(self) -> BigRational {
        match self {
            Epsilon::Zero => BigRational::zero(),
            Epsilon::One => BigRational::one(),
        }
    }
}

/// Coefficients `δ₁, …, δ_m` of the stability polynomial
/// `δ(k) = δ₁ k^{m−1}/(m−1)! + δ₂ k^{m−2}/(m−2)! + ⋯ + δ_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaParams {
    coeffs: Vec<BigRational>,
}

impl DeltaParams {
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        match coeffs.first() {
            None => Err(Error::ParameterOutOfRange(
                "delta needs at least one coefficient".into(),
            )),
            Some(d1) if !d1.is_positive() => Err(Error::ParameterOutOfRange(format!(
                "delta_1 must be positive, got {d1}"
            ))),
            Some(_) => Ok(Self { coeffs }),
        }
    }

    /// Dimension `m` of the ambient projective space.
    pub fn m(&self) -> usize {
        self.coeffs.len()
    }

    pub fn delta1(&self) -> &BigRational {
        &self.coeffs[0]
    }

    pub fn to_poly(&self) -> RationalPoly {
        let m = self.coeffs.len();
        let mut out = alloc::vec![BigRational::zero(); m];
        for (idx, c) in self.coeffs.iter().enumerate() {
            let degree = m - 1 - idx;
            out[degree] = c / BigRational::from_integer(factorial(degree));
        }
        RationalPoly::new(out)
    }
}

fn factorial(d: usize) -> BigInt {
    (1..=d).fold(BigInt::one(), |acc, x| acc * BigInt::from(x))
}

/// `P_E − ε(α)·δ`.
pub fn framed_hilbert_poly(
    p: &RationalPoly,
    epsilon: Epsilon,
    delta: &RationalPoly,
) -> RationalPoly {
    p.sub(&delta.scale(&epsilon.factor()))
}

/// `(c₁(E)·H^{m−1} − ε(α)·δ₁) / rk E`.
pub fn slope(
    c1h: &BigRational,
    epsilon: Epsilon,
    delta1: &BigRational,
    rank: &BigRational,
) -> Result<BigRational> {
    if !rank.is_positive() {
        return Err(Error::ZeroRank);
    }
    Ok((c1h - epsilon.factor() * delta1) / rank)
}

/// Which way a rank `r′` submodule `E′ ⊂ E` meets the framing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubmoduleCase {
    /// `E′ ⊄ ker α`, so the induced framing is nonzero.
    FramingSurvives,
    /// `E′ ⊂ ker α`, so the induced framing vanishes.
    FramingDies,
}

/// Whether the framed slope of a submodule with ordinary slope `mu_h_sub`
/// lies strictly below `−δ₁/r`, the framed slope of `E` itself.
///
/// With a surviving framing the submodule slope is `μ_H(E′) − δ₁/r′`; with a
/// vanishing one it is `μ_H(E′)`. Requires `0 < r′ < r` and `0 < δ₁ < r`.
pub fn submodule_slope_check(
    r: u64,
    r_sub: u64,
    delta1: &BigRational,
    mu_h_sub: &BigRational,
    case: SubmoduleCase,
) -> Result<bool> {
    let r_q = BigRational::from_integer(r.into());
    if !delta1.is_positive() || *delta1 >= r_q {
        return Err(Error::ParameterOutOfRange(format!(
            "need 0 < delta_1 < r, got delta_1 = {delta1}, r = {r}"
        )));
    }
    if r_sub == 0 || r_sub >= r {
        return Err(Error::ParameterOutOfRange(format!(
            "need 0 < r' < r, got r' = {r_sub}, r = {r}"
        )));
    }
    let r_sub_q = BigRational::from_integer(r_sub.into());
    let sub_slope = match case {
        SubmoduleCase::FramingSurvives => {
            slope(&(mu_h_sub * &r_sub_q), Epsilon::One, delta1, &r_sub_q)?
        }
        SubmoduleCase::FramingDies => {
            slope(&(mu_h_sub * &r_sub_q), Epsilon::Zero, delta1, &r_sub_q)?
        }
    };
    let bound = -(delta1 / r_q);
    Ok(sub_slope < bound)
}
