//! Exhaustive counts over small prime fields.
//!
//! These routines never sample: either every tuple is visited or the call is
//! refused with [`Error::BudgetExceeded`]. They serve as ground truth for the
//! rank-based computations in [`crate::tangent`].
//!
//! Tuples are visited in odometer order over the coordinates of
//! [`FramedRep::coordinates`]: the last coordinate turns fastest, digits run
//! over `0..q`. Index `i` of the enumeration is the base-`q` number whose
//! digits are the coordinates, most significant first, so a range of indices
//! is a resumable shard.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rep::{rep_space_dim, FramedRep};
use crate::scalar::{Field, Scalar};
use crate::tangent::linearized_commutators;

/// Default cap on the number of tuples a single count may visit.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// `|GL_n(𝔽_q)| = ∏_{i<n} (qⁿ − qⁱ)`, or `None` on overflow.
pub fn gl_order(n: usize, q: u64) -> Option<u128> {
    let q = u128::from(q);
    let qn = q.checked_pow(u32::try_from(n).ok()?)?;
    let mut acc: u128 = 1;
    let mut qi: u128 = 1;
    for _ in 0..n {
        acc = acc.checked_mul(qn - qi)?;
        qi = qi.checked_mul(q)?;
    }
    Some(acc)
}

/// `q^len`, or `None` on overflow.
pub fn tuple_count(len: usize, q: u64) -> Option<u128> {
    u128::from(q).checked_pow(u32::try_from(len).ok()?)
}

fn check_budget(len: usize, q: u64, budget: u128) -> Result<u128> {
    match tuple_count(len, q) {
        Some(total) if total <= budget => Ok(total),
        Some(total) => Err(Error::BudgetExceeded {
            required: total,
            budget,
        }),
        None => Err(Error::BudgetExceeded {
            required: u128::MAX,
            budget,
        }),
    }
}

fn exact_div(numerator: u128, denominator: u128) -> Result<u128> {
    if denominator == 0 || !numerator.is_multiple_of(denominator) {
        return Err(Error::NonIntegralOrbitCount {
            numerator,
            denominator,
        });
    }
    Ok(numerator / denominator)
}

fn prime_of(field: Field) -> Result<u32> {
    match field {
        Field::Prime(p) => Ok(p),
        Field::Rationals => Err(Error::NotPrimeField(field)),
    }
}

/// Base-`q` counter over a fixed number of digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Odometer {
    q: u32,
    digits: Vec<u32>,
}

impl Odometer {
    /// Digits of `index` in base `q`, most significant first.
    pub fn at(q: u32, len: usize, mut index: u128) -> Self {
        let mut digits = vec![0; len];
        for d in digits.iter_mut().rev() {
            *d = (index % u128::from(q)) as u32;
            index /= u128::from(q);
        }
        Self { q, digits }
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Steps to the next tuple; returns `false` after wrapping around.
    pub fn advance(&mut self) -> bool {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.q {
                return true;
            }
            *d = 0;
        }
        false
    }

    pub fn scalars(&self) -> Vec<Scalar> {
        let field = Field::Prime(self.q);
        self.digits
            .iter()
            .map(|&d| Scalar::from_u64(field, u64::from(d)))
            .collect()
    }
}

/// Parameters of a Quot-scheme point count over `𝔽_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CountParams {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub q: u32,
}

impl CountParams {
    pub fn new(m: usize, n: usize, r: usize, q: u32) -> Result<Self> {
        Field::prime(u64::from(q))?;
        if m == 0 || r == 0 {
            return Err(Error::ParameterOutOfRange(alloc::format!(
                "need m, r >= 1 (got m = {m}, r = {r})"
            )));
        }
        Ok(Self { m, n, r, q })
    }

    pub fn field(&self) -> Field {
        Field::Prime(self.q)
    }

    pub fn coordinate_count(&self) -> usize {
        rep_space_dim(self.m, self.n, self.r)
    }

    /// `q^(mn² + rn)`, or `None` on overflow.
    pub fn total_tuples(&self) -> Option<u128> {
        tuple_count(self.coordinate_count(), u64::from(self.q))
    }

    pub fn check_budget(&self, budget: u128) -> Result<u128> {
        check_budget(self.coordinate_count(), u64::from(self.q), budget)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CountResult {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub q: u32,
    pub stable_commuting_points: u128,
    pub orbit_count: u128,
    pub gauge_group_order: u128,
}

/// Number of stable commuting tuples with enumeration index in `range`.
pub fn count_stable_commuting_range(params: &CountParams, range: Range<u128>) -> Result<u128> {
    let len = params.coordinate_count();
    let total = params.total_tuples().ok_or(Error::BudgetExceeded {
        required: u128::MAX,
        budget: u128::MAX,
    })?;
    let end = range.end.min(total);
    if range.start >= end {
        return Ok(0);
    }
    let field = params.field();
    let mut odometer = Odometer::at(params.q, len, range.start);
    let mut count = 0;
    for _ in range.start..end {
        let rep =
            FramedRep::from_coordinates(field, params.m, params.n, params.r, &odometer.scalars())?;
        if rep.is_commuting() && rep.is_stable() {
            count += 1;
        }
        odometer.advance();
    }
    Ok(count)
}

/// Divides a total of stable commuting tuples by `|GL_n(𝔽_q)|`. The action
/// is free, so a remainder means something upstream is wrong.
pub fn finish_count(params: &CountParams, stable_commuting_points: u128) -> Result<CountResult> {
    let gauge_group_order =
        gl_order(params.n, u64::from(params.q)).ok_or(Error::BudgetExceeded {
            required: u128::MAX,
            budget: u128::MAX,
        })?;
    let orbit_count = exact_div(stable_commuting_points, gauge_group_order)?;
    Ok(CountResult {
        m: params.m,
        n: params.n,
        r: params.r,
        q: params.q,
        stable_commuting_points,
        orbit_count,
        gauge_group_order,
    })
}

/// Number of `𝔽_q`-points of `Quot_{𝔸^m}(𝒪^r, n)`, by visiting every tuple.
pub fn count_quot_points(params: &CountParams, budget: u128) -> Result<CountResult> {
    let total = params.check_budget(budget)?;
    let points = count_stable_commuting_range(params, 0..total)?;
    finish_count(params, points)
}

/// `qᵐ (qʳ − 1)/(q − 1)`: the number of `𝔽_q`-points for `n = 1`.
pub fn n_one_orbit_formula(m: usize, r: usize, q: u64) -> u128 {
    let q = u128::from(q);
    q.pow(m as u32) * (q.pow(r as u32) - 1) / (q - 1)
}

/// Result of counting first-order deformations of a point over `𝔽_q[ε]/(ε²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LiftCount {
    /// Tuples `(A + εa, v + εw)` satisfying all relations.
    pub lifts: u128,
    /// `q^{n²}`: gauge elements `1 + εξ`.
    pub gauge_lifts: u128,
    /// Number of `ξ` fixing a lift; `1` when the action is free.
    pub stabilizer: u128,
    /// `lifts / gauge_lifts`.
    pub classes: u128,
}

/// Counts every first-order lift of a stable commuting point over `𝔽_q`,
/// then divides by the gauge lifts. The quotient is `q^{dim T}`.
///
/// The relation check evaluates `[a_i,A_j] + [A_i,a_j]` directly for each
/// candidate direction; no Jacobian or rank is involved.
pub fn count_first_order_lifts(rep: &FramedRep, budget: u128) -> Result<LiftCount> {
    let q = prime_of(rep.field())?;
    rep.require_quot_point()?;
    let field = rep.field();
    let (m, n) = (rep.m(), rep.n());
    let len = rep.rep_space_dim();
    let total = check_budget(len, u64::from(q), budget)?;
    let nn = n * n;

    let mut lifts = 0u128;
    let mut odometer = Odometer::at(q, len, 0);
    for _ in 0..total {
        let coords = odometer.scalars();
        let direction = (0..m)
            .map(|i| Matrix::new(n, n, field, coords[i * nn..(i + 1) * nn].to_vec()))
            .collect::<Result<Vec<_>>>()?;
        if linearized_commutators(rep, &direction)?
            .iter()
            .all(Matrix::is_zero)
        {
            lifts += 1;
        }
        odometer.advance();
    }

    let gauge_lifts = check_budget(nn, u64::from(q), budget)?;
    let mut stabilizer = 0u128;
    let mut odometer = Odometer::at(q, nn, 0);
    for _ in 0..gauge_lifts {
        let xi = Matrix::new(n, n, field, odometer.scalars())?;
        let fixes_matrices = rep
            .matrices()
            .iter()
            .all(|a| xi.commutator(a).is_ok_and(|c| c.is_zero()));
        let fixes_vectors = rep
            .vectors()
            .iter()
            .all(|v| xi.mul_vec(v).is_ok_and(|w| w.iter().all(Scalar::is_zero)));
        if fixes_matrices && fixes_vectors {
            stabilizer += 1;
        }
        odometer.advance();
    }

    let classes = exact_div(lifts, gauge_lifts)?;
    Ok(LiftCount {
        lifts,
        gauge_lifts,
        stabilizer,
        classes,
    })
}
