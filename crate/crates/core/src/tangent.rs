//! Zariski tangent spaces of the Quot scheme at a framed representation.
//!
//! At a stable commuting point the tangent space is the kernel of the
//! linearised commutator relations `d₂` modulo the image of the infinitesimal
//! gauge action `d₁`. The action is free at stable points, so
//! `dim T = dim ker d₂ − n²`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::rep::FramedRep;
use crate::scalar::{Field, Scalar};

/// Builds the matrix of a linear map `k^inputs → k^outputs` column by column.
pub(crate) fn matrix_of_map(
    field: Field,
    inputs: usize,
    outputs: usize,
    mut column: impl FnMut(usize) -> Result<Vector>,
) -> Result<Matrix> {
    let mut columns = Vec::with_capacity(inputs);
    for c in 0..inputs {
        columns.push(column(c)?);
    }
    Matrix::from_columns(field, outputs, &columns)
}

/// Infinitesimal gauge action `ξ ↦ ([ξ,A_1], …, [ξ,A_m], ξv_1, …, ξv_r)`.
///
/// Shape `(mn² + rn) × n²`; column `a·n + b` is the image of `E_ab`.
pub fn gauge_differential(rep: &FramedRep) -> Matrix {
    let field = rep.field();
    let n = rep.n();
    matrix_of_map(field, n * n, rep.rep_space_dim(), |c| {
        let xi = Matrix::elementary(field, n, c / n, c % n);
        let mut out = Vec::with_capacity(rep.rep_space_dim());
        for a in rep.matrices() {
            out.extend(xi.commutator(a)?.into_entries());
        }
        for v in rep.vectors() {
            out.extend(xi.mul_vec(v)?);
        }
        Ok(out)
    })
    .expect("shapes fixed by the representation")
}

/// Linearised relations at `rep` applied to a tangent direction given as
/// matrices `a_1, …, a_m`: `([a_i,A_j] + [A_i,a_j])_{i<j}`.
pub fn linearized_commutators(rep: &FramedRep, direction: &[Matrix]) -> Result<Vec<Matrix>> {
    let a = rep.matrices();
    if direction.len() != a.len() {
        return Err(Error::ShapeMismatch(alloc::format!(
            "{} direction matrices for m = {}",
            direction.len(),
            a.len()
        )));
    }
    let mut out = Vec::new();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            out.push(
                direction[i]
                    .commutator(&a[j])?
                    .add(&a[i].commutator(&direction[j])?)?,
            );
        }
    }
    Ok(out)
}

/// Jacobian `d₂` of the relations `[A_i, A_j] = 0` at `rep`.
///
/// Rows: pairs `(i, j)` with `i < j` in lexicographic order, then matrix
/// entries row-major. Columns: the coordinates of [`FramedRep::coordinates`].
/// The framing columns are zero.
pub fn relation_jacobian(rep: &FramedRep) -> Matrix {
    let field = rep.field();
    let n = rep.n();
    let m = rep.m();
    let nn = n * n;
    let pairs = m * m.saturating_sub(1) / 2;
    let rows = pairs * nn;
    let zero_block = || core::iter::repeat_n(field.zero(), nn);
    matrix_of_map(field, rep.rep_space_dim(), rows, |c| {
        if c >= m * nn {
            return Ok(alloc::vec![field.zero(); rows]);
        }
        let (k, e) = (c / nn, c % nn);
        let unit = Matrix::elementary(field, n, e / n, e % n);
        let a = rep.matrices();
        let mut out = Vec::with_capacity(rows);
        for i in 0..m {
            for j in i + 1..m {
                if i == k {
                    out.extend(unit.commutator(&a[j])?.into_entries());
                } else if j == k {
                    out.extend(a[i].commutator(&unit)?.into_entries());
                } else {
                    out.extend(zero_block());
                }
            }
        }
        Ok(out)
    })
    .expect("shapes fixed by the representation")
}

/// Expected dimension of the smooth ambient `U_{r,n,m}`: `(m−1)n² + rn`.
pub fn ambient_dim(m: usize, n: usize, r: usize) -> usize {
    m.saturating_sub(1) * n * n + r * n
}

/// `dim T_ξ Quot = (mn² + rn − rank d₂) − n²` at a stable commuting point.
pub fn tangent_dim(rep: &FramedRep) -> Result<usize> {
    rep.require_quot_point()?;
    let rank = relation_jacobian(rep).rank();
    Ok(rep.rep_space_dim() - rank - rep.n() * rep.n())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Smooth,
    Singular,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Smooth => "Smooth",
            Verdict::Singular => "Singular",
            Verdict::Unknown => "Unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentReport {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub ambient_dim: usize,
    pub rep_space_dim: usize,
    pub jacobian_rank: usize,
    pub tangent_dim: usize,
    pub reference_dim: Option<usize>,
    pub verdict: Verdict,
}

/// Tangent data at `rep`, compared against the local dimension
/// `expected_dim` of the Quot scheme when the caller knows it.
pub fn classify_point(rep: &FramedRep, expected_dim: Option<usize>) -> Result<TangentReport> {
    rep.require_quot_point()?;
    let n = rep.n();
    let jacobian_rank = relation_jacobian(rep).rank();
    let tangent_dim = rep.rep_space_dim() - jacobian_rank - n * n;
    let verdict = match expected_dim {
        None => Verdict::Unknown,
        Some(e) if e > tangent_dim => {
            return Err(Error::DimensionMismatch {
                expected: e,
                tangent: tangent_dim,
            })
        }
        Some(e) if e == tangent_dim => Verdict::Smooth,
        Some(_) => Verdict::Singular,
    };
    Ok(TangentReport {
        m: rep.m(),
        n,
        r: rep.r(),
        ambient_dim: ambient_dim(rep.m(), n, rep.r()),
        rep_space_dim: rep.rep_space_dim(),
        jacobian_rank,
        tangent_dim,
        reference_dim: expected_dim,
        verdict,
    })
}

/// Entry-wise check that `d₂ ∘ d₁ = 0`.
pub fn complex_defect(rep: &FramedRep) -> Matrix {
    relation_jacobian(rep)
        .mul(&gauge_differential(rep))
        .expect("d₂ and d₁ have compatible shapes")
}

pub(crate) fn split_direction(rep: &FramedRep, coords: &[Scalar]) -> Result<Vec<Matrix>> {
    let n = rep.n();
    let nn = n * n;
    (0..rep.m())
        .map(|i| Matrix::new(n, n, rep.field(), coords[i * nn..(i + 1) * nn].to_vec()))
        .collect()
}

/// Applies `d₂` to a coordinate vector without building the Jacobian.
pub fn apply_relation_differential(rep: &FramedRep, coords: &[Scalar]) -> Result<Vector> {
    if coords.len() != rep.rep_space_dim() {
        return Err(Error::ShapeMismatch(alloc::format!(
            "expected {} coordinates, got {}",
            rep.rep_space_dim(),
            coords.len()
        )));
    }
    let dir = split_direction(rep, coords)?;
    Ok(linearized_commutators(rep, &dir)?
        .into_iter()
        .flat_map(Matrix::into_entries)
        .collect())
}
