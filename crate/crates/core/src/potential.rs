//! The cubic potential `f = Tr A₁[A₂,A₃]` on three-loop representations.
//!
//! Its coordinate gradient is made of the transposed commutators, so the
//! critical locus `df = 0` and the commuting locus agree as sets. The
//! comparison of `ker Hess f` with `ker d₂` is the first-order version of
//! that agreement.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::rep::FramedRep;
use crate::scalar::Scalar;
use crate::tangent::{matrix_of_map, relation_jacobian, split_direction};

fn require_three_loops(rep: &FramedRep) -> Result<()> {
    if rep.m() != 3 {
        return Err(Error::WrongLoopCount {
            expected: 3,
            actual: rep.m(),
        });
    }
    Ok(())
}

/// `Tr(A₁A₂A₃ − A₁A₃A₂)`.
pub fn potential_value(rep: &FramedRep) -> Result<Scalar> {
    require_three_loops(rep)?;
    let a = rep.matrices();
    a[0].mul(&a[1].commutator(&a[2])?)?.trace()
}

/// Assembles three `n×n` blocks (transposed) and zero framing blocks into a
/// coordinate vector.
fn assemble(rep: &FramedRep, blocks: [Matrix; 3]) -> Vector {
    let mut out = Vec::with_capacity(rep.rep_space_dim());
    for b in blocks {
        out.extend(b.transpose().into_entries());
    }
    out.extend(core::iter::repeat_n(rep.field().zero(), rep.r() * rep.n()));
    out
}

/// Partial derivatives `∂f/∂(A_i)_{ab}` and `∂f/∂(v_j)_a`: the blocks are
/// `[A₂,A₃]ᵀ`, `[A₃,A₁]ᵀ`, `[A₁,A₂]ᵀ`, then zeros.
pub fn potential_gradient(rep: &FramedRep) -> Result<Vector> {
    require_three_loops(rep)?;
    let a = rep.matrices();
    Ok(assemble(
        rep,
        [
            a[1].commutator(&a[2])?,
            a[2].commutator(&a[0])?,
            a[0].commutator(&a[1])?,
        ],
    ))
}

/// Exact matrix of second partial derivatives of `f` at `rep`, in the
/// coordinates of [`FramedRep::coordinates`].
pub fn hessian(rep: &FramedRep) -> Result<Matrix> {
    require_three_loops(rep)?;
    let dim = rep.rep_space_dim();
    let matrix_coords = 3 * rep.n() * rep.n();
    let field = rep.field();
    let a = rep.matrices();
    matrix_of_map(field, dim, dim, |c| {
        if c >= matrix_coords {
            return Ok(alloc::vec![field.zero(); dim]);
        }
        let mut unit = alloc::vec![field.zero(); dim];
        unit[c] = field.one();
        let x = split_direction(rep, &unit)?;
        Ok(assemble(
            rep,
            [
                x[1].commutator(&a[2])?.add(&a[1].commutator(&x[2])?)?,
                x[2].commutator(&a[0])?.add(&a[2].commutator(&x[0])?)?,
                x[0].commutator(&a[1])?.add(&a[0].commutator(&x[1])?)?,
            ],
        ))
    })
}

/// Value, gradient and Hessian of `f` at one representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialPoint {
    pub rep: FramedRep,
    pub value: Scalar,
    pub gradient: Vector,
    pub hessian: Matrix,
}

impl PotentialPoint {
    pub fn at(rep: &FramedRep) -> Result<Self> {
        Ok(Self {
            value: potential_value(rep)?,
            gradient: potential_gradient(rep)?,
            hessian: hessian(rep)?,
            rep: rep.clone(),
        })
    }

    pub fn gradient_is_zero(&self) -> bool {
        self.gradient.iter().all(Scalar::is_zero)
    }
}

/// Kernel comparison between two linear maps on the same source, by rank.
///
/// `ker A ⊆ ker B` iff every row of `B` lies in the row space of `A`, i.e.
/// `rank [A; B] = rank A`. Both containments give equality.
pub fn kernels_equal(a: &Matrix, b: &Matrix) -> Result<bool> {
    let stacked = Matrix::vstack(a.field(), a.cols(), &[a, b])?;
    let joint = stacked.rank();
    Ok(a.rank() == joint && b.rank() == joint)
}

/// `ker Hess f = ker d₂` at a stable commuting three-loop point.
pub fn crit_equals_commuting_tangent(rep: &FramedRep) -> Result<bool> {
    require_three_loops(rep)?;
    rep.require_quot_point()?;
    kernels_equal(&hessian(rep)?, &relation_jacobian(rep))
}
