//! ADHM data `(B₁, B₂, i, j)` for framed sheaves on ℙ², and the embedding of
//! the two-loop Quot scheme as the locus `j = 0`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{invariant_closure, Matrix};
use crate::rep::{FramedRep, GaugeElement};
use crate::scalar::Field;
use crate::tangent::matrix_of_map;

/// `B₁, B₂ ∈ End(kⁿ)`, `i ∈ Hom(kʳ, kⁿ)`, `j ∈ Hom(kⁿ, kʳ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdhmDatum {
    field: Field,
    n: usize,
    r: usize,
    b1: Matrix,
    b2: Matrix,
    i: Matrix,
    j: Matrix,
}

impl AdhmDatum {
    pub fn new(b1: Matrix, b2: Matrix, i: Matrix, j: Matrix) -> Result<Self> {
        let field = b1.field();
        for m in [&b2, &i, &j] {
            field.check(m.field())?;
        }
        let n = b1.rows();
        let r = i.cols();
        let shapes = [
            (&b1, n, n, "B1"),
            (&b2, n, n, "B2"),
            (&i, n, r, "i"),
            (&j, r, n, "j"),
        ];
        for (m, rows, cols, name) in shapes {
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "{name} is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if r == 0 {
            return Err(Error::ShapeMismatch("ADHM datum needs r >= 1".into()));
        }
        Ok(Self {
            field,
            n,
            r,
            b1,
            b2,
            i,
            j,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn b1(&self) -> &Matrix {
        &self.b1
    }

    pub fn b2(&self) -> &Matrix {
        &self.b2
    }

    pub fn i(&self) -> &Matrix {
        &self.i
    }

    pub fn j(&self) -> &Matrix {
        &self.j
    }

    /// `2n² + 2nr`.
    pub fn parameter_dim(&self) -> usize {
        2 * self.n * self.n + 2 * self.n * self.r
    }

    /// Inverse of the `j = 0` embedding: `(B₁, B₂, columns of i)`, dropping `j`.
    pub fn forget_j(&self) -> FramedRep {
        let vectors = (0..self.r).map(|c| self.i.column(c)).collect();
        FramedRep::new(
            self.field,
            self.n,
            alloc::vec![self.b1.clone(), self.b2.clone()],
            vectors,
        )
        .expect("shapes validated at construction")
    }
}

/// `[B₁, B₂] + i·j`.
pub fn moment(d: &AdhmDatum) -> Matrix {
    d.b1.commutator(&d.b2)
        .and_then(|c| c.add(&d.i.mul(&d.j)?))
        .expect("shapes validated at construction")
}

/// No proper subspace contains `im i` and is preserved by `B₁` and `B₂`.
pub fn is_stable_adhm(d: &AdhmDatum) -> bool {
    let generators: Vec<_> = (0..d.r).map(|c| d.i.column(c)).collect();
    invariant_closure(d.field, d.n, &generators, &[&d.b1, &d.b2])
        .expect("shapes validated at construction")
        .is_full()
}

/// Differential of the moment map at `d`:
/// `(δB₁, δB₂, δi, δj) ↦ [δB₁,B₂] + [B₁,δB₂] + δi·j + i·δj`.
///
/// Columns follow the parameter order `B₁, B₂, i, j`, each row-major.
pub fn moment_linearization(d: &AdhmDatum) -> Matrix {
    let (field, n, r) = (d.field, d.n, d.r);
    let nn = n * n;
    matrix_of_map(field, d.parameter_dim(), nn, |c| {
        let out = if c < nn {
            Matrix::elementary(field, n, c / n, c % n).commutator(&d.b2)?
        } else if c < 2 * nn {
            let e = c - nn;
            d.b1.commutator(&Matrix::elementary(field, n, e / n, e % n))?
        } else if c < 2 * nn + n * r {
            let e = c - 2 * nn;
            let mut di = Matrix::zeros(field, n, r);
            di.set(e / r, e % r, field.one())?;
            di.mul(&d.j)?
        } else {
            let e = c - 2 * nn - n * r;
            let mut dj = Matrix::zeros(field, r, n);
            dj.set(e / n, e % n, field.one())?;
            d.i.mul(&dj)?
        };
        Ok(out.into_entries())
    })
    .expect("shapes validated at construction")
}

/// Infinitesimal gauge action `ξ ↦ ([ξ,B₁], [ξ,B₂], ξ·i, −j·ξ)`.
pub fn adhm_gauge_differential(d: &AdhmDatum) -> Matrix {
    let (field, n) = (d.field, d.n);
    matrix_of_map(field, n * n, d.parameter_dim(), |c| {
        let xi = Matrix::elementary(field, n, c / n, c % n);
        let mut out = Vec::with_capacity(d.parameter_dim());
        out.extend(xi.commutator(&d.b1)?.into_entries());
        out.extend(xi.commutator(&d.b2)?.into_entries());
        out.extend(xi.mul(&d.i)?.into_entries());
        let jx = d.j.mul(&xi)?;
        out.extend(jx.entries().iter().map(|x| -x));
        Ok(out)
    })
    .expect("shapes validated at construction")
}

fn require_stable_solution(d: &AdhmDatum) -> Result<()> {
    if !moment(d).is_zero() {
        return Err(Error::NotOnVariety);
    }
    if !is_stable_adhm(d) {
        return Err(Error::NotStable);
    }
    Ok(())
}

/// Rank of the moment-map differential at a stable solution; `n²` means the
/// framed moduli space is smooth of dimension `2nr` there.
pub fn moment_jacobian_rank(d: &AdhmDatum) -> Result<usize> {
    require_stable_solution(d)?;
    Ok(moment_linearization(d).rank())
}

/// `dim ker dμ − n²` at a stable solution.
pub fn framed_tangent_dim(d: &AdhmDatum) -> Result<usize> {
    let rank = moment_jacobian_rank(d)?;
    Ok(d.parameter_dim() - rank - d.n * d.n)
}

/// The closed immersion of the two-loop Quot scheme: `B = A`, `i = (v₁ … v_r)`, `j = 0`.
pub fn eta_embed(rep: &FramedRep) -> Result<AdhmDatum> {
    if rep.m() != 2 {
        return Err(Error::WrongLoopCount {
            expected: 2,
            actual: rep.m(),
        });
    }
    if !rep.is_commuting() {
        return Err(Error::NotCommuting);
    }
    if !rep.is_stable() {
        return Err(Error::NotStable);
    }
    let a = rep.matrices();
    AdhmDatum::new(
        a[0].clone(),
        a[1].clone(),
        rep.framing_matrix(),
        Matrix::zeros(rep.field(), rep.r(), rep.n()),
    )
}

/// `(gB₁g⁻¹, gB₂g⁻¹, g·i, j·g⁻¹)`.
pub fn gauge_act_adhm(g: &GaugeElement, d: &AdhmDatum) -> Result<AdhmDatum> {
    if g.n() != d.n {
        return Err(Error::ShapeMismatch(format!(
            "gauge element of size {} on an ADHM datum with n = {}",
            g.n(),
            d.n
        )));
    }
    AdhmDatum::new(
        g.conjugate(&d.b1)?,
        g.conjugate(&d.b2)?,
        g.matrix().mul(&d.i)?,
        d.j.mul(g.inverse())?,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FramedDims {
    pub framed_dim: usize,
    pub quot_dim: usize,
    pub codim: usize,
}

/// `(2nr, (r+1)n, n(r−1))`: dimensions of the framed moduli space, of the
/// Quot scheme inside it, and the codimension.
pub fn framed_vs_quot_dims(n: usize, r: usize) -> Result<FramedDims> {
    if r == 0 {
        return Err(Error::ParameterOutOfRange(
            "framing rank must be positive".into(),
        ));
    }
    let framed_dim = 2 * n * r;
    let quot_dim = (r + 1) * n;
    let codim = framed_dim - quot_dim;
    assert_eq!(
        codim,
        n * (r - 1),
        "codimension identity 2nr - (r+1)n = n(r-1)"
    );
    Ok(FramedDims {
        framed_dim,
        quot_dim,
        codim,
    })
}
