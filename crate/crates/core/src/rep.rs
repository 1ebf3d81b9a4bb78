//! Framed representations of the m-loop quiver: `m` endomorphisms of `k^n`
//! together with `r` framing vectors.
//!
//! A representation is a point of the non-commutative Quot scheme when the
//! framing vectors generate `k^n` under the matrices, and of the Quot scheme
//! of `𝔸^m` when additionally the matrices pairwise commute.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{check_vector, invariant_closure, Matrix, Vector};
use crate::scalar::{Field, Scalar};

/// The tuple `(A_1, …, A_m, v_1, …, v_r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FramedRep {
    field: Field,
    n: usize,
    matrices: Vec<Matrix>,
    vectors: Vec<Vector>,
}

impl FramedRep {
    pub fn new(
        field: Field,
        n: usize,
        matrices: Vec<Matrix>,
        vectors: Vec<Vector>,
    ) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::ShapeMismatch(
                "a framed representation needs m >= 1".into(),
            ));
        }
        if vectors.is_empty() {
            return Err(Error::ShapeMismatch(
                "a framed representation needs r >= 1".into(),
            ));
        }
        for a in &matrices {
            field.check(a.field())?;
            if a.rows() != n || a.cols() != n {
                return Err(Error::ShapeMismatch(format!(
                    "loop matrix is {}x{}, expected {n}x{n}",
                    a.rows(),
                    a.cols()
                )));
            }
        }
        for v in &vectors {
            check_vector(field, v)?;
            if v.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "framing vector of length {}, expected {n}",
                    v.len()
                )));
            }
        }
        Ok(Self {
            field,
            n,
            matrices,
            vectors,
        })
    }

    /// Rebuilds a representation from its coordinate vector (see
    /// [`FramedRep::coordinates`]).
    pub fn from_coordinates(
        field: Field,
        m: usize,
        n: usize,
        r: usize,
        coords: &[Scalar],
    ) -> Result<Self> {
        let len = rep_space_dim(m, n, r);
        if coords.len() != len {
            return Err(Error::ShapeMismatch(format!(
                "expected {len} coordinates, got {}",
                coords.len()
            )));
        }
        let nn = n * n;
        let matrices = (0..m)
            .map(|i| Matrix::new(n, n, field, coords[i * nn..(i + 1) * nn].to_vec()))
            .collect::<Result<Vec<_>>>()?;
        let base = m * nn;
        let vectors = (0..r)
            .map(|j| coords[base + j * n..base + (j + 1) * n].to_vec())
            .collect();
        Self::new(field, n, matrices, vectors)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of loops.
    pub fn m(&self) -> usize {
        self.matrices.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Framing rank.
    pub fn r(&self) -> usize {
        self.vectors.len()
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    /// `m·n² + r·n`.
    pub fn rep_space_dim(&self) -> usize {
        rep_space_dim(self.m(), self.n, self.r())
    }

    /// Flattened coordinates: the entries of `A_1, …, A_m` row-major, then
    /// `v_1, …, v_r`. Jacobians, gradients and Hessians index columns this way.
    pub fn coordinates(&self) -> Vector {
        let mut out = Vec::with_capacity(self.rep_space_dim());
        for a in &self.matrices {
            out.extend(a.entries().iter().cloned());
        }
        for v in &self.vectors {
            out.extend(v.iter().cloned());
        }
        out
    }

    /// The `n × r` matrix with columns `v_1, …, v_r`.
    pub fn framing_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.n, &self.vectors).expect("validated at construction")
    }

    /// `[A_i, A_j]` for `i < j`, in lexicographic order of `(i, j)`.
    pub fn commutators(&self) -> Vec<Matrix> {
        let m = self.m();
        let mut out = Vec::with_capacity(m * m.saturating_sub(1) / 2);
        for i in 0..m {
            for j in i + 1..m {
                out.push(
                    self.matrices[i]
                        .commutator(&self.matrices[j])
                        .expect("validated at construction"),
                );
            }
        }
        out
    }

    pub fn is_commuting(&self) -> bool {
        let m = self.m();
        (0..m).all(|i| {
            (i + 1..m).all(|j| {
                let a = &self.matrices[i];
                let b = &self.matrices[j];
                a.mul(b).expect("validated") == b.mul(a).expect("validated")
            })
        })
    }

    /// Dimension of the smallest `A`-invariant subspace containing every `v_j`.
    pub fn generated_dim(&self) -> usize {
        let ops: Vec<&Matrix> = self.matrices.iter().collect();
        invariant_closure(self.field, self.n, &self.vectors, &ops)
            .expect("validated at construction")
            .dim()
    }

    /// The framing vectors generate `k^n` under the loop matrices.
    pub fn is_stable(&self) -> bool {
        self.generated_dim() == self.n
    }

    /// Errors unless the representation is a stable point of the commuting locus.
    pub fn require_quot_point(&self) -> Result<()> {
        if !self.is_stable() {
            return Err(Error::NotStable);
        }
        if !self.is_commuting() {
            return Err(Error::NotCommuting);
        }
        Ok(())
    }
}

pub fn rep_space_dim(m: usize, n: usize, r: usize) -> usize {
    m * n * n + r * n
}

/// An invertible `n × n` matrix acting on representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeElement {
    g: Matrix,
    inverse: Matrix,
}

impl GaugeElement {
    pub fn new(g: Matrix) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "gauge element must be square, got {}x{}",
                g.rows(),
                g.cols()
            )));
        }
        let inverse = g.inverse()?.ok_or(Error::SingularGauge)?;
        Ok(Self { g, inverse })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.g
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    pub fn n(&self) -> usize {
        self.g.rows()
    }

    /// `g·X·g⁻¹`.
    pub fn conjugate(&self, x: &Matrix) -> Result<Matrix> {
        self.g.mul(x)?.mul(&self.inverse)
    }
}

/// `(gA_1g⁻¹, …, gA_mg⁻¹, gv_1, …, gv_r)`.
pub fn gauge_act(g: &GaugeElement, rep: &FramedRep) -> Result<FramedRep> {
    rep.field.check(g.g.field())?;
    if g.n() != rep.n {
        return Err(Error::ShapeMismatch(format!(
            "gauge element of size {} on a representation with n = {}",
            g.n(),
            rep.n
        )));
    }
    let matrices = rep
        .matrices
        .iter()
        .map(|a| g.conjugate(a))
        .collect::<Result<Vec<_>>>()?;
    let vectors = rep
        .vectors
        .iter()
        .map(|v| g.g.mul_vec(v))
        .collect::<Result<Vec<_>>>()?;
    FramedRep::new(rep.field, rep.n, matrices, vectors)
}

/// The quotient `𝒪^r ↠ 𝒪_p^r` at the origin: `n = r`, all `A_i = 0`, `v_j = e_j`.
pub fn punctual_point(field: Field, m: usize, r: usize) -> Result<FramedRep> {
    if m == 0 || r == 0 {
        return Err(Error::ParameterOutOfRange(format!(
            "punctual point needs m, r >= 1 (got m = {m}, r = {r})"
        )));
    }
    let matrices = vec![Matrix::zeros(field, r, r); m];
    let vectors = (0..r).map(|j| unit_vector(field, r, j)).collect();
    FramedRep::new(field, r, matrices, vectors)
}

/// A reduced point: `n` distinct points of `𝔸^m`, each carried by one framing
/// vector. `A_i` is the diagonal of the `i`-th coordinates and `v_j` is the
/// indicator of the points assigned to `j`.
pub fn etale_point(
    field: Field,
    m: usize,
    r: usize,
    supports: &[Vec<Scalar>],
    assignment: &[usize],
) -> Result<FramedRep> {
    let n = supports.len();
    if assignment.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "{} assignments for {n} support points",
            assignment.len()
        )));
    }
    for p in supports {
        check_vector(field, p)?;
        if p.len() != m {
            return Err(Error::ShapeMismatch(format!(
                "support point with {} coordinates in 𝔸^{m}",
                p.len()
            )));
        }
    }
    if let Some(&bad) = assignment.iter().find(|&&j| j >= r) {
        return Err(Error::ParameterOutOfRange(format!(
            "framing index {bad} with r = {r}"
        )));
    }
    for (a, p) in supports.iter().enumerate() {
        if supports[a + 1..].contains(p) {
            return Err(Error::DuplicateSupport);
        }
    }
    let matrices = (0..m)
        .map(|i| {
            let diag: Vec<Scalar> = supports.iter().map(|p| p[i].clone()).collect();
            Matrix::diagonal(field, &diag)
        })
        .collect::<Result<Vec<_>>>()?;
    let vectors = (0..r)
        .map(|j| {
            assignment
                .iter()
                .map(|&a| if a == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect();
    FramedRep::new(field, n, matrices, vectors)
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn s(v: i64) -> Scalar {
        Scalar::from_i64(Q, v)
    }

    fn rep(matrices: Vec<Matrix>, vectors: Vec<Vector>) -> FramedRep {
        let n = vectors[0].len();
        FramedRep::new(Q, n, matrices, vectors).unwrap()
    }

    #[test]
    fn commutators_vanish_at_zero_and_for_scalars() {
        let p = punctual_point(Q, 3, 2).unwrap();
        assert_eq!(p.commutators().len(), 3);
        assert!(p.commutators().iter().all(Matrix::is_zero));
        let scalars = rep(
            vec![
                Matrix::diagonal(Q, &[s(3)]).unwrap(),
                Matrix::diagonal(Q, &[s(-5)]).unwrap(),
            ],
            vec![vec![s(1)]],
        );
        assert!(scalars.commutators().iter().all(Matrix::is_zero));
    }

    #[test]
    fn elementary_commutator() {
        let e12 = Matrix::elementary(Q, 2, 0, 1);
        let e21 = Matrix::elementary(Q, 2, 1, 0);
        let x = rep(vec![e12, e21], vec![vec![s(1), s(0)]]);
        assert_eq!(
            x.commutators(),
            vec![Matrix::diagonal(Q, &[s(1), s(-1)]).unwrap()]
        );
        assert!(!x.is_commuting());
    }

    #[test]
    fn commuting_cases() {
        let d1 = Matrix::diagonal(Q, &[s(1), s(2), s(3)]).unwrap();
        let d2 = Matrix::diagonal(Q, &[s(0), s(7), s(-1)]).unwrap();
        assert!(rep(vec![d1, d2], vec![vec![s(1), s(1), s(1)]]).is_commuting());
        let empty = FramedRep::new(Q, 0, vec![Matrix::zeros(Q, 0, 0); 2], vec![vec![]]).unwrap();
        assert!(empty.is_commuting());
        assert!(empty.is_stable());
    }

    #[test]
    fn stability_examples() {
        assert!(punctual_point(Q, 2, 3).unwrap().is_stable());
        let dead = rep(vec![Matrix::identity(Q, 2)], vec![vec![s(0), s(0)]]);
        assert!(!dead.is_stable());
        // shift e1 -> e2
        let jordan = rep(vec![Matrix::elementary(Q, 2, 1, 0)], vec![vec![s(1), s(0)]]);
        assert!(jordan.is_stable());
        let stuck = rep(vec![Matrix::elementary(Q, 2, 1, 0)], vec![vec![s(0), s(1)]]);
        assert!(!stuck.is_stable());
    }

    #[test]
    fn gauge_identity_and_scalar() {
        let x = rep(
            vec![Matrix::from_i64_rows(Q, &[&[1, 2], &[0, 3]]).unwrap()],
            vec![vec![s(1), s(-1)]],
        );
        let id = GaugeElement::new(Matrix::identity(Q, 2)).unwrap();
        assert_eq!(gauge_act(&id, &x).unwrap(), x);
        let lambda = GaugeElement::new(Matrix::diagonal(Q, &[s(5), s(5)]).unwrap()).unwrap();
        let y = gauge_act(&lambda, &x).unwrap();
        assert_eq!(y.matrices(), x.matrices());
        assert_eq!(y.vectors()[0], vec![s(5), s(-5)]);
    }

    #[test]
    fn singular_gauge_rejected() {
        let g = Matrix::from_i64_rows(Q, &[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!(GaugeElement::new(g), Err(Error::SingularGauge));
    }

    #[test]
    fn punctual_point_shape() {
        let p = punctual_point(Q, 2, 2).unwrap();
        assert_eq!(p.n(), 2);
        assert_eq!(
            p.matrices(),
            &[Matrix::zeros(Q, 2, 2), Matrix::zeros(Q, 2, 2)]
        );
        assert_eq!(p.vectors(), &[vec![s(1), s(0)], vec![s(0), s(1)]]);
        let origin = punctual_point(Q, 3, 1).unwrap();
        assert_eq!(origin.n(), 1);
        assert!(origin.is_stable() && origin.is_commuting());
        assert!(punctual_point(Q, 0, 1).is_err());
    }

    #[test]
    fn etale_examples() {
        let one = etale_point(Q, 3, 1, &[vec![s(4), s(5), s(6)]], &[0]).unwrap();
        assert!(one.is_stable());
        let two = etale_point(Q, 2, 1, &[vec![s(0), s(0)], vec![s(1), s(1)]], &[0, 0]).unwrap();
        let d = Matrix::diagonal(Q, &[s(0), s(1)]).unwrap();
        assert_eq!(two.matrices(), &[d.clone(), d]);
        assert_eq!(two.vectors(), &[vec![s(1), s(1)]]);
        assert!(two.is_stable() && two.is_commuting());
        assert_eq!(
            etale_point(Q, 2, 1, &[vec![s(1), s(2)], vec![s(1), s(2)]], &[0, 0]),
            Err(Error::DuplicateSupport)
        );
    }

    #[test]
    fn coordinates_round_trip() {
        let x = etale_point(Q, 2, 2, &[vec![s(0), s(1)], vec![s(2), s(3)]], &[1, 0]).unwrap();
        let c = x.coordinates();
        assert_eq!(c.len(), x.rep_space_dim());
        assert_eq!(FramedRep::from_coordinates(Q, 2, 2, 2, &c).unwrap(), x);
    }
}
