//! Dense matrices over a [`Field`] with exact elimination.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Column vector.
pub type Vector = Vec<Scalar>;

/// A dense row-major matrix whose entries all live in one field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// entries from another field.
    pub fn new(rows: usize, cols: usize, field: Field, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        check_vector(field, &entries)?;
        Ok(Self {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(rows, cols, field, entries)
    }

    /// Integer matrix given by rows; handy for fixtures.
    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!(
                "ragged rows, expected width {cols}"
            )));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| Scalar::from_i64(field, v)))
            .collect();
        Self::new(rows.len(), cols, field, entries)
    }

    /// Elementary matrix `E_ij` (zero-based indices).
    pub fn elementary(field: Field, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        m.entries[i * n + j] = field.one();
        m
    }

    pub fn diagonal(field: Field, diag: &[Scalar]) -> Result<Self> {
        check_vector(field, diag)?;
        let n = diag.len();
        let mut m = Self::zeros(field, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d.clone();
        }
        Ok(m)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Result<Self> {
        for c in columns {
            if c.len() != rows {
                return Err(Error::ShapeMismatch(format!(
                    "column of length {} in a {rows}-row matrix",
                    c.len()
                )));
            }
            check_vector(field, c)?;
        }
        let cols = columns.len();
        Self::from_fn(field, rows, cols, |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) -> Result<()> {
        self.field.check(value.field())?;
        self.entries[i * self.cols + j] = value;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            entries,
        }
    }

    pub fn trace(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "trace of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut acc = self.field.zero();
        for i in 0..self.rows {
            acc = &acc + self.get(i, i);
        }
        Ok(acc)
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.field.check(rhs.field)?;
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.entries[i * rhs.cols + j];
                    *slot = &*slot + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        check_vector(self.field, v)?;
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot apply a {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| dot(self.field, self.row(i), v))
            .collect())
    }

    fn zip_with(&self, rhs: &Matrix, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.field.check(rhs.field)?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| op(a, b))
                .collect(),
        })
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Matrix> {
        self.field.check(c.field())?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().map(|a| a * c).collect(),
        })
    }

    /// `[self, rhs] = self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &Matrix) -> Result<Matrix> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    /// Reduced row echelon form.
    ///
    /// Columns are scanned left to right; the pivot in each column is the
    /// first nonzero entry at or below the current pivot row.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(found, pivot_row);
            let inv = m.get(pivot_row, col).inverse().expect("pivot is nonzero");
            for j in col..m.cols {
                let idx = pivot_row * m.cols + j;
                m.entries[idx] = &m.entries[idx] * &inv;
            }
            for i in 0..m.rows {
                if i == pivot_row {
                    continue;
                }
                let factor = m.get(i, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let p = &m.entries[pivot_row * m.cols + j];
                    if p.is_zero() {
                        continue;
                    }
                    let delta = &factor * p;
                    let idx = i * m.cols + j;
                    m.entries[idx] = &m.entries[idx] - &delta;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref {
            reduced: m,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// A basis of `{x : self·x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&free| !is_pivot[free])
            .map(|free| {
                let mut x = vec![self.field.zero(); self.cols];
                x[free] = self.field.one();
                for (row, &p) in pivots.iter().enumerate() {
                    x[p] = -reduced.get(row, free);
                }
                x
            })
            .collect()
    }

    /// Some `x` with `self·x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>> {
        check_vector(self.field, b)?;
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let augmented = Matrix::from_fn(self.field, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        })?;
        let Rref {
            reduced, pivots, ..
        } = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Two-sided inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let augmented = Matrix::from_fn(self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        })?;
        let Rref {
            reduced, pivots, ..
        } = augmented.rref();
        if n > 0 && pivots.get(n - 1) != Some(&(n - 1)) {
            return Ok(None);
        }
        Ok(Some(Matrix::from_fn(self.field, n, n, |i, j| {
            reduced.get(i, n + j).clone()
        })?))
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Result<Matrix> {
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            field.check(b.field)?;
            if b.cols != cols {
                return Err(Error::ShapeMismatch(format!(
                    "cannot stack a block with {} columns onto {cols}",
                    b.cols
                )));
            }
            rows += b.rows;
            entries.extend(b.entries.iter().cloned());
        }
        Matrix::new(rows, cols, field, entries)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

pub(crate) fn check_vector(field: Field, v: &[Scalar]) -> Result<()> {
    match v.iter().find(|s| s.field() != field) {
        Some(s) => Err(Error::FieldMismatch {
            left: field,
            right: s.field(),
        }),
        None => Ok(()),
    }
}

pub(crate) fn dot(field: Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = &acc + &(x * y);
    }
    acc
}

/// A subspace of `k^dim`, kept as a fully reduced echelon basis so that
/// membership tests are a single reduction pass.
#[derive(Debug, Clone)]
pub struct Span {
    field: Field,
    dim: usize,
    basis: Vec<(usize, Vector)>,
}

impl Span {
    pub fn new(field: Field, dim: usize) -> Self {
        Self {
            field,
            dim,
            basis: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.dim
    }

    fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut v = v.to_vec();
        for (p, row) in &self.basis {
            let c = v[*p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<bool> {
        check_vector(self.field, v)?;
        if v.len() != self.dim {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} in a span of k^{}",
                v.len(),
                self.dim
            )));
        }
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = w[p].inverse()?;
        for x in w.iter_mut() {
            *x = &*x * &inv;
        }
        for (_, row) in self.basis.iter_mut() {
            let c = row[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x = &*x - &(&c * y);
                }
            }
        }
        self.basis.push((p, w));
        Ok(true)
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vector> {
        self.basis.iter().map(|(_, v)| v)
    }
}

/// Smallest subspace of `k^dim` containing `generators` and invariant under
/// every operator.
///
/// Worklist closure: each vector that enlarges the span is queued once and
/// later hit with every operator, so at most `dim` enlargements happen.
pub fn invariant_closure(
    field: Field,
    dim: usize,
    generators: &[Vector],
    operators: &[&Matrix],
) -> Result<Span> {
    for op in operators {
        field.check(op.field)?;
        if op.rows != dim || op.cols != dim {
            return Err(Error::ShapeMismatch(format!(
                "operator {}x{} on k^{dim}",
                op.rows, op.cols
            )));
        }
    }
    let mut span = Span::new(field, dim);
    let mut queue = VecDeque::new();
    for g in generators {
        if span.insert(g)? {
            queue.push_back(g.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        if span.is_full() {
            break;
        }
        for op in operators {
            let w = op.mul_vec(&v)?;
            if span.insert(&w)? {
                queue.push_back(w);
            }
        }
    }
    Ok(span)
}
