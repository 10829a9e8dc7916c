//! Dense exact linear algebra: reduced row echelon form, kernel and image
//! bases, linear solving, conjugate transpose, and orthogonal projectors.
//!
//! Everything here is exact. Pivoting takes the first nonzero entry in
//! column order scanning rows top-down, which makes the echelon form (and
//! every basis derived from it) deterministic.

use crate::scalar::{Field, Scalar};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Dense rectangular matrix over ℚ or ℚ(i), row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

/// The standard inner product g(u, v) = Σ conj(uᵢ)·vᵢ.
pub fn dot(u: &[Scalar], v: &[Scalar], field: Field) -> Scalar {
    assert_eq!(u.len(), v.len(), "inner product of unequal lengths");
    u.iter()
        .zip(v)
        .fold(Scalar::zero(field), |acc, (a, b)| &acc + &(&a.conj() * b))
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: Field) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Matrix {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        field: Field,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut m = Matrix::zero(rows, cols, field);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        let nrows = rows.len();
        let entries: Vec<Scalar> = rows.into_iter().flatten().collect();
        assert!(entries.iter().all(|s| s.field() == field), "mixed fields");
        Matrix {
            rows: nrows,
            cols: ncols,
            field,
            entries,
        }
    }

    /// Test convenience: integer entries.
    pub fn from_int_rows(field: Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&n| Scalar::from_int(n, field)).collect())
                .collect(),
        )
    }

    pub fn diagonal(field: Field, entries: &[Scalar]) -> Matrix {
        let n = entries.len();
        let mut m = Matrix::zero(n, n, field);
        for (i, s) in entries.iter().enumerate() {
            m.set(i, i, s.clone());
        }
        m
    }

    /// Single-column matrix holding `v`.
    pub fn column(field: Field, v: &[Scalar]) -> Matrix {
        Matrix::from_fn(v.len(), 1, field, |i, _| v[i].clone())
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        assert_eq!(s.field(), self.field, "entry from a different field");
        self.entries[i * self.cols + j] = s;
    }

    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn col_vec(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// (M*)ᵢⱼ = conj(Mⱼᵢ).
    pub fn conj_transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.field, |i, j| self.at(j, i).conj())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.field, |i, j| s * self.at(i, j))
    }

    /// M·v for a coordinate vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Scalar::zero(self.field), |acc, j| {
                    &acc + &(self.at(i, j) * &v[j])
                })
            })
            .collect()
    }

    /// M⁰ = identity, Mⁿ = M·Mⁿ⁻¹.
    pub fn pow(&self, n: usize) -> Result<Matrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Matrix::identity(self.rows, self.field);
        for _ in 0..n {
            acc = &acc * self;
        }
        Ok(acc)
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack with unequal row counts");
        assert_eq!(self.field, other.field, "hstack across fields");
        Matrix::from_fn(self.rows, self.cols + other.cols, self.field, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Unique reduced row echelon form, with rank and pivot column indices.
    pub fn rref(&self) -> Rref {
        self.rref_in(self.cols)
    }

    /// Reduced row echelon form with pivot search restricted to the first
    /// `pivot_limit` columns; rows are still reduced across the full width.
    /// This is the single-elimination workhorse behind solving with many
    /// right-hand sides and inversion.
    fn rref_in(&self, pivot_limit: usize) -> Rref {
        let mut r = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..pivot_limit.min(r.cols) {
            if pivot_row == r.rows {
                break;
            }
            let Some(src) = (pivot_row..r.rows).find(|&i| !r.at(i, col).is_zero()) else {
                continue;
            };
            r.swap_rows(pivot_row, src);
            let inv = r.at(pivot_row, col).inv().expect("nonzero pivot");
            for j in col..r.cols {
                let v = &inv * r.at(pivot_row, j);
                r.set(pivot_row, j, v);
            }
            for i in 0..r.rows {
                if i == pivot_row || r.at(i, col).is_zero() {
                    continue;
                }
                let factor = r.at(i, col).clone();
                for j in col..r.cols {
                    let v = r.at(i, j) - &(&factor * r.at(pivot_row, j));
                    r.set(i, j, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref {
            rank: pivots.len(),
            pivots,
            matrix: r,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of {v : Mv = 0}; free variables set to one in ascending column order.
    pub fn kernel_basis(&self) -> SubspaceBasis {
        let Rref {
            matrix: r, pivots, ..
        } = self.rref();
        let mut vectors = Vec::new();
        let mut pivot_iter = pivots.iter().copied().peekable();
        let mut free_cols = Vec::new();
        for c in 0..self.cols {
            if pivot_iter.peek() == Some(&c) {
                pivot_iter.next();
            } else {
                free_cols.push(c);
            }
        }
        for f in free_cols {
            let mut v = vec![Scalar::zero(self.field); self.cols];
            v[f] = Scalar::one(self.field);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.at(i, f);
            }
            vectors.push(v);
        }
        SubspaceBasis::from_vectors_unchecked(self.cols, self.field, vectors)
    }

    /// Basis of the column space: the pivot columns of M itself.
    pub fn image_basis(&self) -> SubspaceBasis {
        let pivots = self.rref().pivots;
        let vectors = pivots.iter().map(|&j| self.col_vec(j)).collect();
        SubspaceBasis::from_vectors_unchecked(self.rows, self.field, vectors)
    }

    /// One particular solution of Mx = b (free variables zero), or `None`
    /// when b is outside the column space. Not an error state.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length must match rows");
        let augmented = self.hstack(&Matrix::column(self.field, b));
        let Rref {
            matrix: r, pivots, ..
        } = augmented.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(self.field); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.at(i, self.cols).clone();
        }
        Some(x)
    }

    /// Particular solutions of MX = B (free variables zero), all columns in
    /// one elimination; `None` if any column of B lies outside the column
    /// space.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "row counts must agree");
        let augmented = self.hstack(rhs);
        let Rref {
            matrix: r,
            rank,
            pivots,
        } = augmented.rref_in(self.cols);
        // Rows below the rank are zero in the coefficient part; a nonzero
        // entry there marks an inconsistent column.
        for i in rank..self.rows {
            for j in 0..rhs.cols {
                if !r.at(i, self.cols + j).is_zero() {
                    return None;
                }
            }
        }
        let mut x = Matrix::zero(self.cols, rhs.cols, self.field);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, r.at(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let augmented = self.hstack(&Matrix::identity(n, self.field));
        let Rref {
            matrix: r, rank, ..
        } = augmented.rref_in(n);
        if rank < n {
            return None;
        }
        Some(Matrix::from_fn(n, n, self.field, |i, j| {
            r.at(i, n + j).clone()
        }))
    }

    /// The matrix sending each column of `basis` to the matching column of
    /// `images`: images·basis⁻¹. Panics if `basis` does not span the space.
    pub fn from_action(basis: &Matrix, images: &Matrix) -> Matrix {
        assert_eq!(basis.cols, images.cols, "one image per basis vector");
        let inv = basis
            .inverse()
            .expect("action must be prescribed on a basis of the whole space");
        images * &inv
    }
}

/// Result of reduced row echelon elimination.
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix::from_fn(self.rows, self.cols, self.field, |i, j| {
            self.at(i, j) + rhs.at(i, j)
        })
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix::from_fn(self.rows, self.cols, self.field, |i, j| {
            self.at(i, j) - rhs.at(i, j)
        })
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        assert_eq!(self.field, rhs.field, "product across fields");
        Matrix::from_fn(self.rows, rhs.cols, self.field, |i, j| {
            (0..self.cols).fold(Scalar::zero(self.field), |acc, k| {
                &acc + &(self.at(i, k) * rhs.at(k, j))
            })
        })
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.field, |i, j| -self.at(i, j))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} over {}\n{}", self.rows, self.cols, self.field, self)
    }
}

/// A list of linearly independent coordinate vectors spanning a subspace.
///
/// Bases are not canonical; subspace comparisons go through rank tests on
/// stacked generators, never through entrywise comparison of basis vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    field: Field,
    /// ambient_dim × dim matrix whose columns are the basis vectors.
    basis: Matrix,
}

impl SubspaceBasis {
    /// Validates linear independence.
    pub fn new(
        ambient_dim: usize,
        field: Field,
        vectors: Vec<Vec<Scalar>>,
    ) -> Result<SubspaceBasis, MatrixError> {
        let candidate = SubspaceBasis::from_vectors_unchecked(ambient_dim, field, vectors);
        if candidate.basis.rank() != candidate.dim() {
            return Err(MatrixError::DependentBasis);
        }
        Ok(candidate)
    }

    pub fn from_vectors_unchecked(
        ambient_dim: usize,
        field: Field,
        vectors: Vec<Vec<Scalar>>,
    ) -> SubspaceBasis {
        assert!(
            vectors.iter().all(|v| v.len() == ambient_dim),
            "basis vector of wrong length"
        );
        let k = vectors.len();
        let basis = Matrix::from_fn(ambient_dim, k, field, |i, j| vectors[j][i].clone());
        SubspaceBasis {
            ambient_dim,
            field,
            basis,
        }
    }

    pub fn empty(ambient_dim: usize, field: Field) -> SubspaceBasis {
        SubspaceBasis::from_vectors_unchecked(ambient_dim, field, Vec::new())
    }

    /// The standard basis of the whole space.
    pub fn full(ambient_dim: usize, field: Field) -> SubspaceBasis {
        SubspaceBasis {
            ambient_dim,
            field,
            basis: Matrix::identity(ambient_dim, field),
        }
    }

    pub fn from_columns(m: &Matrix) -> SubspaceBasis {
        SubspaceBasis {
            ambient_dim: m.rows(),
            field: m.field(),
            basis: m.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn vector(&self, i: usize) -> Vec<Scalar> {
        self.basis.col_vec(i)
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|i| self.vector(i)).collect()
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.basis.solve(v).is_some()
    }

    /// span(other) ⊆ span(self), by the rank test rank[B] = rank[B | C].
    pub fn contains(&self, other: &SubspaceBasis) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient mismatch");
        if other.dim() == 0 {
            return true;
        }
        self.basis.rank() == self.basis.hstack(&other.basis).rank()
    }

    pub fn same_span(&self, other: &SubspaceBasis) -> bool {
        self.contains(other) && other.contains(self)
    }

    /// span of M·bᵢ over the basis vectors bᵢ.
    pub fn image_under(&self, m: &Matrix) -> SubspaceBasis {
        (m * &self.basis).image_basis()
    }

    /// Orthogonal projector B(B*B)⁻¹B* for the standard inner product.
    pub fn orth_projector(&self) -> Matrix {
        if self.dim() == 0 {
            return Matrix::zero(self.ambient_dim, self.ambient_dim, self.field);
        }
        let b = &self.basis;
        let b_star = b.conj_transpose();
        let gram_inv = (&b_star * b)
            .inverse()
            .expect("Gram matrix of an independent basis is invertible");
        &(b * &gram_inv) * &b_star
    }

    /// Basis of {v : g(b, v) = 0 for all basis vectors b}.
    pub fn orth_complement(&self) -> SubspaceBasis {
        if self.dim() == 0 {
            return SubspaceBasis::full(self.ambient_dim, self.field);
        }
        self.basis.conj_transpose().kernel_basis()
    }

    /// span(self) + span(other).
    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient mismatch");
        self.basis.hstack(&other.basis).image_basis()
    }

    /// span(self) ∩ span(other), via the kernel of [B | -C].
    pub fn intersection(&self, other: &SubspaceBasis) -> SubspaceBasis {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient mismatch");
        if self.dim() == 0 || other.dim() == 0 {
            return SubspaceBasis::empty(self.ambient_dim, self.field);
        }
        let paired = self.basis.hstack(&(-&other.basis));
        let relations = paired.kernel_basis();
        let vectors: Vec<Vec<Scalar>> = relations
            .vectors()
            .into_iter()
            .map(|r| self.basis.apply(&r[..self.dim()]))
            .collect();
        SubspaceBasis::from_vectors_unchecked(self.ambient_dim, self.field, vectors)
    }

    pub fn is_orthogonal_to(&self, other: &SubspaceBasis) -> bool {
        self.vectors().iter().all(|u| {
            other
                .vectors()
                .iter()
                .all(|v| dot(u, v, self.field).is_zero())
        })
    }

    /// The unique reduced-echelon basis of the same span; used for display
    /// and nowhere else.
    pub fn canonical(&self) -> SubspaceBasis {
        let stacked = self.basis.conj_transpose(); // rows are conjugated vectors
        let stacked = Matrix::from_fn(self.dim(), self.ambient_dim, self.field, |i, j| {
            stacked.at(i, j).conj()
        });
        let Rref {
            matrix: r, rank, ..
        } = stacked.rref();
        let vectors = (0..rank).map(|i| r.row_vec(i)).collect();
        SubspaceBasis::from_vectors_unchecked(self.ambient_dim, self.field, vectors)
    }
}

impl fmt::Display for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 0 {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .canonical()
            .vectors()
            .iter()
            .map(|v| render_vector(v))
            .collect();
        write!(f, "span{{{}}}", rendered.join(", "))
    }
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Renders standard basis vectors as e1, e2, ... and anything else as a tuple.
fn render_vector(v: &[Scalar]) -> String {
    let nonzero: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    if nonzero.len() == 1 {
        let i = nonzero[0];
        if v[i] == Scalar::one(v[i].field()) {
            return format!("e{}", i + 1);
        }
    }
    let parts: Vec<String> = v.iter().map(Scalar::to_string).collect();
    format!("({})", parts.join(", "))
}
