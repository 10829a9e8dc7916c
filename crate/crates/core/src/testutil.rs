//! Shared fixtures for unit tests.

use crate::matrix::Matrix;
use crate::operator::{Ambient, FinitePotentOperator};
use crate::scalar::{Field, Scalar};

pub fn rat(p: i64, q: i64) -> Scalar {
    Scalar::fraction(p, q, Field::Real)
}

pub fn int_matrix(rows: &[&[i64]]) -> Matrix {
    Matrix::from_int_rows(Field::Real, rows)
}

pub fn finite(rows: &[&[i64]]) -> FinitePotentOperator {
    FinitePotentOperator::new(int_matrix(rows), Ambient::Finite(rows.len())).unwrap()
}

/// 5x5 with invertible part diag(29, 33) and e4 ↦ e5; index 2.
pub fn sample_a() -> FinitePotentOperator {
    finite(&[
        &[29, 0, 0, 0, 0],
        &[0, 33, 0, 0, 0],
        &[0, 0, 0, 0, 0],
        &[0, 0, 0, 0, 0],
        &[0, 0, 0, 1, 0],
    ])
}

/// 5x5 with invertible part diag(29, 33) and the chain e3 ↦ e4 ↦ e5; index 3.
/// Has the same core part as [`sample_a`].
pub fn sample_b() -> FinitePotentOperator {
    finite(&[
        &[29, 0, 0, 0, 0],
        &[0, 33, 0, 0, 0],
        &[0, 0, 0, 0, 0],
        &[0, 0, 1, 0, 0],
        &[0, 0, 0, 1, 0],
    ])
}

/// Nilpotent single Jordan block of size n (eₖ ↦ eₖ₋₁, e1 ↦ 0).
pub fn jordan_nilpotent(n: usize) -> FinitePotentOperator {
    let block = Matrix::from_fn(n, n, Field::Real, |i, j| {
        if j == i + 1 {
            Scalar::one(Field::Real)
        } else {
            Scalar::zero(Field::Real)
        }
    });
    FinitePotentOperator::new(block, Ambient::Finite(n)).unwrap()
}

/// The running rank-one example [[1, 1], [0, 0]]; idempotent, not EP.
pub fn sample_c() -> FinitePotentOperator {
    finite(&[&[1, 1], &[0, 0]])
}

pub fn identity_op(n: usize) -> FinitePotentOperator {
    FinitePotentOperator::new(Matrix::identity(n, Field::Real), Ambient::Finite(n)).unwrap()
}

pub fn zero_op(n: usize) -> FinitePotentOperator {
    FinitePotentOperator::new(Matrix::zero(n, n, Field::Real), Ambient::Finite(n)).unwrap()
}

pub fn countable(rows: &[&[i64]]) -> FinitePotentOperator {
    FinitePotentOperator::new(
        int_matrix(rows),
        Ambient::Countable {
            support: rows.len(),
        },
    )
    .unwrap()
}
