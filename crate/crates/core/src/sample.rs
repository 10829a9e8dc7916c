//! Random operator generators for the verification suites.
//!
//! Unconditioned random matrices over ℚ are almost surely invertible, so
//! the interesting strata — singular index-one operators, higher nilpotency
//! orders, EP operators, idempotents — are produced by construction and
//! certified after the fact, resampling on the rare failure.

use crate::matrix::{Matrix, SubspaceBasis};
use crate::operator::{Ambient, FinitePotentOperator};
use crate::scalar::{Field, Scalar};
use rand::Rng;

pub fn random_scalar(rng: &mut impl Rng, field: Field) -> Scalar {
    // Integer-leaning: derived quantities (inverses, Gram matrices) produce
    // plenty of fractions on their own, and small numerators keep the exact
    // arithmetic fast through long chains of eliminations.
    match field {
        Field::Real => {
            let p = rng.gen_range(-3i64..=3);
            let q = if rng.gen_bool(0.25) { 2 } else { 1 };
            Scalar::fraction(p, q, field)
        }
        // Tiny components: complex arithmetic pays for four integer
        // multiplications per product, and eliminations compound entry
        // growth much faster than over the rationals.
        Field::Complex => {
            let p = rng.gen_range(-1i64..=1);
            let c = rng.gen_range(-1i64..=1);
            Scalar::gaussian(p, 1, c, 1)
        }
    }
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, field: Field) -> Matrix {
    let mut m = Matrix::zero(rows, cols, field);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, random_scalar(rng, field));
        }
    }
    m
}

pub fn random_invertible(rng: &mut impl Rng, n: usize, field: Field) -> Matrix {
    loop {
        let candidate = random_matrix(rng, n, n, field);
        if candidate.rank() == n {
            return candidate;
        }
    }
}

fn random_full_column_rank(rng: &mut impl Rng, rows: usize, cols: usize, field: Field) -> Matrix {
    assert!(cols <= rows);
    loop {
        let candidate = random_matrix(rng, rows, cols, field);
        if candidate.rank() == cols {
            return candidate;
        }
    }
}

/// A plain random operator; over ℚ this is invertible most of the time.
pub fn random_operator(rng: &mut impl Rng, dim: usize, field: Field) -> FinitePotentOperator {
    FinitePotentOperator::new(random_matrix(rng, dim, dim, field), Ambient::Finite(dim)).unwrap()
}

/// An operator of index at most one with the given rank, built as
/// S·diag(A, 0)·S⁻¹ for random invertible S and A, then certified.
pub fn random_low_index_with_rank(
    rng: &mut impl Rng,
    dim: usize,
    rank: usize,
    field: Field,
) -> FinitePotentOperator {
    assert!(rank <= dim);
    let s = random_invertible(rng, dim, field);
    let s_inv = s.inverse().expect("sampled invertible");
    let a = random_invertible(rng, rank, field);
    let mut d = Matrix::zero(dim, dim, field);
    for i in 0..rank {
        for j in 0..rank {
            d.set(i, j, a.at(i, j).clone());
        }
    }
    let op =
        FinitePotentOperator::new(&(&s * &d) * &s_inv, Ambient::Finite(dim)).unwrap();
    assert!(op.index() <= 1, "construction must have index at most one");
    op
}

pub fn random_low_index(rng: &mut impl Rng, dim: usize, field: Field) -> FinitePotentOperator {
    let rank = rng.gen_range(0..=dim);
    random_low_index_with_rank(rng, dim, rank, field)
}

/// An EP operator: B·C·B* has image span(B) and kernel span(B)^⊥.
pub fn random_ep(rng: &mut impl Rng, dim: usize, field: Field) -> FinitePotentOperator {
    let rank = rng.gen_range(0..=dim);
    let b = random_full_column_rank(rng, dim, rank, field);
    let c = random_invertible(rng, rank, field);
    let block = &(&b * &c) * &b.conj_transpose();
    let op = FinitePotentOperator::new(block, Ambient::Finite(dim)).unwrap();
    debug_assert!(crate::inverse::is_ep(&op));
    op
}

/// An oblique idempotent: S·diag(1,...,1,0,...,0)·S⁻¹.
pub fn random_idempotent(rng: &mut impl Rng, dim: usize, field: Field) -> FinitePotentOperator {
    let rank = rng.gen_range(0..=dim);
    let s = random_invertible(rng, dim, field);
    let s_inv = s.inverse().expect("sampled invertible");
    let mut d = Matrix::zero(dim, dim, field);
    for i in 0..rank {
        d.set(i, i, Scalar::one(field));
    }
    FinitePotentOperator::new(&(&s * &d) * &s_inv, Ambient::Finite(dim)).unwrap()
}

/// An EP operator with φ³ = φ: a signed involution of a random subspace,
/// zero on its orthogonal complement.
pub fn random_ep_tripotent(rng: &mut impl Rng, dim: usize, field: Field) -> FinitePotentOperator {
    let rank = rng.gen_range(0..=dim);
    let b = SubspaceBasis::from_columns(&random_full_column_rank(rng, dim, rank, field));
    // Signed involutive permutation of the basis vectors: random fixed
    // points with sign ±1 and random swapped pairs.
    let mut sigma = Matrix::zero(rank, rank, field);
    let mut unplaced: Vec<usize> = (0..rank).collect();
    while let Some(i) = unplaced.pop() {
        let sign = if rng.gen_bool(0.5) {
            Scalar::one(field)
        } else {
            -Scalar::one(field)
        };
        if !unplaced.is_empty() && rng.gen_bool(0.5) {
            let j = unplaced.remove(rng.gen_range(0..unplaced.len()));
            sigma.set(j, i, sign.clone());
            sigma.set(i, j, sign);
        } else {
            sigma.set(i, i, sign);
        }
    }
    let complement = b.orth_complement();
    let basis = b.basis_matrix().hstack(complement.basis_matrix());
    let images = (b.basis_matrix() * &sigma).hstack(&Matrix::zero(
        dim,
        complement.dim(),
        field,
    ));
    let op = FinitePotentOperator::new(Matrix::from_action(&basis, &images), Ambient::Finite(dim))
        .unwrap();
    debug_assert_eq!(op.pow(3), op);
    op
}

/// An operator together with the core-nilpotent parts it was assembled
/// from, for oracle comparisons against the computed decomposition.
pub struct ConstructedDecomposition {
    pub op: FinitePotentOperator,
    pub core_part: FinitePotentOperator,
    pub nilpotent_part: FinitePotentOperator,
}

/// S·(A ⊕ N)·S⁻¹ with A invertible and N a nilpotent chain of order
/// exactly `index`; the conjugated block pieces are the CN parts.
pub fn random_with_index(
    rng: &mut impl Rng,
    dim: usize,
    index: usize,
    field: Field,
) -> ConstructedDecomposition {
    assert!((2..=dim).contains(&index), "index must be between 2 and dim");
    let rank = rng.gen_range(0..=(dim - index));
    let nil_size = dim - rank;
    let s = random_invertible(rng, dim, field);
    let s_inv = s.inverse().expect("sampled invertible");

    let a = random_invertible(rng, rank, field);
    let mut core_block = Matrix::zero(dim, dim, field);
    for i in 0..rank {
        for j in 0..rank {
            core_block.set(i, j, a.at(i, j).clone());
        }
    }
    let mut nil_block = Matrix::zero(dim, dim, field);
    for step in 0..(index - 1) {
        let mut weight = random_scalar(rng, field);
        if weight.is_zero() {
            weight = Scalar::one(field);
        }
        nil_block.set(rank + step + 1, rank + step, weight);
    }
    debug_assert!(nil_size >= index);

    let conjugate = |m: &Matrix| &(&s * m) * &s_inv;
    let make = |m: Matrix| FinitePotentOperator::new(m, Ambient::Finite(dim)).unwrap();
    let result = ConstructedDecomposition {
        op: make(conjugate(&(&core_block + &nil_block))),
        core_part: make(conjugate(&core_block)),
        nilpotent_part: make(conjugate(&nil_block)),
    };
    assert_eq!(result.op.index(), index, "constructed index must match");
    result
}

/// The same block acting through a finite support window of a countably
/// infinite-dimensional space.
pub fn as_countable(op: &FinitePotentOperator) -> FinitePotentOperator {
    FinitePotentOperator::new(
        op.block().clone(),
        Ambient::Countable {
            support: op.window(),
        },
    )
    .unwrap()
}

/// A random vector inside the span of the given basis (possibly zero).
pub fn random_vector_in_span(rng: &mut impl Rng, basis: &SubspaceBasis) -> Vec<Scalar> {
    let field = basis.field();
    let coeffs: Vec<Scalar> = (0..basis.dim()).map(|_| random_scalar(rng, field)).collect();
    basis.basis_matrix().apply(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inverse::is_ep;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn strata_have_the_advertised_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let low = random_low_index(&mut rng, 5, Field::Real);
            assert!(low.index() <= 1);

            let ep = random_ep(&mut rng, 4, Field::Complex);
            assert!(is_ep(&ep));
            assert!(ep.index() <= 1);

            let idem = random_idempotent(&mut rng, 4, Field::Real);
            assert_eq!(idem.compose(&idem), idem);

            let tri = random_ep_tripotent(&mut rng, 4, Field::Real);
            assert_eq!(tri.pow(3), tri);
            assert!(is_ep(&tri));

            let built = random_with_index(&mut rng, 5, 3, Field::Real);
            assert_eq!(built.op.index(), 3);
            assert_eq!(
                built.core_part.add(&built.nilpotent_part),
                built.op
            );
        }
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let once = random_with_index(&mut ChaCha8Rng::seed_from_u64(99), 5, 2, Field::Real);
        let twice = random_with_index(&mut ChaCha8Rng::seed_from_u64(99), 5, 2, Field::Real);
        assert_eq!(once.op, twice.op);
    }
}
