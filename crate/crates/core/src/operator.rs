//! The operator model.
//!
//! A [`FinitePotentOperator`] is a square block acting either on a
//! finite-dimensional space or on a countably infinite-dimensional inner
//! product space through a finite support window: basis vectors beyond the
//! window map to zero and never appear in any image. Such operators have
//! finite rank, so every power has finite-dimensional image.
//!
//! The countable case is computed through [`FinitePotentOperator::pad`]:
//! one extra zero row and column stand in for the whole tail, which is
//! contained in the kernel, orthogonal to the window, and disjoint from
//! the image.

use crate::matrix::{Matrix, SubspaceBasis};
use crate::scalar::Field;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OperatorError {
    #[error("operator block must be square, got {rows}x{cols}")]
    NonSquareBlock { rows: usize, cols: usize },
    #[error("ambient dimension {ambient} does not match block size {block}")]
    AmbientSizeMismatch { ambient: usize, block: usize },
}

/// Where the operator lives: all of a finite-dimensional space, or a
/// finite support window inside a countably infinite-dimensional one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    Finite(usize),
    Countable { support: usize },
}

impl Ambient {
    pub fn window(&self) -> usize {
        match *self {
            Ambient::Finite(n) => n,
            Ambient::Countable { support } => support,
        }
    }

    pub fn is_countable(&self) -> bool {
        matches!(self, Ambient::Countable { .. })
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Finite(n) => write!(f, "finite dim {}", n),
            Ambient::Countable { support } => write!(f, "countable, support {}", support),
        }
    }
}

#[derive(Clone)]
pub struct FinitePotentOperator {
    block: Matrix,
    ambient: Ambient,
    /// Index and AST splitting, computed once per value on first use.
    analysis: OnceLock<(usize, AstDecomposition)>,
    /// Image and window kernel with their orthogonal complements, computed
    /// once per value on first use.
    spaces: OnceLock<Spaces>,
}

#[derive(Clone)]
struct Spaces {
    image: SubspaceBasis,
    kernel: SubspaceBasis,
    image_perp: SubspaceBasis,
    kernel_perp: SubspaceBasis,
}

impl PartialEq for FinitePotentOperator {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.block == other.block
    }
}

impl Eq for FinitePotentOperator {}

impl FinitePotentOperator {
    pub fn new(block: Matrix, ambient: Ambient) -> Result<FinitePotentOperator, OperatorError> {
        if !block.is_square() {
            return Err(OperatorError::NonSquareBlock {
                rows: block.rows(),
                cols: block.cols(),
            });
        }
        if ambient.window() != block.rows() {
            return Err(OperatorError::AmbientSizeMismatch {
                ambient: ambient.window(),
                block: block.rows(),
            });
        }
        Ok(FinitePotentOperator {
            block,
            ambient,
            analysis: OnceLock::new(),
            spaces: OnceLock::new(),
        })
    }

    pub fn block(&self) -> &Matrix {
        &self.block
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.block.field()
    }

    /// Size of the support window (the block).
    pub fn window(&self) -> usize {
        self.ambient.window()
    }

    pub fn is_zero(&self) -> bool {
        self.block.is_zero()
    }

    pub fn same_ambient(&self, other: &FinitePotentOperator) -> bool {
        self.ambient == other.ambient
    }

    /// Another operator on the same ambient space.
    pub fn with_block(&self, block: Matrix) -> FinitePotentOperator {
        FinitePotentOperator::new(block, self.ambient).expect("block of matching size")
    }

    pub fn zero_like(&self) -> FinitePotentOperator {
        self.with_block(Matrix::zero(self.window(), self.window(), self.field()))
    }

    /// For a finite ambient, the block itself; for a countable one, the
    /// block with one extra zero row and column standing in for the tail.
    pub fn pad(&self) -> Matrix {
        match self.ambient {
            Ambient::Finite(_) => self.block.clone(),
            Ambient::Countable { support } => {
                Matrix::from_fn(support + 1, support + 1, self.field(), |i, j| {
                    if i < support && j < support {
                        self.block.at(i, j).clone()
                    } else {
                        crate::scalar::Scalar::zero(self.field())
                    }
                })
            }
        }
    }

    fn analysis(&self) -> &(usize, AstDecomposition) {
        self.analysis.get_or_init(|| {
            let index = self.compute_index();
            // Exponent max(index, 1) so that index-0 automorphisms yield
            // W = V, U = 0 without special-casing the zeroth power.
            let stable = self.block.pow(index.max(1)).expect("block is square");
            let ast = AstDecomposition {
                index,
                invertible_space: stable.image_basis(),
                nilpotent_space: stable.kernel_basis(),
                tail_in_nilpotent_space: self.ambient.is_countable(),
            };
            (index, ast)
        })
    }

    fn compute_index(&self) -> usize {
        let padded = self.pad();
        let n = padded.rows();
        let mut power = Matrix::identity(n, padded.field());
        let mut prev_rank = n;
        for i in 0..=n {
            power = &power * &padded;
            let rank = power.rank();
            if rank == prev_rank {
                return i;
            }
            prev_rank = rank;
        }
        unreachable!("ranks of powers stabilize within the dimension");
    }

    /// Smallest i ≥ 0 with rank(Pⁱ) = rank(Pⁱ⁺¹) for the padded matrix P;
    /// equals the nilpotency order of the operator on its nilpotent part.
    /// Zero exactly when the ambient is finite and the block invertible.
    pub fn index(&self) -> usize {
        self.analysis().0
    }

    /// The invariant splitting V = W ⊕ U with the operator invertible on
    /// the finite-dimensional W and nilpotent on U.
    pub fn ast(&self) -> AstDecomposition {
        self.analysis().1.clone()
    }

    /// The unique splitting φ = φ₁ + φ₂ with the core part φ₁ of index at
    /// most one, φ₂ nilpotent, and φ₁φ₂ = φ₂φ₁ = 0.
    pub fn cn(&self) -> CnDecomposition {
        let ast = self.ast();
        let w = ast.invertible_space.basis_matrix();
        let u = ast.nilpotent_space.basis_matrix();
        let basis = w.hstack(u);
        let images = (&self.block * w).hstack(&Matrix::zero(
            self.window(),
            ast.nilpotent_space.dim(),
            self.field(),
        ));
        let core_block = Matrix::from_action(&basis, &images);
        let nilpotent_block = &self.block - &core_block;
        CnDecomposition {
            core_part: self.with_block(core_block),
            nilpotent_part: self.with_block(nilpotent_block),
        }
    }

    /// The adjoint for the standard inner product: the conjugate-transposed
    /// block on the same window (tail vectors map to zero on both sides).
    pub fn adjoint(&self) -> FinitePotentOperator {
        self.with_block(self.block.conj_transpose())
    }

    fn spaces(&self) -> &Spaces {
        self.spaces.get_or_init(|| {
            let image = self.block.image_basis();
            let kernel = self.block.kernel_basis();
            Spaces {
                image_perp: image.orth_complement(),
                kernel_perp: kernel.orth_complement(),
                image,
                kernel,
            }
        })
    }

    /// Image within the support window (all images lie there).
    pub fn image(&self) -> SubspaceBasis {
        self.spaces().image.clone()
    }

    /// Kernel within the support window. For a countable ambient the full
    /// kernel additionally contains the whole tail.
    pub fn kernel(&self) -> SubspaceBasis {
        self.spaces().kernel.clone()
    }

    /// Orthogonal complement of the image within the support window.
    pub fn image_perp(&self) -> SubspaceBasis {
        self.spaces().image_perp.clone()
    }

    /// Orthogonal complement of the window kernel.
    pub fn kernel_perp(&self) -> SubspaceBasis {
        self.spaces().kernel_perp.clone()
    }

    /// Composition self ∘ other (apply `other` first).
    pub fn compose(&self, other: &FinitePotentOperator) -> FinitePotentOperator {
        assert!(self.same_ambient(other), "composition across ambients");
        self.with_block(&self.block * &other.block)
    }

    pub fn add(&self, other: &FinitePotentOperator) -> FinitePotentOperator {
        assert!(self.same_ambient(other), "sum across ambients");
        self.with_block(&self.block + &other.block)
    }

    pub fn sub(&self, other: &FinitePotentOperator) -> FinitePotentOperator {
        assert!(self.same_ambient(other), "difference across ambients");
        self.with_block(&self.block - &other.block)
    }

    pub fn pow(&self, n: usize) -> FinitePotentOperator {
        self.with_block(self.block.pow(n).expect("block is square"))
    }
}

impl fmt::Debug for FinitePotentOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "operator on {}\n{}", self.ambient, self.block)
    }
}

#[derive(Clone, Debug)]
pub struct AstDecomposition {
    pub index: usize,
    /// Basis of the finite-dimensional part where the operator is invertible.
    pub invertible_space: SubspaceBasis,
    /// Window part of the subspace where the operator is nilpotent.
    pub nilpotent_space: SubspaceBasis,
    /// For a countable ambient the tail also belongs to the nilpotent part.
    pub tail_in_nilpotent_space: bool,
}

#[derive(Clone, Debug)]
pub struct CnDecomposition {
    /// φ₁: agrees with φ on the invertible part, zero on the nilpotent part.
    pub core_part: FinitePotentOperator,
    /// φ₂ = φ - φ₁: zero on the invertible part, agrees with φ on the rest.
    pub nilpotent_part: FinitePotentOperator,
}
