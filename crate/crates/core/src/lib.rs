//! Exact-arithmetic generalized inverses of finite potent linear operators,
//! together with the order relations they induce.
//!
//! The library computes, over ℚ or ℚ(i): the index of an operator, its
//! AST and core-nilpotent decompositions, the Drazin, group, Moore-Penrose
//! and core inverses, and decides the space pre-order, the core partial
//! order and the general core pre-order. Everything in the core is exact;
//! floating point appears only in the emitted reports of the probe module.

pub mod matrix;
pub mod scalar;

pub use matrix::{dot, Matrix, MatrixError, SubspaceBasis};
pub use scalar::{Field, Scalar, ScalarError};

pub mod operator;
pub use operator::{Ambient, AstDecomposition, CnDecomposition, FinitePotentOperator, OperatorError};

#[cfg(test)]
pub(crate) mod testutil;

pub mod inverse;
pub use inverse::{
    check_inverse_class, core_dagger, core_inverse, core_of_mp, drazin, group_inverse, is_ep,
    moore_penrose, ClassReport, InverseClass, InverseError, InverseKind,
};

pub mod order;
pub mod sample;
pub use order::{
    core_leq, gamma, general_core_leq, generate_above, hasse, space_leq, verify_order_axioms,
    AxiomReport, OrderError, OrderRelation, OrderReport,
};

pub mod probe;
pub use probe::{preimage_growth, truncated_weighted_shift, TruncationReport};

pub mod verify;
pub use verify::{
    chain_checks, counterexample_pair, operator_checks, pair_checks, run_random_suite,
    CheckOutcome, IdentityStat, SuiteConfig, SuiteReport,
};

pub mod cli;
pub mod fixture;
pub use fixture::{parse_operator, render_operator, FixtureError};
