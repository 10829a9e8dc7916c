//! Generalized inverses: Drazin, group, Moore-Penrose, and core, together
//! with the predicates that verify the defining axiom systems.
//!
//! Every inverse is built geometrically — invert the operator on the
//! subspace where it is invertible, kill a complement — by solving for the
//! action on an adapted basis. The algebraic characterizations (for the
//! core inverse, group ∘ φ ∘ Moore-Penrose) are recomputed and asserted on
//! every call, so each construction cross-checks the other.

use crate::matrix::Matrix;
use crate::operator::FinitePotentOperator;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InverseError {
    #[error("group inverse exists iff the index is at most one; this operator has index {index}")]
    NoGroupInverse { index: usize },
    #[error("core inverse exists iff the index is at most one; this operator has index {index}")]
    NoCoreInverse { index: usize },
}

/// The generalized inverses this library computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverseKind {
    Drazin,
    Group,
    MoorePenrose,
    Core,
    /// Moore-Penrose of the core inverse, which is also its core inverse.
    CoreDagger,
    /// Core inverse of the Moore-Penrose inverse.
    CoreOfMp,
}

/// Axiom systems recognized by [`check_inverse_class`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverseClass {
    One,
    Two,
    OneTwo,
    Penrose4,
    Drazin3,
    Group3,
    Core3,
}

/// Per-equation verdicts for one axiom system.
#[derive(Clone, Debug)]
pub struct ClassReport {
    pub class: InverseClass,
    pub conditions: Vec<(&'static str, bool)>,
}

impl ClassReport {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|(_, held)| *held)
    }
}

/// The Drazin inverse: inverts φ on the invertible part of the AST
/// splitting and kills the nilpotent part. Always exists.
pub fn drazin(op: &FinitePotentOperator) -> FinitePotentOperator {
    let ast = op.ast();
    let w = ast.invertible_space.basis_matrix();
    let u = ast.nilpotent_space.basis_matrix();
    if ast.invertible_space.is_trivial() {
        return op.zero_like();
    }
    // Matrix of φ restricted to W in the basis w, then its inverse.
    let restricted = w
        .solve_matrix(&(op.block() * w))
        .expect("W is invariant under the operator");
    let restricted_inv = restricted
        .inverse()
        .expect("the operator is invertible on W");
    let images = (w * &restricted_inv).hstack(&Matrix::zero(
        op.window(),
        ast.nilpotent_space.dim(),
        op.field(),
    ));
    op.with_block(Matrix::from_action(&w.hstack(u), &images))
}

/// The group inverse: the commuting reflexive generalized inverse. Exists
/// iff the index is at most one, and then coincides with the Drazin inverse.
pub fn group_inverse(op: &FinitePotentOperator) -> Result<FinitePotentOperator, InverseError> {
    let index = op.index();
    if index > 1 {
        return Err(InverseError::NoGroupInverse { index });
    }
    Ok(drazin(op))
}

/// The Moore-Penrose inverse: inverts φ from [Ker φ]^⊥ onto Im φ and kills
/// [Im φ]^⊥. Every operator in this model is admissible (images are
/// finite-dimensional, hence closed), so it always exists.
pub fn moore_penrose(op: &FinitePotentOperator) -> FinitePotentOperator {
    let image = op.image();
    let ker_perp = op.kernel_perp();
    let im_perp = op.image_perp();
    // φ maps [Ker φ]^⊥ bijectively onto Im φ; pull each image basis vector
    // back through that restriction.
    let through = op.block() * ker_perp.basis_matrix();
    let coords = through
        .solve_matrix(image.basis_matrix())
        .expect("the image basis lies in φ([Ker φ]^⊥)");
    let preimages = ker_perp.basis_matrix() * &coords;
    let basis = image.basis_matrix().hstack(im_perp.basis_matrix());
    let images = preimages.hstack(&Matrix::zero(op.window(), im_perp.dim(), op.field()));
    op.with_block(Matrix::from_action(&basis, &images))
}

/// The core inverse: inverts φ on Im φ and kills [Im φ]^⊥. Exists iff the
/// index is at most one. The geometric construction is primary; the
/// algebraic form φ^# ∘ φ ∘ φ† is recomputed and asserted as a cross-check.
pub fn core_inverse(op: &FinitePotentOperator) -> Result<FinitePotentOperator, InverseError> {
    let index = op.index();
    if index > 1 {
        return Err(InverseError::NoCoreInverse { index });
    }
    let image = op.image();
    let im_perp = op.image_perp();
    let through = op.block() * image.basis_matrix();
    let coords = through
        .solve_matrix(image.basis_matrix())
        .expect("φ restricted to its image is invertible when the index is at most one");
    let preimages = image.basis_matrix() * &coords;
    let basis = image.basis_matrix().hstack(im_perp.basis_matrix());
    let images = preimages.hstack(&Matrix::zero(op.window(), im_perp.dim(), op.field()));
    let geometric = op.with_block(Matrix::from_action(&basis, &images));

    let algebraic = group_inverse(op)?.compose(op).compose(&moore_penrose(op));
    assert_eq!(
        geometric, algebraic,
        "geometric and algebraic core inverse constructions disagree"
    );
    Ok(geometric)
}

/// φ ∘ P_{Im φ}, which equals both the Moore-Penrose inverse and the core
/// inverse of the core inverse; both equalities are asserted.
pub fn core_dagger(op: &FinitePotentOperator) -> Result<FinitePotentOperator, InverseError> {
    let core = core_inverse(op)?;
    let projector = op.image().orth_projector();
    let result = op.with_block(op.block() * &projector);
    assert_eq!(
        result,
        moore_penrose(&core),
        "φ ∘ P_Im must equal the Moore-Penrose inverse of the core inverse"
    );
    assert_eq!(
        result,
        core_inverse(&core).expect("the core inverse has index at most one"),
        "φ ∘ P_Im must equal the core inverse of the core inverse"
    );
    Ok(result)
}

/// Core inverse of the Moore-Penrose inverse; requires index at most one
/// (then the Moore-Penrose inverse has index at most one as well).
/// Asserted equal to (φ†)^# ∘ P_{Im φ†}.
pub fn core_of_mp(op: &FinitePotentOperator) -> Result<FinitePotentOperator, InverseError> {
    let index = op.index();
    if index > 1 {
        return Err(InverseError::NoCoreInverse { index });
    }
    let mp = moore_penrose(op);
    let result = core_inverse(&mp)?;
    let via_group = group_inverse(&mp)?.with_block(
        group_inverse(&mp)?.block() * &mp.image().orth_projector(),
    );
    assert_eq!(
        result, via_group,
        "core inverse of φ† must equal (φ†)^# ∘ P_Im(φ†)"
    );
    Ok(result)
}

/// EP: the operator and its adjoint have the same image.
pub fn is_ep(op: &FinitePotentOperator) -> bool {
    op.image().same_span(&op.adjoint().image())
}

/// Evaluates each defining equation of the requested axiom system by exact
/// matrix equality.
pub fn check_inverse_class(
    a: &FinitePotentOperator,
    x: &FinitePotentOperator,
    class: InverseClass,
) -> ClassReport {
    assert!(a.same_ambient(x), "operands live on different ambients");
    let one = || ("axa = a", a.compose(x).compose(a) == *a);
    let two = || ("xax = x", x.compose(a).compose(x) == *x);
    let commute = || ("ax = xa", a.compose(x) == x.compose(a));
    let ax_self_adjoint = || {
        let ax = a.compose(x);
        ("(ax)* = ax", ax.adjoint() == ax)
    };
    let xa_self_adjoint = || {
        let xa = x.compose(a);
        ("(xa)* = xa", xa.adjoint() == xa)
    };
    let conditions = match class {
        InverseClass::One => vec![one()],
        InverseClass::Two => vec![two()],
        InverseClass::OneTwo => vec![one(), two()],
        InverseClass::Penrose4 => vec![one(), two(), ax_self_adjoint(), xa_self_adjoint()],
        InverseClass::Drazin3 => {
            let i = a.index();
            let power_condition = (
                "a^(i+1) x = a^i",
                a.pow(i + 1).compose(x) == a.pow(i),
            );
            vec![power_condition, two(), commute()]
        }
        InverseClass::Group3 => vec![one(), two(), commute()],
        InverseClass::Core3 => {
            let absorbs = ("ax² = x", a.compose(x).compose(x) == *x);
            vec![one(), absorbs, ax_self_adjoint()]
        }
    };
    ClassReport { class, conditions }
}
