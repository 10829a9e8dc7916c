//! Order relations between finite potent operators: the space pre-order,
//! the core partial order, and the general core pre-order obtained by
//! comparing core parts.
//!
//! Every order query returns the per-condition witnesses alongside the
//! verdict. The core order is evaluated through three equivalent
//! characterizations at once — the defining composition equalities, the
//! restriction form (agree on the image, kernel mapped into the image's
//! orthogonal complement), and the composition-free form — which turns each
//! evaluation into a consistency check of the theory.

use crate::inverse::{core_inverse, moore_penrose};
use crate::matrix::Matrix;
use crate::operator::FinitePotentOperator;
use crate::sample::random_vector_in_span;
use rand::Rng;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("operators live on different ambient spaces (dimension, support, or ground field)")]
    AmbientMismatch,
    #[error("the core order requires index at most one; operand `{which}` has index {index}")]
    IndexTooLarge { which: String, index: usize },
    #[error("no comparable operator of index at most one found in {0} attempts")]
    GenerationFailed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderRelation {
    Space,
    Core,
    GeneralCore,
}

impl fmt::Display for OrderRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderRelation::Space => write!(f, "space"),
            OrderRelation::Core => write!(f, "core"),
            OrderRelation::GeneralCore => write!(f, "general-core"),
        }
    }
}

/// Outcome of one order query: the verdict is the conjunction of the
/// recorded witnesses.
#[derive(Clone, Debug)]
pub struct OrderReport {
    pub relation: OrderRelation,
    pub verdict: bool,
    pub witnesses: Vec<(String, bool)>,
}

impl OrderReport {
    fn from_witnesses(relation: OrderRelation, witnesses: Vec<(String, bool)>) -> OrderReport {
        OrderReport {
            relation,
            verdict: witnesses.iter().all(|(_, held)| *held),
            witnesses,
        }
    }
}

fn require_same_ambient(
    phi: &FinitePotentOperator,
    psi: &FinitePotentOperator,
) -> Result<(), OrderError> {
    if phi.same_ambient(psi) && phi.field() == psi.field() {
        Ok(())
    } else {
        Err(OrderError::AmbientMismatch)
    }
}

fn require_low_index(op: &FinitePotentOperator, which: &str) -> Result<(), OrderError> {
    let index = op.index();
    if index > 1 {
        return Err(OrderError::IndexTooLarge {
            which: which.to_string(),
            index,
        });
    }
    Ok(())
}

/// Space pre-order: Im(φ) ⊆ Im(ψ) and Ker(ψ) ⊆ Ker(φ).
pub fn space_leq(
    phi: &FinitePotentOperator,
    psi: &FinitePotentOperator,
) -> Result<OrderReport, OrderError> {
    require_same_ambient(phi, psi)?;
    let witnesses = vec![
        (
            "Im(phi) included in Im(psi)".to_string(),
            psi.image().contains(&phi.image()),
        ),
        (
            "Ker(psi) included in Ker(phi)".to_string(),
            phi.kernel().contains(&psi.kernel()),
        ),
    ];
    Ok(OrderReport::from_witnesses(OrderRelation::Space, witnesses))
}

/// Core partial order on index ≤ 1 operators: φ∘φ^⊛ = ψ∘φ^⊛ and
/// φ^⊛∘φ = φ^⊛∘ψ. The report also carries the two equivalent
/// condition pairs; the equivalences are checked in debug builds.
pub fn core_leq(
    phi: &FinitePotentOperator,
    psi: &FinitePotentOperator,
) -> Result<OrderReport, OrderError> {
    require_same_ambient(phi, psi)?;
    require_low_index(phi, "left")?;
    require_low_index(psi, "right")?;

    let core = core_inverse(phi).expect("index verified");
    let defining_right = phi.compose(&core) == psi.compose(&core);
    let defining_left = core.compose(phi) == core.compose(psi);

    let image = phi.image();
    let agree_on_image =
        &(phi.block() - psi.block()) * image.basis_matrix() == zero_like(phi, image.dim());
    let kernel_into_perp = phi
        .image_perp()
        .contains(&phi.kernel().image_under(psi.block()));

    let square_condition = phi.pow(2) == psi.compose(phi);
    let mp = moore_penrose(phi);
    let mp_condition = mp.compose(phi) == mp.compose(psi);

    // The three characterizations are equivalent pairwise; the first
    // defining equality is furthermore equivalent to each first component.
    debug_assert_eq!(defining_right, agree_on_image);
    debug_assert_eq!(defining_right, square_condition);
    debug_assert_eq!(defining_left, mp_condition);
    debug_assert_eq!(
        defining_right && defining_left,
        agree_on_image && kernel_into_perp
    );

    let witnesses = vec![
        ("phi∘core(phi) = psi∘core(phi)".to_string(), defining_right),
        ("core(phi)∘phi = core(phi)∘psi".to_string(), defining_left),
        ("phi = psi on Im(phi)".to_string(), agree_on_image),
        (
            "psi maps Ker(phi) into the orthogonal complement of Im(phi)".to_string(),
            kernel_into_perp,
        ),
        ("phi² = psi∘phi".to_string(), square_condition),
        ("mp(phi)∘phi = mp(phi)∘psi".to_string(), mp_condition),
    ];
    Ok(OrderReport::from_witnesses(OrderRelation::Core, witnesses))
}

fn zero_like(op: &FinitePotentOperator, cols: usize) -> Matrix {
    Matrix::zero(op.window(), cols, op.field())
}

/// The idempotent map sending an operator to the core part of its
/// core-nilpotent decomposition; the identity on index ≤ 1 operators.
pub fn gamma(phi: &FinitePotentOperator) -> FinitePotentOperator {
    phi.cn().core_part
}

/// General core pre-order on operators of arbitrary index: core order of
/// the core parts. Reflexive and transitive but not antisymmetric.
pub fn general_core_leq(
    phi: &FinitePotentOperator,
    psi: &FinitePotentOperator,
) -> Result<OrderReport, OrderError> {
    require_same_ambient(phi, psi)?;
    let inner = core_leq(&gamma(phi), &gamma(psi))?;
    let witnesses = inner
        .witnesses
        .into_iter()
        .map(|(name, held)| (format!("on core parts: {}", name), held))
        .collect();
    Ok(OrderReport::from_witnesses(
        OrderRelation::GeneralCore,
        witnesses,
    ))
}

pub fn evaluate(
    relation: OrderRelation,
    phi: &FinitePotentOperator,
    psi: &FinitePotentOperator,
) -> Result<OrderReport, OrderError> {
    match relation {
        OrderRelation::Space => space_leq(phi, psi),
        OrderRelation::Core => core_leq(phi, psi),
        OrderRelation::GeneralCore => general_core_leq(phi, psi),
    }
}

const GENERATION_ATTEMPTS: usize = 64;

/// A random ψ with φ ≤ ψ under the core order: ψ keeps the action of φ on
/// Im(φ) and sends Ker(φ) into [Im(φ)]^⊥, resampling until the index stays
/// at most one. ψ = φ is an allowed degenerate outcome.
pub fn generate_above(
    phi: &FinitePotentOperator,
    rng: &mut impl Rng,
) -> Result<FinitePotentOperator, OrderError> {
    require_low_index(phi, "base")?;
    let image = phi.image();
    let kernel = phi.kernel();
    let perp = phi.image_perp();
    let basis = image.basis_matrix().hstack(kernel.basis_matrix());
    let image_action = phi.block() * image.basis_matrix();
    for _ in 0..GENERATION_ATTEMPTS {
        let kernel_action = Matrix::from_fn(phi.window(), kernel.dim(), phi.field(), |_, _| {
            crate::scalar::Scalar::zero(phi.field())
        });
        let mut kernel_action = kernel_action;
        for j in 0..kernel.dim() {
            let target = random_vector_in_span(rng, &perp);
            for i in 0..phi.window() {
                kernel_action.set(i, j, target[i].clone());
            }
        }
        let block = Matrix::from_action(&basis, &image_action.hstack(&kernel_action));
        let candidate = phi.with_block(block);
        if candidate.index() <= 1 {
            return Ok(candidate);
        }
    }
    Err(OrderError::GenerationFailed(GENERATION_ATTEMPTS))
}

/// Axiom verification over a finite sample. Failures are reported, not
/// thrown; errors only signal precondition violations.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub relation: OrderRelation,
    pub reflexive: bool,
    pub reflexivity_failures: Vec<usize>,
    pub comparable_pairs: Vec<(usize, usize)>,
    pub antisymmetric: bool,
    pub antisymmetry_witnesses: Vec<(usize, usize)>,
    pub transitive: bool,
    pub transitivity_failures: Vec<usize>,
    pub chains_checked: usize,
}

pub fn verify_order_axioms(
    relation: OrderRelation,
    sample: &[FinitePotentOperator],
    chains: &[(
        FinitePotentOperator,
        FinitePotentOperator,
        FinitePotentOperator,
    )],
) -> Result<AxiomReport, OrderError> {
    let leq = |a: &FinitePotentOperator, b: &FinitePotentOperator| -> Result<bool, OrderError> {
        Ok(evaluate(relation, a, b)?.verdict)
    };

    let mut reflexivity_failures = Vec::new();
    for (i, op) in sample.iter().enumerate() {
        if !leq(op, op)? {
            reflexivity_failures.push(i);
        }
    }

    let mut comparable_pairs = Vec::new();
    for i in 0..sample.len() {
        for j in 0..sample.len() {
            if i != j && leq(&sample[i], &sample[j])? {
                comparable_pairs.push((i, j));
            }
        }
    }
    let mut antisymmetry_witnesses = Vec::new();
    for &(i, j) in &comparable_pairs {
        if i < j && comparable_pairs.contains(&(j, i)) && sample[i] != sample[j] {
            antisymmetry_witnesses.push((i, j));
        }
    }

    let mut transitivity_failures = Vec::new();
    for (k, (a, b, c)) in chains.iter().enumerate() {
        if !(leq(a, b)? && leq(b, c)?) || !leq(a, c)? {
            transitivity_failures.push(k);
        }
    }

    Ok(AxiomReport {
        relation,
        reflexive: reflexivity_failures.is_empty(),
        reflexivity_failures,
        antisymmetric: antisymmetry_witnesses.is_empty(),
        antisymmetry_witnesses,
        comparable_pairs,
        transitive: transitivity_failures.is_empty(),
        transitivity_failures,
        chains_checked: chains.len(),
    })
}

/// DOT digraph of the covering relation of `relation` on the named
/// operators. Nodes are declared in input order; pairs that are comparable
/// both ways without being equal (possible for the pre-orders) carry no
/// edge and are flagged in a comment.
pub fn hasse(
    named: &[(String, FinitePotentOperator)],
    relation: OrderRelation,
) -> Result<String, OrderError> {
    if relation == OrderRelation::Core {
        for (name, op) in named {
            require_low_index(op, name)?;
        }
    }
    let n = named.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = evaluate(relation, &named[i].1, &named[j].1)?.verdict;
        }
    }
    let strict = |i: usize, j: usize| leq[i][j] && !leq[j][i];

    let mut out = String::from("digraph hasse {\n");
    for (name, _) in named {
        out.push_str(&format!("  \"{}\";\n", escape(name)));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if leq[i][j] && leq[j][i] && named[i].1 != named[j].1 {
                out.push_str(&format!(
                    "  // equivalent but distinct: \"{}\" <=> \"{}\"\n",
                    escape(&named[i].0),
                    escape(&named[j].0)
                ));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let covers = strict(i, j) && !(0..n).any(|k| strict(i, k) && strict(k, j));
            if covers {
                out.push_str(&format!(
                    "  \"{}\" -> \"{}\";\n",
                    escape(&named[i].0),
                    escape(&named[j].0)
                ));
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

fn escape(name: &str) -> String {
    name.replace('"', "\\\"")
}
