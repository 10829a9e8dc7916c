//! The verification catalog: every identity the constructions are expected
//! to satisfy, evaluated by exact equality, one pass/fail line per identity.
//!
//! Three granularities: [`operator_checks`] runs the single-operator
//! identities (gated on the index where existence demands it),
//! [`pair_checks`] runs the order-relation agreements on a pair, and
//! [`chain_checks`] the transitivity-dependent ones on a generated chain.
//! [`run_random_suite`] samples all strata — singular index-one operators,
//! EP and idempotent and tripotent witnesses, higher-index operators with
//! known core-nilpotent parts, countable-support variants, both ground
//! fields — and tallies the catalog across them.

use crate::inverse::{
    check_inverse_class, core_inverse, drazin, group_inverse, is_ep, moore_penrose, InverseClass,
};
use crate::matrix::Matrix;
use crate::operator::FinitePotentOperator;
use crate::order::{core_leq, gamma, general_core_leq, generate_above, space_leq, verify_order_axioms, OrderRelation};
use crate::sample;
use crate::scalar::Field;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

fn check(name: &'static str, passed: bool) -> CheckOutcome {
    CheckOutcome {
        name,
        passed,
        detail: None,
    }
}

fn check_on(name: &'static str, passed: bool, subject: &FinitePotentOperator) -> CheckOutcome {
    CheckOutcome {
        name,
        passed,
        detail: if passed {
            None
        } else {
            Some(format!("failed on {:?}", subject))
        },
    }
}

/// Single-operator identity catalog. Identities that exist only below
/// index two are replaced by the matching non-existence checks above it.
pub fn operator_checks(
    op: &FinitePotentOperator,
    rng: &mut impl Rng,
) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let index = op.index();
    let adj = op.adjoint();
    let mp = moore_penrose(op);
    let mp_adj = moore_penrose(&adj);
    let mp_of_mp = moore_penrose(&mp);

    // Drazin inverse exists unconditionally.
    let d = drazin(op);
    out.push(check_on(
        "drazin-axioms",
        check_inverse_class(op, &d, InverseClass::Drazin3).all_hold(),
        op,
    ));

    // Core-nilpotent decomposition.
    let cn = op.cn();
    let phi1 = &cn.core_part;
    let phi2 = &cn.nilpotent_part;
    out.push(check_on("cn-sum", &phi1.add(phi2) == op, op));
    out.push(check_on(
        "cn-products-vanish",
        phi1.compose(phi2).is_zero() && phi2.compose(phi1).is_zero(),
        op,
    ));
    out.push(check_on("cn-core-index", phi1.index() <= 1, op));
    let order_ok = if index <= 1 {
        phi2.is_zero()
    } else {
        phi2.pow(index).is_zero() && !phi2.pow(index - 1).is_zero()
    };
    out.push(check_on("cn-nilpotent-order", order_ok, op));

    // AST splitting.
    let ast = op.ast();
    let w = &ast.invertible_space;
    let u = &ast.nilpotent_space;
    let ast_ok = w.dim() + u.dim() == op.window()
        && w.intersection(u).is_trivial()
        && w.image_under(op.block()).same_span(w)
        && u.contains(&u.image_under(op.block()));
    out.push(check_on("ast-invariant-splitting", ast_ok, op));

    // Index ≤ 1 ⟺ U = Ker ⟺ W = Im, as a three-way agreement.
    let low = index <= 1;
    out.push(check_on(
        "index-one-three-way-equivalence",
        low == u.same_span(&op.kernel()) && low == w.same_span(&op.image()),
        op,
    ));

    // Γ is idempotent and restricts to the identity below index two.
    let g = gamma(op);
    out.push(check_on(
        "gamma-idempotent",
        gamma(&g) == g && (index > 1 || g == *op),
        op,
    ));

    // Moore-Penrose: defining conditions, involution, projector identities.
    out.push(check_on(
        "mp-penrose-conditions",
        check_inverse_class(op, &mp, InverseClass::Penrose4).all_hold(),
        op,
    ));
    out.push(check_on("mp-involution", mp_of_mp == *op, op));
    let proj_ok = mp.compose(op).block() == &op.kernel_perp().orth_projector()
        && op.compose(&mp).block() == &op.image().orth_projector();
    out.push(check_on("mp-projectors", proj_ok, op));
    out.push(check_on("mp-of-adjoint", mp_adj == mp.adjoint(), op));
    let absorption = adj.compose(op).compose(&mp) == adj
        && mp.compose(op).compose(&adj) == adj
        && mp_adj.compose(&adj).compose(op) == *op
        && op.compose(&adj).compose(&mp_adj) == *op;
    out.push(check_on("mp-adjoint-absorption", absorption, op));

    if index > 1 {
        out.push(check_on(
            "group-absent-above-index-one",
            group_inverse(op).is_err(),
            op,
        ));
        out.push(check_on(
            "core-absent-above-index-one",
            core_inverse(op).is_err(),
            op,
        ));
        return out;
    }

    // Everything below requires index ≤ 1. Derived operators are computed
    // once and shared across the identities that mention them.
    let op2 = op.pow(2);
    let op3 = op.pow(3);
    let image_projector = op.image().orth_projector();

    let group = group_inverse(op).expect("index at most one");
    out.push(check_on(
        "group-axioms",
        check_inverse_class(op, &group, InverseClass::Group3).all_hold(),
        op,
    ));
    out.push(check_on(
        "group-involution",
        group_inverse(&group).as_ref() == Ok(op),
        op,
    ));
    let group_powers = group_inverse(&op2).as_ref() == Ok(&group.pow(2))
        && group_inverse(&op3).as_ref() == Ok(&group.pow(3));
    out.push(check_on("group-powers", group_powers, op));
    out.push(check_on("mp-preserves-low-index", mp.index() <= 1, op));

    let core = core_inverse(op).expect("index at most one");
    out.push(check_on(
        "core-geometric-equals-algebraic",
        core == group.compose(op).compose(&mp),
        op,
    ));
    let defining = op.compose(&core).block() == &image_projector
        && op.image().contains(&core.image());
    out.push(check_on("core-defining-conditions", defining, op));
    out.push(check_on(
        "core-three-axioms",
        check_inverse_class(op, &core, InverseClass::Core3).all_hold(),
        op,
    ));
    // Uniqueness: any distinct candidate violates some axiom.
    out.push(uniqueness_probe(op, &core, rng));
    out.push(check_on("core-low-index", core.index() <= 1, op));
    let image_kernel = core.image().same_span(&op.image())
        && core.kernel().same_span(&op.image_perp());
    out.push(check_on("core-image-and-kernel", image_kernel, op));
    let power_absorption = (2..=4).all(|n| op.pow(n - 1).compose(&core.pow(n)) == core);
    out.push(check_on("core-power-absorption", power_absorption, op));

    let core_of_core = core_inverse(&core).expect("core inverse has index at most one");
    let mp_of_core = moore_penrose(&core);
    let phi_proj = op.with_block(op.block() * &image_projector);
    out.push(check_on(
        "core-of-core",
        core_of_core == mp_of_core && mp_of_core == phi_proj,
        op,
    ));
    out.push(check_on(
        "core-inverse-is-ep",
        is_ep(&core) && is_ep(&mp_of_core),
        op,
    ));
    let dagger_group_drazin =
        mp_of_core == group_inverse(&core).expect("index at most one") && mp_of_core == drazin(&core);
    out.push(check_on("core-dagger-group-drazin", dagger_group_drazin, op));

    let reflexive = check_inverse_class(op, &core, InverseClass::OneTwo).all_hold()
        && core.pow(2).compose(op) == group
        && core_inverse(&op2).as_ref() == Ok(&core.pow(2))
        && core_inverse(&op3).as_ref() == Ok(&core.pow(3))
        && core.compose(op) == group.compose(op);
    out.push(check_on("core-reflexive-and-group-related", reflexive, op));

    let ep = is_ep(op);
    out.push(check_on(
        "core-group-mp-coincide-iff-ep",
        (core == group) == ep && (core == mp) == ep,
        op,
    ));
    out.push(check_on(
        "core-zero-iff-zero",
        core.is_zero() == op.is_zero(),
        op,
    ));
    let idempotent = op2 == *op;
    let core_is_projector = core.block() == &image_projector;
    out.push(check_on(
        "core-of-idempotent-is-projector",
        idempotent == core_is_projector,
        op,
    ));
    let tripotent_ep = op3 == *op && ep;
    out.push(check_on(
        "core-fixed-point-iff-tripotent-ep",
        (core == *op) == tripotent_ep,
        op,
    ));

    let core_of_mp_result = core_inverse(&mp).expect("Moore-Penrose keeps index at most one");
    let via_group = {
        let g = group_inverse(&mp).expect("Moore-Penrose keeps index at most one");
        mp.with_block(g.block() * &mp.image().orth_projector())
    };
    out.push(check_on(
        "core-of-mp-formula",
        core_of_mp_result == via_group,
        op,
    ));

    let isometric = op.compose(&adj).compose(op) == *op && ep;
    out.push(check_on(
        "core-equals-adjoint-iff-partial-isometry-ep",
        (core == adj) == isometric,
        op,
    ));

    // Five-way EP equivalence.
    let conditions = [
        ep,
        core_of_core == *op,
        core.compose(op) == op.compose(&core),
        core_of_mp_result == *op,
        mp_of_core == mp_of_mp,
    ];
    out.push(check_on(
        "ep-five-way-equivalence",
        conditions.iter().all(|&c| c == conditions[0]),
        op,
    ));

    out
}

/// Any operator other than the core inverse must break one of its three
/// defining axioms; probe with a random same-shape perturbation.
fn uniqueness_probe(
    op: &FinitePotentOperator,
    core: &FinitePotentOperator,
    rng: &mut impl Rng,
) -> CheckOutcome {
    let mut perturbation = sample::random_matrix(rng, op.window(), op.window(), op.field());
    if perturbation.is_zero() {
        // Ensure the candidate actually differs.
        perturbation = Matrix::identity(op.window().max(1), op.field());
    }
    let candidate = core.with_block(core.block() + &perturbation);
    let report = check_inverse_class(op, &candidate, InverseClass::Core3);
    check_on("core-uniqueness-probe", !report.all_hold(), op)
}

/// Order-relation agreements on a pair of index ≤ 1 operators on the same
/// ambient space.
pub fn pair_checks(
    phi: &FinitePotentOperator,
    psi: &FinitePotentOperator,
) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let report = core_leq(phi, psi).expect("pair checks need comparable preconditions");
    let held: Vec<bool> = report.witnesses.iter().map(|(_, h)| *h).collect();
    let (def1, def2, restrict, kernel_map, square, mp_cond) =
        (held[0], held[1], held[2], held[3], held[4], held[5]);

    // Three characterizations agree as pairs, and componentwise where the
    // equivalence holds condition by condition.
    let agreement = (def1 && def2) == (restrict && kernel_map)
        && (def1 && def2) == (square && mp_cond)
        && def1 == restrict
        && def1 == square
        && def2 == mp_cond;
    out.push(check("order-characterizations-agree", agreement));

    // The general core order evaluated on these operators coincides with
    // the core order, both having index ≤ 1.
    let general = general_core_leq(phi, psi).expect("same ambient");
    out.push(check(
        "general-core-matches-core-below-index-two",
        general.verdict == report.verdict,
    ));

    if report.verdict {
        // Below-ness implies the space pre-order.
        let space = space_leq(phi, psi).expect("same ambient");
        out.push(check("core-order-implies-space-preorder", space.verdict));

        // Ker(φ) = Ker(ψ) ⊕ (Im(ψ) ∩ Ker(φ)).
        let ker_phi = phi.kernel();
        let ker_psi = psi.kernel();
        let meet = psi.image().intersection(&ker_phi);
        let splits = ker_phi.contains(&ker_psi)
            && ker_psi.intersection(&meet).is_trivial()
            && ker_psi.sum(&meet).same_span(&ker_phi)
            && ker_psi.dim() + meet.dim() == ker_phi.dim();
        out.push(check("order-kernel-splits", splits));

        // EP base: the larger operator preserves the AST parts of the
        // smaller one.
        if is_ep(phi) {
            let w = phi.image();
            let u = phi.kernel();
            let invariant = w.contains(&w.image_under(psi.block()))
                && u.contains(&u.image_under(psi.block()));
            out.push(check("order-ep-base-keeps-ast-invariant", invariant));
        }
    }
    out
}

/// Identities along a generated chain φ ≤ ψ ≤ χ.
pub fn chain_checks(
    phi: &FinitePotentOperator,
    psi: &FinitePotentOperator,
    chi: &FinitePotentOperator,
) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let lower = core_leq(phi, psi).expect("chain built comparable").verdict;
    let upper = core_leq(psi, chi).expect("chain built comparable").verdict;
    let through = core_leq(phi, chi).expect("same ambient").verdict;
    out.push(check("order-transitive-on-chains", !(lower && upper) || through));

    // Ends of a chain agree on the image of the bottom operator.
    let image = phi.image();
    let agree =
        &(phi.block() - chi.block()) * image.basis_matrix()
            == Matrix::zero(phi.window(), image.dim(), phi.field());
    out.push(check("order-chain-ends-agree-on-image", !(lower && upper) || agree));
    out
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub count: usize,
    pub dim: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 42,
            count: 200,
            dim: 5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdentityStat {
    pub name: &'static str,
    pub samples: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub identities: Vec<IdentityStat>,
}

impl SuiteReport {
    fn new(config: SuiteConfig) -> SuiteReport {
        SuiteReport {
            config,
            identities: Vec::new(),
        }
    }

    pub fn record(&mut self, outcome: CheckOutcome) {
        let stat = match self
            .identities
            .iter_mut()
            .find(|s| s.name == outcome.name)
        {
            Some(stat) => stat,
            None => {
                self.identities.push(IdentityStat {
                    name: outcome.name,
                    samples: 0,
                    failures: 0,
                    first_failure: None,
                });
                self.identities.last_mut().unwrap()
            }
        };
        stat.samples += 1;
        if !outcome.passed {
            stat.failures += 1;
            if stat.first_failure.is_none() {
                stat.first_failure = outcome.detail;
            }
        }
    }

    pub fn record_all(&mut self, outcomes: Vec<CheckOutcome>) {
        for outcome in outcomes {
            self.record(outcome);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.identities.iter().all(|s| s.failures == 0)
    }
}

/// Runs the whole catalog over randomly generated strata. Deterministic
/// for a fixed configuration.
pub fn run_random_suite(config: SuiteConfig) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = SuiteReport::new(config);
    let dim = config.dim.max(2);

    // Fixed anchors first: the zero and identity operators and the
    // standard antisymmetry counterexample pair.
    let field = Field::Real;
    let mut anchors = vec![
        FinitePotentOperator::new(Matrix::zero(dim, dim, field), crate::operator::Ambient::Finite(dim)).unwrap(),
        FinitePotentOperator::new(Matrix::identity(dim, field), crate::operator::Ambient::Finite(dim)).unwrap(),
    ];
    anchors.push(counterexample_pair().0);
    anchors.push(counterexample_pair().1);
    for op in &anchors {
        report.record_all(operator_checks(op, &mut rng));
    }

    // Single-operator catalog across the strata.
    let mut low_index_pool = Vec::new();
    for i in 0..config.count {
        let field = if i % 4 == 3 { Field::Complex } else { Field::Real };
        let op = match i % 5 {
            0 => sample::random_ep(&mut rng, dim, field),
            1 => sample::random_idempotent(&mut rng, dim, field),
            2 => sample::random_ep_tripotent(&mut rng, dim, field),
            _ => sample::random_low_index(&mut rng, dim, field),
        };
        let op = if i % 10 == 9 {
            sample::as_countable(&op)
        } else {
            op
        };
        report.record_all(operator_checks(&op, &mut rng));
        if !op.ambient().is_countable() && field == Field::Real {
            low_index_pool.push(op);
        }
    }

    // Higher-index stratum with construction oracles for the CN parts.
    for i in 0..(config.count / 2).max(4) {
        let field = if i % 4 == 3 { Field::Complex } else { Field::Real };
        let target = 2 + (i % (dim - 1).max(1)).min(dim - 2);
        let built = sample::random_with_index(&mut rng, dim, target, field);
        report.record_all(operator_checks(&built.op, &mut rng));
        let cn = built.op.cn();
        report.record(CheckOutcome {
            name: "cn-matches-construction",
            passed: cn.core_part == built.core_part && cn.nilpotent_part == built.nilpotent_part,
            detail: Some(format!("constructed index {}", target)),
        });
    }

    // Pairs: generated comparable ones and random mostly-incomparable ones.
    let mut chains = Vec::new();
    for (i, phi) in low_index_pool.iter().enumerate() {
        if let Ok(psi) = generate_above(phi, &mut rng) {
            report.record_all(pair_checks(phi, &psi));
            report.record(check(
                "generated-pairs-are-comparable",
                core_leq(phi, &psi).expect("same ambient").verdict,
            ));
            if let Ok(chi) = generate_above(&psi, &mut rng) {
                report.record_all(chain_checks(phi, &psi, &chi));
                chains.push((phi.clone(), psi, chi));
            }
        }
        let partner = &low_index_pool[(i * 7 + 3) % low_index_pool.len()];
        report.record_all(pair_checks(phi, partner));
    }

    // Reflexivity over the whole pool is linear; the quadratic
    // comparable-pair discovery runs on a capped subset.
    for phi in &low_index_pool {
        report.record(check(
            "core-order-reflexive",
            core_leq(phi, phi).expect("same ambient").verdict,
        ));
    }
    let axiom_pool: Vec<_> = low_index_pool.iter().take(16).cloned().collect();
    if let Ok(axioms) = verify_order_axioms(OrderRelation::Core, &axiom_pool, &chains) {
        report.record(check("core-order-antisymmetric", axioms.antisymmetric));
        report.record(check("core-order-transitive", axioms.transitive));
    }

    // The general core pre-order must fail antisymmetry on the
    // counterexample pair.
    let (a, b) = counterexample_pair();
    if let Ok(axioms) = verify_order_axioms(OrderRelation::GeneralCore, &[a, b], &[]) {
        report.record(check(
            "general-core-antisymmetry-counterexample",
            !axioms.antisymmetric && axioms.antisymmetry_witnesses == vec![(0, 1)],
        ));
    }

    report
}

/// The standard 5x5 pair with equal core parts but different nilpotent
/// parts: comparable both ways under the general core pre-order while
/// being distinct.
pub fn counterexample_pair() -> (FinitePotentOperator, FinitePotentOperator) {
    let field = Field::Real;
    let mut a = Matrix::zero(5, 5, field);
    a.set(0, 0, crate::scalar::Scalar::from_int(29, field));
    a.set(1, 1, crate::scalar::Scalar::from_int(33, field));
    a.set(4, 3, crate::scalar::Scalar::one(field));
    let mut b = a.clone();
    b.set(3, 2, crate::scalar::Scalar::one(field));
    (
        FinitePotentOperator::new(a, crate::operator::Ambient::Finite(5)).unwrap(),
        FinitePotentOperator::new(b, crate::operator::Ambient::Finite(5)).unwrap(),
    )
}
