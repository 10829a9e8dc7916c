//! Acceptance suite: one test per criterion, every comparison exact unless
//! a float tolerance is stated in the criterion itself. Each test prints a
//! single pass line; a failed assertion marks the criterion failed.

use potent::inverse::{
    check_inverse_class, core_inverse, drazin, group_inverse, is_ep, moore_penrose, InverseClass,
    InverseError,
};
use potent::matrix::Matrix;
use potent::operator::FinitePotentOperator;
use potent::order::{core_leq, gamma, general_core_leq, generate_above, space_leq, verify_order_axioms, OrderRelation};
use potent::sample;
use potent::scalar::{Field, Scalar};
use potent::verify::{counterexample_pair, run_random_suite, SuiteConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pass(criterion: &str, summary: &str) {
    println!("criterion {}: PASS - {}", criterion, summary);
}

#[test]
fn criterion_1_counterexample_pair_reproduction() {
    let (a, b) = counterexample_pair();
    assert_eq!(a.index(), 2, "first matrix must have index 2");
    assert_eq!(b.index(), 3, "second matrix must have index 3");

    let expected_core = {
        let mut m = Matrix::zero(5, 5, Field::Real);
        m.set(0, 0, Scalar::from_int(29, Field::Real));
        m.set(1, 1, Scalar::from_int(33, Field::Real));
        FinitePotentOperator::new(m, potent::operator::Ambient::Finite(5)).unwrap()
    };
    assert_eq!(gamma(&a), expected_core, "core part of A");
    assert_eq!(gamma(&b), expected_core, "core part of B");

    assert!(general_core_leq(&a, &b).unwrap().verdict);
    assert!(general_core_leq(&b, &a).unwrap().verdict);
    assert_ne!(a, b, "comparable both ways yet distinct");

    let axioms =
        verify_order_axioms(OrderRelation::GeneralCore, &[a, b], &[]).unwrap();
    assert!(axioms.reflexive);
    assert!(!axioms.antisymmetric, "antisymmetry must fail");
    assert_eq!(axioms.antisymmetry_witnesses, vec![(0, 1)]);

    pass("1", "5x5 pair: indices 2 and 3, equal core parts, mutual strict comparability");
}

#[test]
fn criterion_2_core_inverse_dual_characterization() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0200);
    let mut checked = (0usize, 0usize);
    for i in 0..260 {
        let field = if i < 200 { Field::Real } else { Field::Complex };
        let op = sample::random_low_index(&mut rng, 5, field);
        let geometric = core_inverse(&op).expect("index at most one");
        let algebraic = group_inverse(&op)
            .expect("index at most one")
            .compose(&op)
            .compose(&moore_penrose(&op));
        assert_eq!(geometric, algebraic, "the two constructions must agree");
        assert!(
            check_inverse_class(&op, &geometric, InverseClass::Core3).all_hold(),
            "all three defining conditions must hold"
        );

        // Uniqueness probe: any same-shape perturbation breaks an axiom.
        let mut perturbation = sample::random_matrix(&mut rng, 5, 5, field);
        if perturbation.is_zero() {
            perturbation = Matrix::identity(5, field);
        }
        let candidate = geometric.with_block(geometric.block() + &perturbation);
        assert!(
            !check_inverse_class(&op, &candidate, InverseClass::Core3).all_hold(),
            "a perturbed candidate must fail at least one condition"
        );

        if field == Field::Real {
            checked.0 += 1;
        } else {
            checked.1 += 1;
        }
    }
    assert!(checked.0 >= 200 && checked.1 >= 50);
    pass(
        "2",
        &format!(
            "geometric = group∘φ∘mp and uniqueness on {} rational + {} gaussian operators",
            checked.0, checked.1
        ),
    );
}

#[test]
fn criterion_3_existence_boundary_above_index_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0300);
    for i in 0..100 {
        let index = 2 + i % 3;
        let built = sample::random_with_index(&mut rng, 5, index, Field::Real);
        let op = &built.op;
        assert!(op.index() >= 2);
        assert_eq!(
            core_inverse(op),
            Err(InverseError::NoCoreInverse { index: op.index() })
        );
        assert_eq!(
            group_inverse(op),
            Err(InverseError::NoGroupInverse { index: op.index() })
        );
        let d = drazin(op);
        assert!(
            check_inverse_class(op, &d, InverseClass::Drazin3).all_hold(),
            "Drazin axioms must hold at any index"
        );
    }
    pass("3", "core and group inverses absent, Drazin present, on 100 operators of index 2..4");
}

#[test]
fn criterion_4_identity_catalog_on_the_random_suite() {
    let report = run_random_suite(SuiteConfig {
        seed: 0x0400,
        count: 100,
        dim: 5,
    });
    for stat in &report.identities {
        assert_eq!(
            stat.failures, 0,
            "{} failed {} of {} samples: {:?}",
            stat.name, stat.failures, stat.samples, stat.first_failure
        );
    }
    // The catalog must actually contain the expected identities; a rename
    // or a dropped check should fail loudly here.
    for required in [
        "core-power-absorption",          // φ^⊛ = φ^{n-1}∘(φ^⊛)^n, n = 2..4
        "core-of-core",                   // (φ^⊛)^⊛ = (φ^⊛)† = φ∘P_Im
        "core-inverse-is-ep",
        "core-dagger-group-drazin",
        "core-reflexive-and-group-related",
        "core-group-mp-coincide-iff-ep",
        "core-zero-iff-zero",
        "core-of-idempotent-is-projector",
        "core-fixed-point-iff-tripotent-ep",
        "core-of-mp-formula",
        "core-equals-adjoint-iff-partial-isometry-ep",
        "ep-five-way-equivalence",
        "mp-adjoint-absorption",
        "mp-preserves-low-index",
        "core-uniqueness-probe",
        "cn-matches-construction",
    ] {
        assert!(
            report.identities.iter().any(|s| s.name == required && s.samples > 0),
            "identity {} missing from the suite",
            required
        );
    }

    // Constructed witnesses for the "if" directions of the biconditionals.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0401);
    for _ in 0..25 {
        // Zero: φ^⊛ = 0 ⟺ φ = 0.
        let zero = FinitePotentOperator::new(
            Matrix::zero(5, 5, Field::Real),
            potent::operator::Ambient::Finite(5),
        )
        .unwrap();
        assert!(core_inverse(&zero).unwrap().is_zero());

        // Idempotent: φ² = φ forces φ^⊛ = P_Im.
        let idem = sample::random_idempotent(&mut rng, 5, Field::Real);
        assert_eq!(
            core_inverse(&idem).unwrap().block(),
            &idem.image().orth_projector()
        );

        // EP: the core, group, and Moore-Penrose inverses coincide.
        let ep = sample::random_ep(&mut rng, 5, Field::Complex);
        let core = core_inverse(&ep).unwrap();
        assert_eq!(core, group_inverse(&ep).unwrap());
        assert_eq!(core, moore_penrose(&ep));

        // Tripotent and EP: the operator is its own core inverse.
        let tri = sample::random_ep_tripotent(&mut rng, 5, Field::Real);
        assert_eq!(core_inverse(&tri).unwrap(), tri);

        // Partial isometries with EP (orthogonal projectors and unit
        // diagonals): the core inverse is the adjoint.
        let proj = {
            let b = sample::random_matrix(&mut rng, 5, 3, Field::Real).image_basis();
            let block = b.orth_projector();
            FinitePotentOperator::new(block, potent::operator::Ambient::Finite(5)).unwrap()
        };
        assert_eq!(core_inverse(&proj).unwrap(), proj.adjoint());
        let units = {
            let choices = [
                Scalar::zero(Field::Complex),
                Scalar::one(Field::Complex),
                -Scalar::one(Field::Complex),
                Scalar::i(),
                -Scalar::i(),
            ];
            let entries: Vec<Scalar> = (0..5)
                .map(|_| choices[rng.gen_range(0..choices.len())].clone())
                .collect();
            FinitePotentOperator::new(
                Matrix::diagonal(Field::Complex, &entries),
                potent::operator::Ambient::Finite(5),
            )
            .unwrap()
        };
        assert_eq!(core_inverse(&units).unwrap(), units.adjoint());
    }

    pass(
        "4",
        &format!(
            "{} identities clean on the random suite, constructed witnesses confirm the converse directions",
            report.identities.len()
        ),
    );
}

#[test]
fn criterion_5_core_order_is_a_partial_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0500);

    // Reflexivity on 200 samples.
    let samples: Vec<FinitePotentOperator> = (0..200)
        .map(|i| {
            let field = if i % 5 == 4 { Field::Complex } else { Field::Real };
            match i % 3 {
                0 => sample::random_ep(&mut rng, 5, field),
                _ => sample::random_low_index(&mut rng, 5, field),
            }
        })
        .collect();
    for op in &samples {
        assert!(core_leq(op, op).unwrap().verdict, "reflexivity");
    }

    // Transitivity on 100 generated chains, with the chain-agreement lemma.
    let mut comparable: Vec<(FinitePotentOperator, FinitePotentOperator)> = Vec::new();
    let mut chains = 0;
    for phi in samples.iter().take(100) {
        let psi = generate_above(phi, &mut rng).expect("generation succeeds");
        let chi = generate_above(&psi, &mut rng).expect("generation succeeds");
        assert!(core_leq(phi, &psi).unwrap().verdict);
        assert!(core_leq(&psi, &chi).unwrap().verdict);
        assert!(core_leq(phi, &chi).unwrap().verdict, "transitivity");
        // Ends of the chain agree on the image of the bottom element.
        let image = phi.image();
        assert_eq!(
            &(phi.block() - chi.block()) * image.basis_matrix(),
            Matrix::zero(5, image.dim(), phi.field()),
            "chain ends must agree on Im(bottom)"
        );
        comparable.push((phi.clone(), psi.clone()));
        comparable.push((psi, chi));
        chains += 1;
    }
    assert_eq!(chains, 100);

    // Antisymmetry on every comparable pair discovered: the generated
    // pairs plus an exhaustive scan of a small pool.
    let mut discovered = comparable.clone();
    for i in 0..16 {
        for j in 0..16 {
            if i != j
                && samples[i].field() == samples[j].field()
                && core_leq(&samples[i], &samples[j]).unwrap().verdict
            {
                discovered.push((samples[i].clone(), samples[j].clone()));
            }
        }
    }
    for (x, y) in &discovered {
        if core_leq(y, x).unwrap().verdict {
            assert_eq!(x, y, "antisymmetry: mutual comparability forces equality");
        }
    }

    // Three-way characterization agreement on at least 500 pairs, both
    // comparable and incomparable.
    let mut agreement_pairs = 0usize;
    let mut check_agreement = |x: &FinitePotentOperator, y: &FinitePotentOperator| {
        let witnesses = core_leq(x, y).unwrap().witnesses;
        let held: Vec<bool> = witnesses.iter().map(|(_, h)| *h).collect();
        let defining = held[0] && held[1];
        let restriction = held[2] && held[3];
        let composition = held[4] && held[5];
        assert!(
            defining == restriction && defining == composition,
            "characterizations disagree on a pair"
        );
    };
    for (x, y) in &discovered {
        check_agreement(x, y);
        agreement_pairs += 1;
    }
    while agreement_pairs < 500 {
        let x = &samples[rng.gen_range(0..samples.len())];
        let y = &samples[rng.gen_range(0..samples.len())];
        if x.field() == y.field() {
            check_agreement(x, y);
            agreement_pairs += 1;
        }
    }

    // Consequence lemmas on every comparable pair.
    for (phi, psi) in &comparable {
        // Image and kernel inclusions, hence the space pre-order.
        assert!(psi.image().contains(&phi.image()));
        assert!(phi.kernel().contains(&psi.kernel()));
        assert!(space_leq(phi, psi).unwrap().verdict);
        // Ker(φ) = Ker(ψ) ⊕ (Im(ψ) ∩ Ker(φ)).
        let ker_phi = phi.kernel();
        let ker_psi = psi.kernel();
        let meet = psi.image().intersection(&ker_phi);
        assert!(ker_psi.intersection(&meet).is_trivial());
        assert!(ker_psi.sum(&meet).same_span(&ker_phi));
        assert_eq!(ker_psi.dim() + meet.dim(), ker_phi.dim());
        // EP base: the AST parts of φ stay invariant under ψ.
        if is_ep(phi) {
            let w = phi.image();
            let u = phi.kernel();
            assert!(w.contains(&w.image_under(psi.block())));
            assert!(u.contains(&u.image_under(psi.block())));
        }
    }

    pass(
        "5",
        &format!(
            "reflexive on 200, antisymmetric on {} discovered pairs, transitive on 100 chains, {} agreement pairs",
            discovered.len(),
            agreement_pairs
        ),
    );
}

#[test]
fn criterion_6_preimage_growth_probe() {
    let start = std::time::Instant::now();
    let report = potent::preimage_growth(100);
    let elapsed = start.elapsed();

    for (i, &m) in report.levels.iter().enumerate() {
        assert!(
            (report.preimage_norms[i] - (m as f64).sqrt()).abs() <= 1e-12,
            "preimage norm at level {} must be √m to 1e-12",
            m
        );
        assert!(
            report.target_norms[i] < 0.49,
            "target norms stay below 0.49"
        );
    }
    assert_eq!(report.levels.len(), 100);
    for w in report.preimage_norms.windows(2) {
        assert!(w[0] < w[1], "preimage norms strictly increase");
    }
    let diffs: Vec<f64> = report.target_norms.windows(2).map(|w| w[1] - w[0]).collect();
    for w in diffs.windows(2) {
        assert!(w[0] > w[1], "target increments decrease monotonically");
    }
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "probe must finish within 5 seconds, took {:?}",
        elapsed
    );
    pass(
        "6",
        &format!(
            "‖x_m‖ = √m through m = 100, targets bounded by {:.4}, in {:?}",
            report.target_norms[99], elapsed
        ),
    );
}

#[test]
fn criterion_7_cn_and_ast_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0700);
    let mut ops: Vec<FinitePotentOperator> = Vec::new();
    for i in 0..100 {
        let field = if i % 4 == 3 { Field::Complex } else { Field::Real };
        let op = sample::random_low_index(&mut rng, 5, field);
        ops.push(if i % 7 == 6 { sample::as_countable(&op) } else { op });
    }
    for i in 0..50 {
        let field = if i % 4 == 3 { Field::Complex } else { Field::Real };
        let built = sample::random_with_index(&mut rng, 5, 2 + i % 3, field);
        // Construction oracle: the computed parts must equal the pieces
        // the operator was assembled from.
        let cn = built.op.cn();
        assert_eq!(cn.core_part, built.core_part, "core part oracle");
        assert_eq!(cn.nilpotent_part, built.nilpotent_part, "nilpotent part oracle");
        ops.push(built.op);
    }

    for op in &ops {
        let index = op.index();
        let cn = op.cn();
        let phi1 = &cn.core_part;
        let phi2 = &cn.nilpotent_part;
        assert_eq!(&phi1.add(phi2), op, "φ₁ + φ₂ = φ");
        assert!(phi1.compose(phi2).is_zero(), "φ₁∘φ₂ = 0");
        assert!(phi2.compose(phi1).is_zero(), "φ₂∘φ₁ = 0");
        assert!(phi1.index() <= 1, "core part has index at most one");
        assert!(phi2.pow(index.max(1)).is_zero(), "φ₂ nilpotent of the index order");

        let ast = op.ast();
        let low = index <= 1;
        assert_eq!(low, ast.nilpotent_space.same_span(&op.kernel()));
        assert_eq!(low, ast.invertible_space.same_span(&op.image()));
        assert_eq!(low, phi2.is_zero());
    }

    pass(
        "7",
        &format!("CN/AST invariants and construction oracles on {} operators", ops.len()),
    );
}
