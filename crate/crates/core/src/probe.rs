//! Truncation study of a compact nilpotent weighted shift on ℓ² whose
//! image is not closed.
//!
//! Non-closedness of an infinite-dimensional image cannot be certified by
//! a finite computation. The observable chosen instead: the targets
//! y_m = Σ_{k≤m} e_{2k+1}/(2k+1) converge in ℓ², yet their minimal-norm
//! preimages x_m = Σ_{k≤m} e_{2k} satisfy ‖x_m‖ = √m, so the restriction
//! of the operator to [Ker]^⊥ is not bounded below. All linear algebra is
//! exact; floats appear only in the emitted report.

use crate::inverse::moore_penrose;
use crate::matrix::{dot, Matrix};
use crate::operator::{Ambient, FinitePotentOperator};
use crate::scalar::{Field, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Norm growth data per truncation level; norms are exact rationals
/// converted to floats at report time.
#[derive(Clone, Debug)]
pub struct TruncationReport {
    pub levels: Vec<usize>,
    pub target_norms: Vec<f64>,
    pub preimage_norms: Vec<f64>,
}

impl TruncationReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,target_norm,preimage_norm\n");
        for (i, m) in self.levels.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{}\n",
                m, self.target_norms[i], self.preimage_norms[i]
            ));
        }
        out
    }
}

/// The order-two nilpotent weighted shift truncated to n coordinates:
/// e_k ↦ e_{k+1}/(k+1) for even k < n, everything else to zero.
pub fn truncated_weighted_shift(n: usize) -> FinitePotentOperator {
    assert!(n >= 4, "truncation too small to carry the construction");
    let mut block = Matrix::zero(n, n, Field::Real);
    for k in (2..n).step_by(2) {
        // 1-based e_k ↦ e_{k+1}/(k+1); 0-based entry (k, k-1).
        block.set(k, k - 1, Scalar::fraction(1, (k + 1) as i64, Field::Real));
    }
    FinitePotentOperator::new(block, Ambient::Finite(n)).unwrap()
}

/// Runs the growth study for m = 1..max_m inside one truncation large
/// enough for every target, pulling each target back through the exact
/// Moore-Penrose inverse of the truncated shift.
pub fn preimage_growth(max_m: usize) -> TruncationReport {
    assert!(max_m >= 2, "need at least two levels to see growth");
    let n = 2 * max_m + 2;
    let shift = truncated_weighted_shift(n);
    let mp = moore_penrose(&shift);

    let mut levels = Vec::with_capacity(max_m);
    let mut target_norms = Vec::with_capacity(max_m);
    let mut preimage_norms = Vec::with_capacity(max_m);
    let mut target = vec![Scalar::zero(Field::Real); n];

    for m in 1..=max_m {
        // Add e_{2m+1}/(2m+1); 0-based coordinate 2m.
        target[2 * m] = Scalar::fraction(1, (2 * m + 1) as i64, Field::Real);
        let preimage = mp.block().apply(&target);

        let target_sq = dot(&target, &target, Field::Real);
        let preimage_sq = dot(&preimage, &preimage, Field::Real);
        // The minimal-norm preimage of y_m is Σ_{k≤m} e_{2k}: squared norm
        // exactly m in rational arithmetic.
        assert_eq!(
            preimage_sq.re(),
            &BigRational::from(BigInt::from(m)),
            "squared preimage norm must be exactly m"
        );

        let target_norm = target_sq.to_f64().sqrt();
        let preimage_norm = preimage_sq.to_f64().sqrt();
        assert!(
            (preimage_norm - (m as f64).sqrt()).abs() <= 1e-12,
            "preimage norm must match the square-root law"
        );
        // Σ_{k≥1} (2k+1)⁻² = π²/8 - 1, an upper bound for every partial sum.
        let bound = std::f64::consts::PI.powi(2) / 8.0 - 1.0 + 1e-9;
        assert!(
            target_sq.to_f64() <= bound,
            "squared target norms must stay under the series limit"
        );

        levels.push(m);
        target_norms.push(target_norm);
        preimage_norms.push(preimage_norm);
    }

    let report = TruncationReport {
        levels,
        target_norms,
        preimage_norms,
    };
    for pair in report.preimage_norms.windows(2) {
        assert!(pair[0] < pair[1], "preimage norms must strictly increase");
    }
    report
}
