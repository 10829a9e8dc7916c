//! Operator files: a small JSON format with sparse 1-based entries.
//!
//! ```json
//! {
//!   "field": "rational",
//!   "ambient": {"kind": "finite", "dim": 5},
//!   "name": "A",
//!   "entries": [
//!     [1, 1, "29"],
//!     [2, 2, "33"],
//!     [5, 4, "1"]
//!   ]
//! }
//! ```
//!
//! Scalars are `"p/q"` strings (integers accepted as shorthand, bare JSON
//! integers too); a gaussian file additionally accepts
//! `{"re": "p/q", "im": "r/s"}` objects. Omitted entries are zero.

use crate::matrix::Matrix;
use crate::operator::{Ambient, FinitePotentOperator};
use crate::scalar::{Field, Scalar};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("invalid json: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("entry {position}: {message}")]
    Entry { position: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize)]
struct OperatorFile {
    field: FieldRepr,
    ambient: AmbientRepr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    entries: Vec<EntryRepr>,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum FieldRepr {
    Rational,
    Gaussian,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum AmbientRepr {
    Finite { dim: usize },
    Countable { support: usize },
}

#[derive(Serialize, Deserialize)]
struct EntryRepr(usize, usize, ScalarRepr);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Int(i64),
    Text(String),
    Gaussian { re: RationalRepr, im: RationalRepr },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RationalRepr {
    Int(i64),
    Text(String),
}

impl RationalRepr {
    fn parse(&self, field: Field) -> Result<Scalar, String> {
        match self {
            RationalRepr::Int(n) => Ok(Scalar::from_int(*n, field)),
            RationalRepr::Text(t) => Scalar::parse(t, field).map_err(|e| e.to_string()),
        }
    }
}

impl ScalarRepr {
    fn parse(&self, field: Field) -> Result<Scalar, String> {
        match (self, field) {
            (ScalarRepr::Int(n), _) => Ok(Scalar::from_int(*n, field)),
            (ScalarRepr::Text(t), _) => Scalar::parse(t, field).map_err(|e| e.to_string()),
            (ScalarRepr::Gaussian { re, im }, Field::Complex) => {
                let re = re.parse(Field::Complex)?;
                let im = im.parse(Field::Complex)?;
                Ok(Scalar::new(re.re().clone(), im.re().clone(), Field::Complex))
            }
            (ScalarRepr::Gaussian { .. }, Field::Real) => {
                Err("a file with field \"rational\" cannot hold a gaussian entry".to_string())
            }
        }
    }
}

/// Parses an operator file, returning the optional name with the operator.
pub fn parse_operator(text: &str) -> Result<(Option<String>, FinitePotentOperator), FixtureError> {
    let file: OperatorFile = serde_json::from_str(text)?;
    let field = match file.field {
        FieldRepr::Rational => Field::Real,
        FieldRepr::Gaussian => Field::Complex,
    };
    let (ambient, window) = match file.ambient {
        AmbientRepr::Finite { dim } => (Ambient::Finite(dim), dim),
        AmbientRepr::Countable { support } => (Ambient::Countable { support }, support),
    };
    if window == 0 {
        return Err(FixtureError::Invalid(
            "the ambient dimension must be positive".to_string(),
        ));
    }
    let mut block = Matrix::zero(window, window, field);
    let mut seen = vec![false; window * window];
    for (position, EntryRepr(row, col, scalar)) in file.entries.iter().enumerate() {
        let fail = |message: String| FixtureError::Entry {
            position: position + 1,
            message,
        };
        if !(1..=window).contains(row) || !(1..=window).contains(col) {
            return Err(fail(format!(
                "position ({}, {}) is outside the {}x{} block (indices are 1-based)",
                row, col, window, window
            )));
        }
        if std::mem::replace(&mut seen[(row - 1) * window + (col - 1)], true) {
            return Err(fail(format!("duplicate entry for position ({}, {})", row, col)));
        }
        let value = scalar.parse(field).map_err(fail)?;
        block.set(row - 1, col - 1, value);
    }
    let op = FinitePotentOperator::new(block, ambient)
        .map_err(|e| FixtureError::Invalid(e.to_string()))?;
    Ok((file.name, op))
}

/// Renders an operator back to the file format: sparse row-major entries,
/// scalars as canonical strings. `parse_operator` inverts this exactly.
pub fn render_operator(op: &FinitePotentOperator, name: Option<&str>) -> String {
    let field_text = match op.field() {
        Field::Real => "rational",
        Field::Complex => "gaussian",
    };
    let ambient_text = match op.ambient() {
        Ambient::Finite(dim) => format!("{{\"kind\": \"finite\", \"dim\": {}}}", dim),
        Ambient::Countable { support } => {
            format!("{{\"kind\": \"countable\", \"support\": {}}}", support)
        }
    };
    let mut lines = Vec::new();
    lines.push(format!("  \"field\": \"{}\",", field_text));
    lines.push(format!("  \"ambient\": {},", ambient_text));
    if let Some(name) = name {
        lines.push(format!(
            "  \"name\": {},",
            serde_json::to_string(name).expect("strings always serialize")
        ));
    }
    let n = op.window();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let s = op.block().at(i, j);
            if s.is_zero() {
                continue;
            }
            let value = match op.field() {
                Field::Real => format!("\"{}\"", s.re_string()),
                Field::Complex => format!(
                    "{{\"re\": \"{}\", \"im\": \"{}\"}}",
                    s.re_string(),
                    s.im_string()
                ),
            };
            entries.push(format!("    [{}, {}, {}]", i + 1, j + 1, value));
        }
    }
    if entries.is_empty() {
        lines.push("  \"entries\": []".to_string());
    } else {
        lines.push(format!("  \"entries\": [\n{}\n  ]", entries.join(",\n")));
    }
    format!("{{\n{}\n}}\n", lines.join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::*;
    use proptest::prelude::*;

    const SAMPLE_A_JSON: &str = r#"{
        "field": "rational",
        "ambient": {"kind": "finite", "dim": 5},
        "name": "A",
        "entries": [[1, 1, "29"], [2, 2, "33"], [5, 4, "1"]]
    }"#;

    #[test]
    fn parses_the_counterexample_fixture() {
        let (name, op) = parse_operator(SAMPLE_A_JSON).unwrap();
        assert_eq!(name.as_deref(), Some("A"));
        assert_eq!(op, sample_a());
    }

    #[test]
    fn accepts_integer_shorthand_and_fractions() {
        let text = r#"{
            "field": "rational",
            "ambient": {"kind": "countable", "support": 2},
            "entries": [[1, 1, 3], [2, 1, "-22/7"]]
        }"#;
        let (name, op) = parse_operator(text).unwrap();
        assert!(name.is_none());
        assert!(op.ambient().is_countable());
        assert_eq!(op.block().at(0, 0), &rat(3, 1));
        assert_eq!(op.block().at(1, 0), &rat(-22, 7));
    }

    #[test]
    fn accepts_gaussian_entries() {
        let text = r#"{
            "field": "gaussian",
            "ambient": {"kind": "finite", "dim": 2},
            "entries": [[1, 2, {"re": "1/2", "im": "-3"}], [2, 2, "5"]]
        }"#;
        let (_, op) = parse_operator(text).unwrap();
        assert_eq!(op.block().at(0, 1), &crate::scalar::Scalar::gaussian(1, 2, -3, 1));
        assert_eq!(
            op.block().at(1, 1),
            &crate::scalar::Scalar::fraction(5, 1, crate::scalar::Field::Complex)
        );
    }

    #[test]
    fn rejects_malformed_input() {
        // Gaussian entry in a rational file.
        let text = r#"{
            "field": "rational",
            "ambient": {"kind": "finite", "dim": 2},
            "entries": [[1, 1, {"re": "1", "im": "1"}]]
        }"#;
        assert!(matches!(
            parse_operator(text),
            Err(FixtureError::Entry { position: 1, .. })
        ));

        // Out-of-bounds index.
        let text = r#"{
            "field": "rational",
            "ambient": {"kind": "finite", "dim": 2},
            "entries": [[3, 1, "1"]]
        }"#;
        assert!(matches!(
            parse_operator(text),
            Err(FixtureError::Entry { position: 1, .. })
        ));

        // Duplicate entry.
        let text = r#"{
            "field": "rational",
            "ambient": {"kind": "finite", "dim": 2},
            "entries": [[1, 1, "1"], [1, 1, "2"]]
        }"#;
        assert!(matches!(
            parse_operator(text),
            Err(FixtureError::Entry { position: 2, .. })
        ));

        // Zero denominator.
        let text = r#"{
            "field": "rational",
            "ambient": {"kind": "finite", "dim": 2},
            "entries": [[1, 1, "1/0"]]
        }"#;
        assert!(parse_operator(text).is_err());

        // Bad json reports a position.
        let err = parse_operator("{\"field\": \"rational\",").unwrap_err();
        assert!(err.to_string().contains("invalid json"));
    }

    #[test]
    fn render_is_parseable_and_sparse() {
        let rendered = render_operator(&sample_a(), Some("A"));
        assert_eq!(rendered.matches('[').count(), 1 + 3); // entries array + 3 entries
        let (name, op) = parse_operator(&rendered).unwrap();
        assert_eq!(name.as_deref(), Some("A"));
        assert_eq!(op, sample_a());
    }

    proptest! {
        #[test]
        fn round_trip(entries in proptest::collection::vec((-9i64..=9, 1i64..=4), 9),
                      gaussian in proptest::prelude::any::<bool>(),
                      countable in proptest::prelude::any::<bool>()) {
            let field = if gaussian { crate::scalar::Field::Complex } else { crate::scalar::Field::Real };
            let block = crate::matrix::Matrix::from_fn(3, 3, field, |i, j| {
                let (p, q) = entries[i * 3 + j];
                match field {
                    crate::scalar::Field::Real => crate::scalar::Scalar::fraction(p, q, field),
                    crate::scalar::Field::Complex => crate::scalar::Scalar::gaussian(p, q, q, p.abs().max(1)),
                }
            });
            let ambient = if countable {
                crate::operator::Ambient::Countable { support: 3 }
            } else {
                crate::operator::Ambient::Finite(3)
            };
            let op = crate::operator::FinitePotentOperator::new(block, ambient).unwrap();
            let (name, parsed) = parse_operator(&render_operator(&op, Some("x"))).unwrap();
            prop_assert_eq!(name.as_deref(), Some("x"));
            prop_assert_eq!(parsed, op);
        }
    }
}
