//! Algebra-definition documents and machine-readable results.
//!
//! Input documents are TOML: either explicit structure-constant tables or a
//! builder (`matrix` / `quiver`) plus a bracket choice (`trivial`,
//! `standard` with a lambda, or `explicit` entries). Every coefficient is an
//! exact rational literal (`"p/q"` or an integer string); no floats appear
//! in either direction. Results serialize to JSON with rationals as strings;
//! the payload of a result document is bit-for-bit reproducible across runs,
//! timings are reported alongside it.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{
    matrix_algebra, path_algebra, validate_poisson, Element, FiniteDimAlgebra,
    LieBracketTable, PoissonAlgebra, Quiver, ValidationReport,
};
use crate::engine::{BettiTable, CrossCheckReport};
use crate::enveloping::PropertySuiteReport;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational};

/// Parsed shape of an algebra-definition document.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    #[serde(default)]
    pub comment: Option<String>,
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default)]
    pub basis: Option<Vec<String>>,
    /// Unit coefficient vector as rational strings.
    #[serde(default)]
    pub unit: Option<Vec<String>>,
    /// Entries `(i, j, k, coefficient)` of `v_i v_j = sum_k c v_k`.
    #[serde(default)]
    pub mult: Option<Vec<(usize, usize, usize, String)>>,
    pub bracket: BracketSpec,
    #[serde(default)]
    pub builder: Option<BuilderSpec>,
    /// Optional override of the PBW total order (a permutation of `0..dim`).
    #[serde(default)]
    pub basis_order: Option<Vec<usize>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BracketSpec {
    Trivial,
    Standard { lambda: String },
    Explicit { entries: Vec<(usize, usize, usize, String)> },
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum BuilderSpec {
    Matrix { n: usize },
    Quiver { vertices: usize, arrows: Vec<(usize, usize)> },
}

/// Parses a document into a Poisson algebra; validators run unless
/// `validate` is false.
pub fn parse_algebra(text: &str, validate: bool) -> Result<PoissonAlgebra> {
    let doc: AlgebraDocument =
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let algebra = build_algebra(&doc)?;
    let dim = algebra.dim();
    let bracket = match &doc.bracket {
        BracketSpec::Trivial => LieBracketTable::trivial(dim),
        BracketSpec::Standard { lambda } => {
            let lambda = parse_rational(lambda)?;
            LieBracketTable::scaled_commutator(&algebra, &lambda)
        }
        BracketSpec::Explicit { entries } => {
            let mut table = vec![vec![Element::zero(); dim]; dim];
            for (i, j, k, value) in entries {
                if *i >= dim || *j >= dim || *k >= dim {
                    return Err(Error::IndexOutOfRange {
                        index: *i.max(j).max(k),
                        bound: dim,
                        context: "bracket entry",
                    });
                }
                table[*i][*j].add_term(*k, parse_rational(value)?);
            }
            LieBracketTable::new(dim, table)?
        }
    };
    let mut p = PoissonAlgebra::new(algebra, bracket)?.with_name(doc.name.clone());
    if let Some(order) = &doc.basis_order {
        p = p.with_basis_order(order.clone())?;
    }
    if validate {
        validate_poisson(&p).into_result()?;
    }
    Ok(p)
}

fn build_algebra(doc: &AlgebraDocument) -> Result<FiniteDimAlgebra> {
    match (&doc.builder, &doc.mult) {
        (Some(_), Some(_)) => Err(Error::Structural(
            "builder and explicit multiplication table are mutually exclusive".into(),
        )),
        (Some(BuilderSpec::Matrix { n }), None) => matrix_algebra(*n),
        (Some(BuilderSpec::Quiver { vertices, arrows }), None) => path_algebra(&Quiver {
            vertices: *vertices,
            arrows: arrows.clone(),
        }),
        (None, Some(entries)) => {
            let dim = doc
                .dim
                .ok_or_else(|| Error::Structural("explicit tables require `dim`".into()))?;
            if dim == 0 {
                return Err(Error::ZeroDimensionalAlgebra);
            }
            let basis = doc
                .basis
                .clone()
                .ok_or_else(|| Error::Structural("explicit tables require `basis` labels".into()))?;
            let unit_strings = doc
                .unit
                .as_ref()
                .ok_or_else(|| Error::Structural("explicit tables require a designated `unit`".into()))?;
            if unit_strings.len() != dim {
                return Err(Error::Structural(format!(
                    "unit vector has {} coefficients for dimension {dim}",
                    unit_strings.len()
                )));
            }
            let mut unit = Element::zero();
            for (i, s) in unit_strings.iter().enumerate() {
                unit.add_term(i, parse_rational(s)?);
            }
            let mut mult = vec![vec![Element::zero(); dim]; dim];
            for (i, j, k, value) in entries {
                if *i >= dim || *j >= dim || *k >= dim {
                    return Err(Error::IndexOutOfRange {
                        index: *i.max(j).max(k),
                        bound: dim,
                        context: "multiplication entry",
                    });
                }
                mult[*i][*j].add_term(*k, parse_rational(value)?);
            }
            FiniteDimAlgebra::new(dim, basis, mult, unit)
        }
        (None, None) => Err(Error::Structural(
            "document needs either a builder or explicit tables".into(),
        )),
    }
}

/// Serializes a Poisson algebra back to the explicit document form.
/// Parsing the output reproduces the same structure constants.
pub fn serialize_algebra(p: &PoissonAlgebra, comment: Option<&str>) -> String {
    let dim = p.dim();
    let mut out = String::new();
    out.push_str(&format!("name = {:?}\n", p.name()));
    if let Some(c) = comment {
        out.push_str(&format!("comment = {:?}\n", c));
    }
    out.push_str(&format!("dim = {dim}\n"));
    let labels: Vec<String> = p
        .algebra()
        .basis_labels()
        .iter()
        .map(|l| format!("{l:?}"))
        .collect();
    out.push_str(&format!("basis = [{}]\n", labels.join(", ")));
    let unit: Vec<String> = (0..dim)
        .map(|i| format!("{:?}", format_rational(&p.algebra().unit().coeff(i))))
        .collect();
    out.push_str(&format!("unit = [{}]\n", unit.join(", ")));
    if p.basis_order() != (0..dim).collect::<Vec<_>>() {
        out.push_str(&format!("basis_order = {:?}\n", p.basis_order()));
    }
    out.push_str("mult = [\n");
    for i in 0..dim {
        for j in 0..dim {
            for (k, v) in p.algebra().mult_basis(i, j).iter() {
                out.push_str(&format!("  [{i}, {j}, {k}, {:?}],\n", format_rational(v)));
            }
        }
    }
    out.push_str("]\n\n[bracket]\nkind = \"explicit\"\nentries = [\n");
    for i in 0..dim {
        for j in 0..dim {
            for (k, v) in p.bracket().bracket_basis(i, j).iter() {
                out.push_str(&format!("  [{i}, {j}, {k}, {:?}],\n", format_rational(v)));
            }
        }
    }
    out.push_str("]\n");
    out
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("sha256:{:x}", hasher.finalize())
}

/// Machine-readable result wrapper. The `payload` is deterministic for a
/// given input and seed; `timings_ms` is reporting metadata.
#[derive(Debug, Serialize)]
pub struct ResultDocument {
    pub tool_version: String,
    pub input_hash: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    pub payload: Payload,
    pub timings_ms: Timings,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    Betti(BettiPayload),
    CrossCheck(CrossCheckPayload),
    Validation(ValidationPayload),
    EnvCheck(EnvCheckPayload),
    Count(CountPayload),
}

#[derive(Debug, Serialize)]
pub struct Timings {
    pub total_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_degree_ms: Option<Vec<u128>>,
}

#[derive(Debug, Serialize)]
pub struct BettiPayload {
    pub algebra: String,
    pub theory: String,
    pub coefficients: String,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
    pub rows: Vec<BettiRowPayload>,
}

#[derive(Debug, Serialize)]
pub struct BettiRowPayload {
    pub n: usize,
    pub cochain_dim: usize,
    pub rank: usize,
    pub dim: usize,
}

impl BettiPayload {
    pub fn from_table(t: &BettiTable) -> Self {
        BettiPayload {
            algebra: t.algebra.clone(),
            theory: t.theory.clone(),
            coefficients: t.coefficients.clone(),
            method: t.method.tag(),
            notice: t.notice.clone(),
            rows: t
                .rows
                .iter()
                .map(|r| BettiRowPayload {
                    n: r.n,
                    cochain_dim: r.cochain_dim,
                    rank: r.rank_out,
                    dim: r.dim,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CrossCheckPayload {
    pub identity: String,
    pub algebra: String,
    pub verdict: String,
    pub degrees: Vec<DegreePayload>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<HypothesisPayload>,
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct DegreePayload {
    pub n: usize,
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Serialize)]
pub struct HypothesisPayload {
    pub statement: String,
    pub probe_bound: usize,
    pub values: Vec<(usize, usize)>,
    pub verified: bool,
}

impl CrossCheckPayload {
    pub fn from_report(r: &CrossCheckReport) -> Self {
        CrossCheckPayload {
            identity: r.identity.clone(),
            algebra: r.algebra.clone(),
            verdict: if r.pass() { "pass".into() } else { "fail".into() },
            degrees: r
                .degrees
                .iter()
                .map(|d| DegreePayload {
                    n: d.n,
                    left: d.left,
                    right: d.right,
                })
                .collect(),
            hypothesis: r.hypothesis.as_ref().map(|h| HypothesisPayload {
                statement: h.statement.clone(),
                probe_bound: h.probe_bound,
                values: h.values.clone(),
                verified: h.verified,
            }),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ValidationPayload {
    pub valid: bool,
    pub violations: Vec<String>,
}

impl ValidationPayload {
    pub fn from_report(r: &ValidationReport) -> Self {
        ValidationPayload {
            valid: r.is_valid(),
            violations: r.violations.iter().map(|v| v.to_string()).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EnvCheckPayload {
    pub seed: u64,
    pub samples: usize,
    pub max_u_degree: usize,
    pub pass: bool,
    pub checks: Vec<EnvCheckRow>,
}

#[derive(Debug, Serialize)]
pub struct EnvCheckRow {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl EnvCheckPayload {
    pub fn from_report(r: &PropertySuiteReport) -> Self {
        EnvCheckPayload {
            seed: r.seed,
            samples: r.samples,
            max_u_degree: r.max_u_degree,
            pass: r.pass(),
            checks: r
                .checks
                .iter()
                .map(|c| EnvCheckRow {
                    name: c.name.clone(),
                    cases: c.cases,
                    failures: c.failures,
                    witness: c.witness.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CountPayload {
    pub name: String,
    pub algebra: String,
    pub value: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::int;

    const M2_DOC: &str = r#"
name = "m2-standard"

[builder]
matrix = { n = 2 }

[bracket]
kind = "standard"
lambda = "1"
"#;

    #[test]
    fn parse_matrix_builder() {
        let p = parse_algebra(M2_DOC, true).unwrap();
        assert_eq!(p.dim(), 4);
        assert_eq!(p.name(), "m2-standard");
        assert!(!p.bracket().is_trivial());
    }

    #[test]
    fn parse_quiver_builder() {
        let doc = r#"
name = "kronecker"

[builder]
quiver = { vertices = 2, arrows = [[0, 1], [0, 1]] }

[bracket]
kind = "standard"
lambda = "1"
"#;
        let p = parse_algebra(doc, true).unwrap();
        assert_eq!(p.dim(), 4);
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        let doc = r#"
name = "bad"

[builder]
matrix = { n = 2 }

[bracket]
kind = "standard"
lambda = "1/0"
"#;
        assert!(matches!(
            parse_algebra(doc, true),
            Err(Error::InvalidRational(_))
        ));
    }

    #[test]
    fn parse_rejects_builder_with_tables() {
        let doc = r#"
name = "conflict"
dim = 1
basis = ["e"]
unit = ["1"]
mult = [[0, 0, 0, "1"]]

[builder]
matrix = { n = 2 }

[bracket]
kind = "trivial"
"#;
        assert!(matches!(parse_algebra(doc, true), Err(Error::Structural(_))));
    }

    #[test]
    fn explicit_tables_round_trip() {
        let p = catalog::a2_standard();
        let text = serialize_algebra(&p, Some("round-trip"));
        let q = parse_algebra(&text, true).unwrap();
        assert_eq!(p.dim(), q.dim());
        for i in 0..p.dim() {
            for j in 0..p.dim() {
                assert_eq!(p.algebra().mult_basis(i, j), q.algebra().mult_basis(i, j));
                assert_eq!(
                    p.bracket().bracket_basis(i, j),
                    q.bracket().bracket_basis(i, j)
                );
            }
        }
        assert_eq!(p.algebra().unit(), q.algebra().unit());
    }

    #[test]
    fn validation_runs_on_load() {
        // A bracket violating Leibniz: {e,e} = 0 forced, so break Jacobi via
        // a non-antisymmetric table instead.
        let doc = r#"
name = "broken"
dim = 2
basis = ["u", "x"]
unit = ["1", "0"]
mult = [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]]

[bracket]
kind = "explicit"
entries = [[1, 1, 1, "1"]]
"#;
        let err = parse_algebra(doc, true);
        assert!(matches!(err, Err(Error::AxiomViolations(_))));
        // Without validation the same document loads structurally.
        assert!(parse_algebra(doc, false).is_ok());
    }

    #[test]
    fn result_document_serializes_stably() {
        let p = catalog::a2_standard();
        let module = crate::algebra::self_module(&p);
        let limits = crate::Limits::default();
        let table = crate::engine::betti_hq(&p, &module, 2, &limits).unwrap();
        let doc = ResultDocument {
            tool_version: "test".into(),
            input_hash: sha256_hex(b"input"),
            command: "hq".into(),
            seed: None,
            comment: None,
            payload: Payload::Betti(BettiPayload::from_table(&table)),
            timings_ms: Timings {
                total_ms: 0,
                per_degree_ms: None,
            },
        };
        let a = serde_json::to_string_pretty(&doc).unwrap();
        let b = serde_json::to_string_pretty(&doc).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"dim\": 1"));
        assert!(!a.to_lowercase().contains("e-"), "no float notation");
        let _ = int(0);
    }
}
