//! Scenario files: parsing, execution and report emission.
//!
//! A scenario is a JSON document
//!
//! ```json
//! { "schema_version": "1", "id": "unit-square", "kind": "stokes", "description": "...", "seed": 7, "payload": { ... } }
//! ```
//!
//! where `kind` is one of `form-op`, `stokes`, `mechanics`, `pform-em` or
//! `classical-em`. Running a scenario never panics on module errors; they
//! become failed checks.

mod payload;
mod report;
mod run;
mod schema;

use serde::Deserialize;
use serde_json::Value;

use crate::electrodynamics::Classical4DFields;

pub use payload::{parse_chain, parse_fields, parse_form, Kind, Payload, RESIDUAL_NAMES};
pub use report::{emit, emit_batch, Check, Format, NamedResidual, Report, Summary};
pub use schema::{form_to_json, polynomial_to_json, ErrorCode, ParseResult, ScenarioError, SCHEMA_VERSION};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioFile {
    pub schema_version: String,
    pub id: String,
    pub description: Option<String>,
    pub seed: Option<u64>,
    pub payload: Payload,
}

impl ScenarioFile {
    pub fn kind(&self) -> Kind {
        self.payload.kind()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    schema_version: String,
    id: String,
    kind: String,
    #[serde(default)]
    description: Option<String>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    payload: Value,
}

/// Parse JSON text, reporting syntax errors with line and column.
pub fn parse_json(text: &str) -> ParseResult<Value> {
    serde_json::from_str(text).map_err(|e| {
        let mut err = ScenarioError::new(ErrorCode::BadJson, "", e.to_string());
        err.line = Some(e.line());
        err.column = Some(e.column());
        err
    })
}

pub fn parse_scenario(text: &str) -> ParseResult<ScenarioFile> {
    let value = parse_json(text)?;
    if let Some(v) = value.get("schema_version") {
        if v.as_str() != Some(SCHEMA_VERSION) {
            return Err(ScenarioError::new(
                ErrorCode::UnsupportedSchema,
                "schema_version",
                format!("unsupported schema version {v}; expected \"{SCHEMA_VERSION}\""),
            ));
        }
    }
    if let Some(k) = value.get("kind").and_then(Value::as_str) {
        if Kind::parse(k).is_none() {
            return Err(ScenarioError::new(ErrorCode::UnknownKind, "kind", format!("unknown scenario kind `{k}`")));
        }
    }
    let mut de = serde_json::Deserializer::from_str(text);
    let raw: RawScenario = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let mut err = ScenarioError::new(ErrorCode::BadField, path, inner.to_string());
        err.line = Some(inner.line());
        err.column = Some(inner.column());
        err
    })?;
    let kind = Kind::parse(&raw.kind).expect("kind checked above");
    let payload = payload::parse_payload(kind, &raw.payload)?;
    Ok(ScenarioFile { schema_version: raw.schema_version, id: raw.id, description: raw.description, seed: raw.seed, payload })
}

/// Run with the scenario's own seed (0 when absent).
pub fn run(scenario: &ScenarioFile) -> Report {
    run_with_seed(scenario, None)
}

/// Run, letting `seed_override` replace the scenario seed.
pub fn run_with_seed(scenario: &ScenarioFile, seed_override: Option<u64>) -> Report {
    let seed = seed_override.or(scenario.seed).unwrap_or(0);
    let checks = run::run_payload(&scenario.payload, seed);
    Report::new(&scenario.id, scenario.kind().as_str(), Some(seed), checks)
}

/// Expansion report for a standalone classical field record.
pub fn expand_report(id: &str, fields: Classical4DFields) -> Report {
    let payload = Payload::ClassicalEm(payload::ClassicalPayload {
        fields,
        expect_nonzero: Vec::new(),
        random_potentials: None,
        magnetostatic: None,
    });
    Report::new(id, Kind::ClassicalEm.as_str(), None, run::run_payload(&payload, 0))
}

/// Run independent scenarios in parallel; reports keep input order.
pub fn run_batch(scenarios: &[ScenarioFile], seed_override: Option<u64>) -> Vec<Report> {
    std::thread::scope(|s| {
        let handles: Vec<_> = scenarios.iter().map(|sc| s.spawn(move || run_with_seed(sc, seed_override))).collect();
        handles.into_iter().map(|h| h.join().expect("scenario runs do not panic")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const STOKES: &str = r#"{
        "schema_version": "1", "id": "unit-square", "kind": "stokes",
        "payload": { "checks": [ { "form": { "n": 2, "degree": 1, "terms": [
            { "indices": [2], "polynomial": [ { "exponents": [1, 0], "coefficient": "1" } ] } ] } } ] }
    }"#;

    #[test]
    fn minimal_stokes() {
        let s = parse_scenario(STOKES).unwrap();
        assert_eq!(s.kind(), Kind::Stokes);
        let r = run(&s);
        assert!(r.passed());
        assert_eq!(r.checks[0].lhs.as_deref(), Some("1"));
        assert_eq!(r.checks[0].rhs.as_deref(), Some("1"));
    }

    #[test]
    fn diagnostics() {
        let e = parse_scenario("{ \"id\": ").unwrap_err();
        assert_eq!(e.code, ErrorCode::BadJson);
        assert!(e.line.is_some());

        let bad_kind = STOKES.replace("\"stokes\"", "\"plasma\"");
        assert_eq!(parse_scenario(&bad_kind).unwrap_err().code, ErrorCode::UnknownKind);

        let bad_version = STOKES.replace("\"1\", \"id\"", "\"2\", \"id\"");
        assert_eq!(parse_scenario(&bad_version).unwrap_err().code, ErrorCode::UnsupportedSchema);

        let bad_index = STOKES.replace("\"indices\": [2]", "\"indices\": [2, 1]");
        let e = parse_scenario(&bad_index).unwrap_err();
        assert_eq!(e.code, ErrorCode::NoncanonicalIndex);
        assert_eq!(e.path, "payload.checks[0].form.terms[0].indices");

        let bad_rational = STOKES.replace("\"coefficient\": \"1\"", "\"coefficient\": \"1/0\"");
        assert_eq!(parse_scenario(&bad_rational).unwrap_err().code, ErrorCode::BadRational);

        let bad_degree = STOKES.replace("\"degree\": 1", "\"degree\": 2");
        assert_eq!(parse_scenario(&bad_degree).unwrap_err().code, ErrorCode::DegreeMismatch);

        let unknown_field = STOKES.replace("\"checks\"", "\"chekcs\"");
        let e = parse_scenario(&unknown_field).unwrap_err();
        assert_eq!(e.code, ErrorCode::BadField);
        assert!(e.path.starts_with("payload"));
    }

    #[test]
    fn module_errors_become_failed_checks() {
        let text = r#"{ "schema_version": "1", "id": "dim", "kind": "form-op",
            "payload": { "dimensions": [ { "n": -1, "r": 0 } ] } }"#;
        let r = run(&parse_scenario(text).unwrap());
        assert!(!r.passed());
        assert!(r.checks[0].detail.as_deref().unwrap().starts_with("error:"));
    }
}
