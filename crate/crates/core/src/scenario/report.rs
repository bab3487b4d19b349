use serde::Serialize;

use crate::polynomial::Polynomial;
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedResidual {
    pub name: String,
    pub polynomial: String,
}

/// One verification record. `lhs`, `rhs` and residuals are exact renderings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residuals: Vec<NamedResidual>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Self { name: name.into(), pass, lhs: None, rhs: None, residuals: Vec::new(), detail: None }
    }

    /// Exact equality of two rationals.
    pub fn equal(name: impl Into<String>, lhs: &Rational, rhs: &Rational) -> Self {
        Self::new(name, lhs == rhs).with_sides(format_rational(lhs), format_rational(rhs))
    }

    /// Equality of two rendered values.
    pub fn same<T: PartialEq + std::fmt::Display>(name: impl Into<String>, lhs: &T, rhs: &T) -> Self {
        Self::new(name, lhs == rhs).with_sides(lhs.to_string(), rhs.to_string())
    }

    /// Passes iff every residual is the zero polynomial; nonzero residuals are listed.
    pub fn zero_residuals<'a, I>(name: impl Into<String>, residuals: I) -> Self
    where
        I: IntoIterator<Item = (String, &'a Polynomial)>,
    {
        let nonzero: Vec<NamedResidual> = residuals
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(name, p)| NamedResidual { name, polynomial: p.to_string() })
            .collect();
        let mut c = Self::new(name, nonzero.is_empty());
        c.residuals = nonzero;
        c
    }

    pub fn failed(name: impl Into<String>, error: impl std::fmt::Display) -> Self {
        Self::new(name, false).with_detail(format!("error: {error}"))
    }

    pub fn with_sides(mut self, lhs: String, rhs: String) -> Self {
        self.lhs = Some(lhs);
        self.rhs = Some(rhs);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_residual(mut self, name: impl Into<String>, p: &Polynomial) -> Self {
        self.residuals.push(NamedResidual { name: name.into(), polynomial: p.to_string() });
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub total: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub scenario: String,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(scenario: impl Into<String>, kind: impl Into<String>, seed: Option<u64>, checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let total = checks.len();
        let summary = Summary { passed, failed: total - passed, total, pass: passed == total };
        Self { scenario: scenario.into(), kind: kind.into(), seed, checks, summary }
    }

    pub fn passed(&self) -> bool {
        self.summary.pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Render a report. JSON keys follow declaration order; numbers are integers only.
pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => emit_text(report),
    }
}

fn emit_text(report: &Report) -> String {
    let mut out = format!("scenario {} ({})", report.scenario, report.kind);
    if let Some(seed) = report.seed {
        out.push_str(&format!(" seed {seed}"));
    }
    out.push('\n');
    for c in &report.checks {
        out.push_str(if c.pass { "PASS " } else { "FAIL " });
        out.push_str(&c.name);
        if let (Some(l), Some(r)) = (&c.lhs, &c.rhs) {
            out.push_str(&format!("  lhs = {l}  rhs = {r}"));
        }
        out.push('\n');
        for res in &c.residuals {
            out.push_str(&format!("    {} = {}\n", res.name, res.polynomial));
        }
        if let Some(d) = &c.detail {
            out.push_str(&format!("    {d}\n"));
        }
    }
    out.push_str(&format!("{}/{} passed\n", report.summary.passed, report.summary.total));
    out
}

/// Several reports as one document, in input order.
pub fn emit_batch(reports: &[Report], format: Format) -> String {
    if let [single] = reports {
        return emit(single, format);
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Batch<'a> {
                reports: &'a [Report],
                summary: Summary,
            }
            let summary = Summary { passed, failed: reports.len() - passed, total: reports.len(), pass: passed == reports.len() };
            let mut s = serde_json::to_string_pretty(&Batch { reports, summary }).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&emit_text(r));
                out.push('\n');
            }
            out.push_str(&format!("{passed}/{} scenarios passed\n", reports.len()));
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn empty_report() {
        let r = Report::new("empty", "form-op", None, vec![]);
        let json: serde_json::Value = serde_json::from_str(&emit(&r, Format::Json)).unwrap();
        assert_eq!(json["summary"]["total"], 0);
        assert_eq!(json["summary"]["pass"], true);
        assert!(emit(&r, Format::Text).ends_with("0/0 passed\n"));
    }

    #[test]
    fn single_passing_check() {
        let r = Report::new("one", "stokes", Some(3), vec![Check::equal("stokes", &rat(1), &rat(1))]);
        let text = emit(&r, Format::Text);
        assert!(text.contains("PASS stokes  lhs = 1  rhs = 1"));
        assert!(text.ends_with("1/1 passed\n"));
    }

    #[test]
    fn failing_residual_is_canonical() {
        let x1 = Polynomial::var(2, 1);
        let x2 = Polynomial::var(2, 2);
        let p = &(&x2 - &Polynomial::one(2)) + &(&x1 * &x1);
        let r = Report::new("res", "classical-em", None, vec![Check::zero_residuals("maxwell", [("r".to_string(), &p)])]);
        assert!(!r.passed());
        let json: serde_json::Value = serde_json::from_str(&emit(&r, Format::Json)).unwrap();
        assert_eq!(json["checks"][0]["residuals"][0]["polynomial"], "x1^2 + x2 - 1");
    }

    #[test]
    fn json_has_no_floats() {
        let r = Report::new("q", "stokes", Some(9), vec![Check::equal("x", &crate::rational::frac(1, 3), &rat(2))]);
        let json = emit(&r, Format::Json);
        assert!(!json.contains('.'));
        assert!(json.contains("\"1/3\""));
    }
}
