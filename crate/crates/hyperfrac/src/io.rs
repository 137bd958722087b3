//! JSON parsing and the text/JSON renderings used by the CLI surface.
//!
//! Everything here is deterministic: equal values render to byte-identical
//! strings, which the CLI contract relies on. Rationals cross this boundary
//! as strings (`"p/q"` or `"p"`), never as floating point.

use serde::Serialize;

use crate::arrangement::{
    enumerate_points, spanning_subsets, ArrangementError, ArrangementInput, GenericityReport,
    GenericityWitness, IndexSet,
};
use crate::decomposer::{Decomposition, DecompositionRecord, PointPolynomial};
use crate::exact_linear::{Rat, RatVector};
use crate::multipoly::MultiPoly;
use crate::verifier::VerificationReport;

/// Parses the arrangement input schema
/// `{"dimension": n, "forms": [{"vector": [...], "mu": "..."}, ...]}`.
/// Validation runs during deserialization, so the error string names the
/// offending form index where applicable.
pub fn parse_input(json: &str) -> Result<ArrangementInput, String> {
    serde_json::from_str(json).map_err(|e| format!("invalid arrangement input: {e}"))
}

/// Parses a serialized decomposition and rebinds it to `input`, re-checking
/// all structural invariants.
pub fn parse_decomposition(json: &str, input: ArrangementInput) -> Result<Decomposition, String> {
    let record: DecompositionRecord =
        serde_json::from_str(json).map_err(|e| format!("invalid decomposition: {e}"))?;
    Decomposition::from_record(record, input).map_err(|e| format!("invalid decomposition: {e}"))
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialization of output types cannot fail")
}

/// One row of the `points` listing. Serializes to the pinned per-point
/// schema; the spanning-subset family appears only when requested.
#[derive(Clone, Debug, Serialize)]
pub struct PointEntry {
    pub coords: RatVector,
    pub xp: IndexSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spanning: Option<Vec<IndexSet>>,
}

/// Builds the point listing, optionally with each point's spanning-subset
/// family (capped at `cap` incident forms).
pub fn point_entries(
    input: &ArrangementInput,
    subsets_cap: Option<usize>,
) -> Result<Vec<PointEntry>, ArrangementError> {
    let points = enumerate_points(input);
    let mut entries = Vec::with_capacity(points.len());
    for point in points {
        let spanning = match subsets_cap {
            Some(cap) => Some(spanning_subsets(input, &point, cap)?),
            None => None,
        };
        entries.push(PointEntry {
            coords: point.coords,
            xp: point.xp,
            spanning,
        });
    }
    Ok(entries)
}

pub fn points_json(entries: &[PointEntry]) -> String {
    pretty(&entries)
}

pub fn render_points_text(entries: &[PointEntry]) -> String {
    let mut out = format!("points ({}):", entries.len());
    for (k, e) in entries.iter().enumerate() {
        out.push_str(&format!("\n[{k}] p = {} ; X_p = {}", e.coords, e.xp));
        if let Some(spanning) = &e.spanning {
            let list = spanning
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            out.push_str(&format!(" ; spanning: {list}"));
        }
    }
    out
}

pub fn decomposition_json(d: &Decomposition) -> String {
    pretty(&d.to_record())
}

/// Decomposition JSON with the verification report attached. Still parses
/// as a plain decomposition record (the extra field is ignored on read).
pub fn decomposition_with_report_json(d: &Decomposition, report: &VerificationReport) -> String {
    #[derive(Serialize)]
    struct WithReport<'a> {
        #[serde(flatten)]
        record: DecompositionRecord,
        verification: &'a VerificationReport,
    }
    pretty(&WithReport {
        record: d.to_record(),
        verification: report,
    })
}

/// Renders one term `c · ∏_{i∈ell} 1/(form_i)` without a leading sign:
/// the magnitude of `c` over the parenthesized forms, e.g. `1/(x0)(x0 + 1)`
/// or `(3/2)/(x1)`.
fn term_body(d: &Decomposition, ell: &IndexSet, magnitude: &Rat) -> String {
    let mag = if magnitude.is_integer() {
        magnitude.to_string()
    } else {
        format!("({magnitude})")
    };
    let denom: String = ell
        .iter()
        .map(|i| format!("({})", MultiPoly::from_form(d.input().form(i))))
        .collect();
    format!("{mag}/{denom}")
}

/// The decomposition as a signed sum, terms ordered by index set, e.g.
/// `1/(x0) - 1/(x0 + 1)`.
pub fn render_term_sum(d: &Decomposition) -> String {
    let mut terms: Vec<_> = d.terms().iter().collect();
    terms.sort_by(|a, b| a.ell.cmp(&b.ell).then(a.point_index.cmp(&b.point_index)));
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        let negative = t.coeff.is_negative();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&term_body(d, &t.ell, &t.coeff.abs()));
    }
    out
}

pub fn render_decomposition_text(d: &Decomposition, cps: &[PointPolynomial]) -> String {
    let mut out = format!("points ({}):", d.points().len());
    for (k, p) in d.points().iter().enumerate() {
        out.push_str(&format!("\n[{k}] p = {} ; X_p = {}", p.coords, p.xp));
    }
    out.push_str(&format!(
        "\ndecomposition ({} terms, strategy {}):\n{}",
        d.terms().len(),
        d.strategy(),
        render_term_sum(d)
    ));
    out.push_str("\npoint coefficients:");
    for cp in cps {
        out.push_str(&format!("\n[{}] {}", cp.point_index, cp.cp));
    }
    out
}

pub fn report_json(report: &VerificationReport) -> String {
    pretty(report)
}

pub fn render_report_text(report: &VerificationReport) -> String {
    let word = |b: bool| if b { "pass" } else { "FAIL" };
    format!(
        "verification: identity={} residues={} point_form={} spot_check={} ({} trials, {} failures)",
        word(report.identity),
        word(report.residues),
        word(report.point_form),
        word(report.spot_check.pass()),
        report.spot_check.trials,
        report.spot_check.failures
    )
}

pub fn genericity_json(report: &GenericityReport) -> String {
    pretty(report)
}

pub fn render_genericity_text(report: &GenericityReport) -> String {
    match &report.witness {
        None => "generic = true".to_string(),
        Some(GenericityWitness::FatPoint { point }) => format!(
            "generic = false\nwitness: point p = {} is incident to {} forms (X_p = {})",
            point.coords,
            point.xp.len(),
            point.xp
        ),
        Some(GenericityWitness::SharedPoint {
            first,
            second,
            point,
        }) => format!(
            "generic = false\nwitness: bases {first} and {second} share the point p = {point}"
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposer::{decompose, point_polynomials, PivotStrategy};

    fn pair_json() -> &'static str {
        r#"{"dimension": 1, "forms": [
            {"vector": ["1"], "mu": "0"},
            {"vector": ["1"], "mu": "1"}
        ]}"#
    }

    #[test]
    fn classical_pair_text_rendering() {
        let input = parse_input(pair_json()).unwrap();
        let d = decompose(&input, PivotStrategy::LastRemovable).unwrap();
        assert_eq!(render_term_sum(&d), "1/(x0) - 1/(x0 + 1)");
        let cps = point_polynomials(&d);
        let text = render_decomposition_text(&d, &cps);
        assert!(text.contains("1/(x0) - 1/(x0 + 1)"), "{text}");
        assert!(text.contains("[0] p = (-1) ; X_p = {1}"), "{text}");
    }

    #[test]
    fn parse_rejects_non_spanning_with_diagnostic() {
        let err = parse_input(
            r#"{"dimension": 2, "forms": [
                {"vector": ["1", "0"], "mu": "0"},
                {"vector": ["2", "0"], "mu": "-1"}
            ]}"#,
        )
        .unwrap_err();
        assert!(err.contains("do not span"), "{err}");
    }

    #[test]
    fn parse_rejects_zero_vector_naming_index() {
        let err = parse_input(
            r#"{"dimension": 2, "forms": [
                {"vector": ["1", "0"], "mu": "0"},
                {"vector": ["0", "0"], "mu": "-1"},
                {"vector": ["0", "1"], "mu": "0"}
            ]}"#,
        )
        .unwrap_err();
        assert!(err.contains("form 1"), "{err}");
    }

    #[test]
    fn decomposition_json_round_trips() {
        let input = parse_input(pair_json()).unwrap();
        let d = decompose(&input, PivotStrategy::LastRemovable).unwrap();
        let json = decomposition_json(&d);
        let back = parse_decomposition(&json, input).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn with_report_json_still_parses_as_decomposition() {
        let input = parse_input(pair_json()).unwrap();
        let d = decompose(&input, PivotStrategy::LastRemovable).unwrap();
        let report = crate::verifier::run_all(&d, 5, 0).unwrap();
        let json = decomposition_with_report_json(&d, &report);
        let back = parse_decomposition(&json, input).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn point_entries_subset_listing() {
        let input = parse_input(
            r#"{"dimension": 2, "forms": [
                {"vector": ["1", "0"], "mu": "0"},
                {"vector": ["0", "1"], "mu": "0"},
                {"vector": ["1", "1"], "mu": "0"}
            ]}"#,
        )
        .unwrap();
        let entries = point_entries(&input, Some(20)).unwrap();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].spanning.as_ref().unwrap().len(), 4);
        // Without the flag the JSON matches the pinned per-point schema.
        let plain = point_entries(&input, None).unwrap();
        let json = points_json(&plain);
        assert!(!json.contains("spanning"), "{json}");
        assert!(json.contains("\"coords\""), "{json}");
        assert!(json.contains("\"xp\""), "{json}");
    }
}
