//! Campaign reports and their JSON, CSV and table renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::curve::WeilAudit;
use crate::field::{Elem, FieldCtx, FieldInfo};
use crate::perm::Collision;

/// An element as its integer index plus its coefficient vector (constant term first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElemRender {
    pub index: u64,
    pub coeffs: Vec<u64>,
}

impl ElemRender {
    pub fn new(ctx: &FieldCtx, x: &Elem) -> Self {
        let mut coeffs = x.coeffs().to_vec();
        coeffs.resize(ctx.n(), 0);
        Self {
            index: ctx.index(x),
            coeffs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRender {
    pub x1: ElemRender,
    pub x2: ElemRender,
    pub image: ElemRender,
    pub reverified: bool,
}

impl WitnessRender {
    pub fn new(ctx: &FieldCtx, w: &Collision, reverified: bool) -> Self {
        Self {
            x1: ElemRender::new(ctx, &w.x1),
            x2: ElemRender::new(ctx, &w.x2),
            image: ElemRender::new(ctx, &w.image),
            reverified,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// A permuting case in a conjecture search.
    Counterexample,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Counterexample => "counterexample",
        }
    }
}

/// How much a passing case establishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// A finite statement checked over every relevant element.
    Exhaustive,
    /// Numbers agree with a statement whose proof is not reproduced here.
    Consistency,
    /// One data point of an open search.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub key: String,
    pub evidence: Evidence,
    pub field: FieldInfo,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frob_level: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<ElemRender>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<ElemRender>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_permutation: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_permutation: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRender>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub counts: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub checks: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub audits: Vec<WeilAudit>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CaseResult {
    pub fn new(key: impl Into<String>, evidence: Evidence, field: FieldInfo) -> Self {
        Self {
            key: key.into(),
            evidence,
            field,
            frob_level: None,
            b: None,
            trace: None,
            tau: None,
            expected_permutation: None,
            is_permutation: None,
            witness: None,
            counts: BTreeMap::new(),
            checks: BTreeMap::new(),
            audits: Vec::new(),
            verdict: Verdict::Pass,
            note: None,
        }
    }

    pub fn count(&mut self, name: &str, value: u64) {
        self.counts.insert(name.to_string(), value);
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.checks.insert(name.to_string(), ok);
    }

    /// Fail when any recorded check or audit failed. Leaves other verdicts alone.
    pub fn settle_checks(&mut self) {
        let bad: Vec<&str> = self
            .checks
            .iter()
            .filter(|(_, ok)| !**ok)
            .map(|(k, _)| k.as_str())
            .collect();
        if !bad.is_empty() || self.audits.iter().any(|a| !a.passed) {
            self.verdict = Verdict::Fail;
            if !bad.is_empty() && self.note.is_none() {
                self.note = Some(format!("failed: {}", bad.join(", ")));
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub cases: u64,
    pub pass: u64,
    pub fail: u64,
    pub counterexample: u64,
}

impl Totals {
    pub fn tally(cases: &[CaseResult]) -> Self {
        let mut t = Totals::default();
        for c in cases {
            t.cases += 1;
            match c.verdict {
                Verdict::Pass => t.pass += 1,
                Verdict::Fail => t.fail += 1,
                Verdict::Counterexample => t.counterexample += 1,
            }
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub campaign: String,
    pub evidence: Evidence,
    pub grid: serde_json::Value,
    pub totals: Totals,
    pub cases: Vec<CaseResult>,
    /// Only filled on request; everything else is a pure function of the grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl CampaignReport {
    pub fn new(campaign: &str, evidence: Evidence, grid: serde_json::Value, cases: Vec<CaseResult>) -> Self {
        Self {
            campaign: campaign.to_string(),
            evidence,
            grid,
            totals: Totals::tally(&cases),
            cases,
            wall_time_ms: None,
        }
    }

    /// Some case contradicts a proven statement.
    pub fn violated(&self) -> bool {
        self.totals.fail > 0
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases
            .iter()
            .filter(|c| c.verdict == Verdict::Counterexample)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
    Human,
}

pub fn emit_report(report: &CampaignReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => to_json_bytes(report),
        Format::Csv => to_csv(report),
        Format::Human => to_table(report).into_bytes(),
    }
}

pub fn to_json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report types serialize");
    out.push(b'\n');
    out
}

fn coeff_text(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("[{}]", parts.join(" "))
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn joined<V: ToString>(m: &BTreeMap<String, V>) -> String {
    m.iter()
        .map(|(k, v)| format!("{k}={}", v.to_string()))
        .collect::<Vec<_>>()
        .join(";")
}

pub const CSV_HEADER: [&str; 19] = [
    "key", "verdict", "evidence", "p", "n", "modulus", "frob_level", "b_index", "b_coeffs",
    "trace_index", "trace_coeffs", "tau", "expected_permutation", "is_permutation", "x1", "x2",
    "counts", "checks", "note",
];

fn to_csv(report: &CampaignReport) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for c in &report.cases {
        let evidence = serde_json::to_value(c.evidence).expect("enum");
        let row = vec![
            c.key.clone(),
            c.verdict.as_str().to_string(),
            evidence.as_str().unwrap_or_default().to_string(),
            c.field.p.to_string(),
            c.field.n.to_string(),
            c.field.modulus.as_deref().map(coeff_text).unwrap_or_default(),
            opt(c.frob_level),
            opt(c.b.as_ref().map(|b| b.index)),
            c.b.as_ref().map(|b| coeff_text(&b.coeffs)).unwrap_or_default(),
            opt(c.trace.as_ref().map(|t| t.index)),
            c.trace.as_ref().map(|t| coeff_text(&t.coeffs)).unwrap_or_default(),
            opt(c.tau),
            opt(c.expected_permutation),
            opt(c.is_permutation),
            opt(c.witness.as_ref().map(|w| w.x1.index)),
            opt(c.witness.as_ref().map(|w| w.x2.index)),
            joined(&c.counts),
            joined(&c.checks),
            c.note.clone().unwrap_or_default(),
        ];
        w.write_record(&row).expect("in-memory write");
    }
    w.into_inner().expect("flush to vec")
}

fn to_table(report: &CampaignReport) -> String {
    let head = ["key", "verdict", "perm", "expected", "witness", "note"];
    let rows: Vec<[String; 6]> = report
        .cases
        .iter()
        .map(|c| {
            [
                c.key.clone(),
                c.verdict.as_str().to_string(),
                opt(c.is_permutation),
                opt(c.expected_permutation),
                c.witness
                    .as_ref()
                    .map(|w| format!("({}, {})", w.x1.index, w.x2.index))
                    .unwrap_or_default(),
                c.note.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let mut width = head.map(str::len);
    for r in &rows {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let t = &report.totals;
    let evidence = serde_json::to_value(report.evidence).expect("enum");
    let _ = writeln!(
        out,
        "campaign {} ({}): {} cases, {} pass, {} fail, {} counterexample",
        report.campaign,
        evidence.as_str().unwrap_or_default(),
        t.cases,
        t.pass,
        t.fail,
        t.counterexample
    );
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    out.push_str(&line(&head.map(String::from)));
    out.push('\n');
    let rule: Vec<String> = width.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&rule.join("  "));
    out.push('\n');
    for r in &rows {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::perm::{is_permutation, MapSpec};

    fn sample() -> CampaignReport {
        let ctx = make_field(5, 2).unwrap();
        let b = ctx.from_u64(1);
        let spec = MapSpec::standard(&ctx, b.clone()).unwrap();
        let r = is_permutation(&spec).unwrap();
        let w = r.witness.unwrap();
        let mut case = CaseResult::new("p=5,b=1", Evidence::Exhaustive, ctx.info());
        case.b = Some(ElemRender::new(&ctx, &b));
        case.is_permutation = Some(false);
        case.expected_permutation = Some(false);
        case.witness = Some(WitnessRender::new(&ctx, &w, w.reverify(&spec)));
        case.count("evaluations", r.evaluations);
        case.check("witness_reverified", true);
        CampaignReport::new("demo", Evidence::Exhaustive, serde_json::json!({"p": [5]}), vec![case])
    }

    #[test]
    fn json_round_trip_typed_and_generic() {
        let rep = sample();
        let bytes = emit_report(&rep, Format::Json);
        let back: CampaignReport = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(back, rep);
        let generic: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(generic, serde_json::to_value(&rep).unwrap());
        let again: serde_json::Value = serde_json::from_slice(&to_json_bytes(&generic)).unwrap();
        assert_eq!(again, generic);
    }

    #[test]
    fn witness_indices_are_ordered() {
        let rep = sample();
        let w = rep.cases[0].witness.as_ref().unwrap();
        assert!(w.x1.index < w.x2.index);
        assert!(w.reverified);
        assert_eq!(w.x1.coeffs.len(), 2);
    }

    #[test]
    fn empty_report() {
        let rep = CampaignReport::new("none", Evidence::Search, serde_json::json!({}), vec![]);
        assert_eq!(rep.totals, Totals::default());
        assert!(!rep.violated());
        let csv = String::from_utf8(emit_report(&rep, Format::Csv)).unwrap();
        assert_eq!(csv.lines().count(), 1);
        assert!(String::from_utf8(emit_report(&rep, Format::Human)).unwrap().contains("0 cases"));
    }

    #[test]
    fn csv_has_one_row_per_case() {
        let rep = sample();
        let csv = String::from_utf8(emit_report(&rep, Format::Csv)).unwrap();
        let mut rdr = csv::Reader::from_reader(csv.as_bytes());
        let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
        assert_eq!(rows.len(), 1);
        assert_eq!(&rows[0][1], "pass");
        assert_eq!(&rows[0][5], "[2 0 1]");
    }

    #[test]
    fn settle_marks_failures() {
        let ctx = make_field(3, 1).unwrap();
        let mut c = CaseResult::new("k", Evidence::Consistency, ctx.info());
        c.check("a", true);
        c.settle_checks();
        assert_eq!(c.verdict, Verdict::Pass);
        c.check("b", false);
        c.settle_checks();
        assert_eq!(c.verdict, Verdict::Fail);
        assert_eq!(c.note.as_deref(), Some("failed: b"));
    }
}
