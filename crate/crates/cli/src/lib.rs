//! Driver behind the `tbb` binary: turns a request into a solver run and an
//! output document.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};
use tbb_core::criteria::CriterionReport;
use tbb_core::oracle::TruncatedIdealSpan;
use tbb_core::quotient::Quotient;
use tbb_core::solver::AbortReason;
use tbb_core::syzygy::{make_phi, make_rho, SyzygyElement};
use tbb_core::{
    parse_system, run, var_indices, ChoiceFunction, Error as CoreError, Field, LaurentPoly, Monomial, Outcome,
    Projection, SolverConfig, SolverResult, VarIndex,
};
use thiserror::Error;

/// Exit codes of the binary.
pub mod exit {
    pub const OK: i32 = 0;
    pub const OTHER: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const ABORTED: i32 = 3;
    pub const CERTIFICATE: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::Parse { .. } | CoreError::ZeroPolynomialLine(_) | CoreError::NotPrime(_)) => {
                exit::PARSE
            }
            CliError::Usage(_) => exit::PARSE,
            _ => exit::OTHER,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Section {
    Basis,
    Quotient,
    Matrices,
    Syzygies,
    Trace,
}

impl FromStr for Section {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s.trim() {
            "basis" => Section::Basis,
            "quotient" => Section::Quotient,
            "matrices" => Section::Matrices,
            "syzygies" => Section::Syzygies,
            "trace" => Section::Trace,
            other => return Err(CliError::Usage(format!("unknown section '{other}'"))),
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunRequest {
    pub field: Field,
    pub choice: ChoiceFunction,
    pub max_degree: Option<u32>,
    pub sections: Vec<Section>,
    pub format: Format,
    pub dump_matrices: bool,
    /// Degree bound for the brute-force cross-check, if requested.
    pub oracle: Option<u32>,
}

impl Default for RunRequest {
    fn default() -> Self {
        RunRequest {
            field: Field::Rational,
            choice: ChoiceFunction::Macaulay,
            max_degree: None,
            sections: vec![Section::Basis],
            format: Format::Text,
            dump_matrices: false,
            oracle: None,
        }
    }
}

/// Parses a comma-separated section list; the list may not be empty.
pub fn parse_sections(s: &str) -> Result<Vec<Section>, CliError> {
    let mut out: Vec<Section> = s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect::<Result<_, _>>()?;
    if out.is_empty() {
        return Err(CliError::Usage("--emit needs at least one section".into()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The result of a run, ready to print.
pub struct Report {
    pub document: Value,
    pub exit_code: i32,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.document).expect("document serializes") + "\n",
            Format::Text => render_text(&self.document),
        }
    }
}

pub fn solve_text(text: &str, req: &RunRequest) -> Result<Report, CliError> {
    let system = parse_system(text, req.field)?;
    let config = SolverConfig {
        max_degree: req.max_degree,
        choice: req.choice,
        keep_matrices: req.dump_matrices,
    };
    let result = run(&system.polys, &config)?;
    let mut report = emit_result(&result, system.nvars, req)?;
    if let Some(bound) = req.oracle {
        let span = TruncatedIdealSpan::build(&system.polys, bound);
        report.document["oracle"] = json!({
            "bound": bound,
            "hilbert": span.hilbert(),
            "dimension": span.stable_dim().stable(),
        });
    }
    Ok(report)
}

fn mono(m: &Monomial) -> String {
    m.to_string()
}

fn var_name(i: VarIndex) -> String {
    if i > 0 {
        format!("x{i}")
    } else {
        format!("x{}^-1", -i)
    }
}

fn poly_terms(p: &LaurentPoly) -> Value {
    Value::Array(p.terms().rev().map(|(m, c)| json!({"monomial": mono(m), "coeff": c.to_string()})).collect())
}

fn syzygy_terms(s: &SyzygyElement) -> Value {
    Value::Array(
        s.terms()
            .map(|(t, c)| {
                json!({
                    "coeff": c.to_string(),
                    "multiplier": mono(&t.multiplier),
                    "slot": t.slot,
                    "base": mono(&t.base),
                })
            })
            .collect(),
    )
}

fn certificate_json(c: Option<&CriterionReport>) -> Value {
    match c {
        None => Value::Null,
        Some(c) => json!({
            "condition1": c.condition1_ok,
            "condition3": c.condition3_ok,
            "witnesses": c.witnesses.iter().map(|w| json!({"what": w.what, "residue": w.residue})).collect::<Vec<_>>(),
        }),
    }
}

/// Builds the output document for the selected sections.
pub fn emit_result(result: &SolverResult, nvars: usize, req: &RunRequest) -> Result<Report, CliError> {
    let mut doc = json!({
        "field": req.field.to_string(),
        "nvars": nvars,
        "choice": req.choice.to_string(),
        "ceiling": result.ceiling,
        "certificate": certificate_json(result.certificate.as_ref()),
    });
    let sel = |s: Section| req.sections.contains(&s);
    let exit_code = match &result.outcome {
        Outcome::UnitIdeal => {
            doc["status"] = json!("unit_ideal");
            doc["message"] = json!("the ideal is the whole ring: the basis {1} generates it and there is no quotient");
            if sel(Section::Basis) {
                doc["basis"] = json!([{"head": "1", "tail": [], "polynomial": "1"}]);
            }
            if sel(Section::Quotient) {
                doc["quotient"] = json!({"dimension": 0, "monomials": []});
            }
            exit::OK
        }
        Outcome::Aborted(reason) => {
            doc["status"] = json!("aborted");
            let code = match reason {
                AbortReason::DegreeCeiling { ceiling } => {
                    doc["reason"] = json!({"kind": "degree_ceiling", "ceiling": ceiling});
                    exit::ABORTED
                }
                AbortReason::CertificateFailure => {
                    doc["reason"] = json!({"kind": "certificate_failure"});
                    exit::CERTIFICATE
                }
            };
            if sel(Section::Quotient) || sel(Section::Matrices) || sel(Section::Syzygies) {
                doc["message"] = json!("no border basis, so no quotient is available");
            }
            code
        }
        Outcome::BorderBasis { b, rules, degree } => {
            doc["status"] = json!("border_basis");
            doc["degree"] = json!(degree);
            let proj = result.projection.as_ref().expect("a border basis carries its projection");
            if sel(Section::Basis) {
                doc["basis"] = Value::Array(
                    rules
                        .iter()
                        .map(|r| {
                            json!({
                                "head": mono(&r.head),
                                "tail": poly_terms(&r.tail),
                                "polynomial": r.polynomial().to_string(),
                            })
                        })
                        .collect(),
                );
            }
            if sel(Section::Quotient) {
                doc["quotient"] = json!({"dimension": b.len(), "monomials": b.iter().map(mono).collect::<Vec<_>>()});
            }
            if sel(Section::Matrices) {
                doc["matrices"] = matrices_json(proj)?;
            }
            if sel(Section::Syzygies) {
                doc["syzygies"] = syzygies_json(proj, b)?;
            }
            exit::OK
        }
    };
    if sel(Section::Trace) {
        doc["trace"] = serde_json::to_value(&result.trace).expect("trace serializes");
    }
    if req.dump_matrices {
        doc["linear_systems"] = Value::Array(
            result
                .matrices
                .iter()
                .map(|m| {
                    json!({
                        "rows": m.nrows(),
                        "columns": m.columns().iter().map(mono).collect::<Vec<_>>(),
                        "polynomials": (0..m.nrows()).map(|r| m.row_poly(r).to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        );
    }
    Ok(Report { document: doc, exit_code })
}

fn matrices_json(proj: &Projection) -> Result<Value, CliError> {
    let q = Quotient::from_projection(proj)?;
    Ok(json!({
        "basis": q.basis().iter().map(mono).collect::<Vec<_>>(),
        "operators": q.matrices().iter().map(|m| json!({
            "var": m.var,
            "name": var_name(m.var),
            "rows": m.entries.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    }))
}

/// Every nonzero `φ_{i,j}(b)` with `i < j` (the other order is its negative)
/// and every nonzero `ρ_i(b)`, for `b ∈ B`.
fn syzygies_json(proj: &Projection, b: &[Monomial]) -> Result<Value, CliError> {
    let n = proj.nvars();
    let mut out = Vec::new();
    for m in b {
        for i in var_indices(n) {
            for j in var_indices(n).filter(|&j| i < j) {
                let s = make_phi(proj, i, j, m)?;
                if !s.is_zero() {
                    out.push(json!({"kind": "phi", "i": i, "j": j, "base": mono(m), "terms": syzygy_terms(&s)}));
                }
            }
            let s = make_rho(proj, i, m)?;
            if !s.is_zero() {
                out.push(json!({"kind": "rho", "i": i, "base": mono(m), "terms": syzygy_terms(&s)}));
            }
        }
    }
    Ok(Value::Array(out))
}

fn render_text(doc: &Value) -> String {
    let mut s = String::new();
    let status = doc["status"].as_str().unwrap_or("?");
    let _ = writeln!(s, "status: {status}");
    if let Some(d) = doc.get("degree") {
        let _ = writeln!(s, "degree: {d}");
    }
    if let Some(r) = doc.get("reason") {
        let _ = writeln!(s, "reason: {}", r["kind"].as_str().unwrap_or("?"));
        if let Some(c) = r.get("ceiling") {
            let _ = writeln!(s, "ceiling: {c}");
        }
    }
    if let Some(m) = doc.get("message").and_then(Value::as_str) {
        let _ = writeln!(s, "{m}");
    }
    if let Some(c) = doc.get("certificate").filter(|c| !c.is_null()) {
        let _ = writeln!(s, "certificate: condition1={} condition3={}", c["condition1"], c["condition3"]);
    }
    if let Some(basis) = doc.get("basis").and_then(Value::as_array) {
        let _ = writeln!(s, "\n# basis ({} rules)", basis.len());
        for r in basis {
            let _ = writeln!(s, "{}", r["polynomial"].as_str().unwrap_or(""));
        }
    }
    if let Some(q) = doc.get("quotient") {
        let _ = writeln!(s, "\n# quotient (dimension {})", q["dimension"]);
        let monos: Vec<&str> = q["monomials"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
        let _ = writeln!(s, "{}", monos.join(" "));
    }
    if let Some(m) = doc.get("matrices") {
        let basis: Vec<&str> = m["basis"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
        let _ = writeln!(s, "\n# multiplication matrices in the basis [{}]", basis.join(", "));
        for op in m["operators"].as_array().into_iter().flatten() {
            let _ = writeln!(s, "{}:", op["name"].as_str().unwrap_or("?"));
            for row in op["rows"].as_array().into_iter().flatten() {
                let cells: Vec<&str> = row.as_array().into_iter().flatten().filter_map(Value::as_str).collect();
                let _ = writeln!(s, "  [{}]", cells.join(", "));
            }
        }
    }
    if let Some(syz) = doc.get("syzygies").and_then(Value::as_array) {
        let _ = writeln!(s, "\n# syzygies ({} generators)", syz.len());
        for g in syz {
            let name = match g["kind"].as_str() {
                Some("phi") => format!("phi_{},{}", g["i"], g["j"]),
                _ => format!("rho_{}", g["i"]),
            };
            let terms: Vec<String> = g["terms"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|t| {
                    format!(
                        "({})*{}*Y{}[{}]",
                        t["coeff"].as_str().unwrap_or(""),
                        t["multiplier"].as_str().unwrap_or(""),
                        t["slot"],
                        t["base"].as_str().unwrap_or("")
                    )
                })
                .collect();
            let _ = writeln!(s, "{name}({}) = {}", g["base"].as_str().unwrap_or(""), terms.join(" + "));
        }
    }
    if let Some(trace) = doc.get("trace").and_then(Value::as_array) {
        let _ = writeln!(s, "\n# trace");
        for t in trace {
            let _ = writeln!(s, "{t}");
        }
    }
    if let Some(ls) = doc.get("linear_systems").and_then(Value::as_array) {
        let _ = writeln!(s, "\n# linear systems");
        for (k, m) in ls.iter().enumerate() {
            let _ = writeln!(s, "system {k}: {} rows", m["rows"]);
            for p in m["polynomials"].as_array().into_iter().flatten() {
                let _ = writeln!(s, "  {}", p.as_str().unwrap_or(""));
            }
        }
    }
    if let Some(o) = doc.get("oracle") {
        let _ = writeln!(s, "\n# oracle: {o}");
    }
    s
}
