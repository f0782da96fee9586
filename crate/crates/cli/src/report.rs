//! Reports: per-check verdicts with witnesses, rendered as text or JSON.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use ghocolim_core::homology::{EquivalenceWitnessReport, SubgroupWitness};
use ghocolim_core::simplicial::ops::IsoVerdict;
use ghocolim_core::ValidationReport;

use crate::document::{serialize, Document};

/// Where a check failed. Fields that do not apply are absent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simplex: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
}

impl Witness {
    fn render(&self) -> String {
        let mut parts = Vec::new();
        if let Some(d) = self.degree {
            parts.push(format!("degree={d}"));
        }
        if let Some(h) = &self.subgroup {
            parts.push(format!("subgroup={h:?}"));
        }
        if let Some(c) = &self.coefficients {
            parts.push(format!("coefficients={c}"));
        }
        if let Some(s) = &self.simplex {
            parts.push(format!("simplex={s}"));
        }
        if let Some(r) = &self.rule {
            parts.push(format!("rule={r:?}"));
        }
        if let Some(l) = &self.location {
            parts.push(format!("location={l:?}"));
        }
        parts.join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Full homology data for witness checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroups: Option<Vec<SubgroupWitness>>,
}

impl Check {
    pub fn pass(name: impl Into<String>, summary: impl Into<String>) -> Self {
        Self { name: name.into(), pass: true, summary: summary.into(), witness: None, subgroups: None }
    }

    pub fn fail(name: impl Into<String>, summary: impl Into<String>, witness: Option<Witness>) -> Self {
        Self { name: name.into(), pass: false, summary: summary.into(), witness, subgroups: None }
    }

    pub fn from_validation(name: impl Into<String>, what: &str, r: &ValidationReport) -> Self {
        match r.violations.first() {
            None => Self::pass(name, format!("{what} satisfies its axioms")),
            Some(v) => Self::fail(
                name,
                format!("{what}: {} violation(s)", r.violations.len()),
                Some(Witness { rule: Some(v.rule.clone()), location: Some(v.location.clone()), ..Witness::default() }),
            ),
        }
    }

    pub fn from_iso(name: impl Into<String>, what: &str, v: &IsoVerdict) -> Self {
        match &v.failure {
            None if v.is_iso => Self::pass(name, format!("{what} is a degreewise bijection commuting with the action")),
            None => Self::fail(name, format!("{what} is not an isomorphism"), None),
            Some(f) => Self::fail(
                name,
                format!("{what} is not an isomorphism: {}", f.reason),
                Some(Witness { degree: Some(f.degree), simplex: f.simplex.clone(), ..Witness::default() }),
            ),
        }
    }

    pub fn from_witness(name: impl Into<String>, what: &str, r: EquivalenceWitnessReport) -> Self {
        let n = r.subgroups.len();
        let mut c = match &r.first_failure {
            None => Self::pass(
                name,
                format!("{what}: fixed-point homology isomorphic on all {n} subgroups, consistent with a G-homotopy equivalence"),
            ),
            Some(f) => Self::fail(
                name,
                format!("{what}: induced map on fixed-point homology is not an isomorphism"),
                Some(Witness {
                    degree: Some(f.degree),
                    subgroup: Some(f.subgroup.clone()),
                    coefficients: Some(f.coefficients.to_string()),
                    ..Witness::default()
                }),
            ),
        };
        c.subgroups = Some(r.subgroups);
        c
    }

    pub fn error(name: impl Into<String>, e: impl std::fmt::Display) -> Self {
        Self::fail(name, format!("construction failed: {e}"), None)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub digest: String,
    pub truncation: Option<usize>,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub elapsed_ms: u128,
    pub caveats: Vec<String>,
}

/// SHA-256 of the serialized document, so whitespace and comments do not
/// change it.
pub fn digest(doc: &Document) -> String {
    let hash = Sha256::digest(serialize(doc).as_bytes());
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

impl Report {
    pub fn new(command: String, doc: &Document, truncation: Option<usize>, checks: Vec<Check>, elapsed_ms: u128, caveats: Vec<String>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self { command, digest: digest(doc), truncation, checks, pass, elapsed_ms, caveats }
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = |p: bool| if p { "PASS" } else { "FAIL" };
        writeln!(s, "command: {}", self.command).unwrap();
        writeln!(s, "digest: {}", self.digest).unwrap();
        match self.truncation {
            Some(t) => writeln!(s, "truncation: {t}").unwrap(),
            None => writeln!(s, "truncation: as stored").unwrap(),
        }
        for c in &self.checks {
            writeln!(s, "check {} {}: {}", c.name, verdict(c.pass), c.summary).unwrap();
            if let Some(w) = &c.witness {
                writeln!(s, "  witness: {}", w.render()).unwrap();
            }
        }
        for c in &self.caveats {
            writeln!(s, "caveat: {c}").unwrap();
        }
        writeln!(s, "result: {} ({} checks, {} ms)", verdict(self.pass), self.checks.len(), self.elapsed_ms).unwrap();
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
