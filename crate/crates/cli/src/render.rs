use std::fmt::Write as _;

use num_complex::Complex;
use paradigms::incidence::IncidenceMatrix;
use paradigms::io::{classical_to_json, cmatrix_to_json, incidence_to_json, table_to_json, UniverseDocument};
use paradigms::quantum::Distinguishability;
use paradigms::scalar::fraction_string;
use paradigms::{ExactDensity, ExactTable, QuantumDensity64, Rational};
use serde_json::{json, Value};

pub struct SubsetSummary {
    pub name: String,
    pub members: String,
    pub dnf: Result<String, String>,
}

pub struct UniverseSummary {
    pub doc: UniverseDocument,
    pub complete: Option<bool>,
    pub cells: Option<(usize, usize)>,
    pub join: String,
    pub subsets: Vec<SubsetSummary>,
}

pub struct BlockProb {
    pub block: String,
    pub members: String,
    pub probability: Rational,
}

pub enum Output {
    Universe(UniverseSummary),
    Incidence(IncidenceMatrix),
    Classical(ExactDensity),
    BlockProbs(Vec<BlockProb>),
    Conditioned { block: String, probability: Rational, posterior: ExactDensity },
    Quantum(QuantumDensity64),
    Outcomes(Vec<(f64, f64)>),
    Sample { seed: u64, eigenvalue: f64, posterior: QuantumDensity64 },
    Distinguish(Distinguishability<f64>),
    Table(ExactTable),
}

/// Rounds to 12 places so float noise does not leak into text output.
fn num(x: f64) -> String {
    let r = (x * 1e12).round() / 1e12;
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r}")
}

fn complex(z: Complex<f64>) -> String {
    let (re, im) = (num(z.re), num(z.im));
    match (re.as_str(), im.as_str()) {
        (_, "0") => re,
        ("0", _) => format!("{im}i"),
        _ if im.starts_with('-') => format!("{re}{im}i"),
        _ => format!("{re}+{im}i"),
    }
}

fn grid(cells: Vec<Vec<String>>) -> String {
    let w = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>w$}")).collect();
        let _ = writeln!(out, "{}", line.join("  "));
    }
    out
}

fn quantum_grid(rho: &QuantumDensity64) -> String {
    grid(rho.matrix().rows().into_iter().map(|r| r.into_iter().map(complex).collect()).collect())
}

fn outcome_table(header: &str, rows: &[(f64, f64)]) -> String {
    let mut out = format!("| eigenvalue | {header} |\n|---|---|\n");
    for (v, p) in rows {
        let _ = writeln!(out, "| {} | {} |", num(*v), num(*p));
    }
    out
}

fn outcomes_json(rows: &[(f64, f64)]) -> Value {
    rows.iter().map(|(v, p)| json!({ "eigenvalue": v, "probability": p })).collect()
}

impl Output {
    pub fn markdown(&self) -> String {
        match self {
            Output::Universe(s) => universe_markdown(s),
            Output::Incidence(a) => a.to_string(),
            Output::Classical(rho) => format!("form: {}\n\n{rho}", rho.form().as_str()),
            Output::BlockProbs(rows) => {
                let mut out = String::from("| block | members | probability |\n|---|---|---|\n");
                for r in rows {
                    let _ = writeln!(out, "| {} | {} | {} |", r.block, r.members, fraction_string(&r.probability));
                }
                out
            }
            Output::Conditioned { block, probability, posterior } => format!(
                "block: {block}\nprobability: {}\nform: {}\n\n{posterior}",
                fraction_string(probability),
                posterior.form().as_str()
            ),
            Output::Quantum(rho) => quantum_grid(rho),
            Output::Outcomes(rows) => outcome_table("probability", rows),
            Output::Sample { seed, eigenvalue, posterior } => {
                format!("seed: {seed}\neigenvalue: {}\n\n{}", num(*eigenvalue), quantum_grid(posterior))
            }
            Output::Distinguish(d) => {
                let mut out = String::from("| eigenvalue | pure | decohered |\n|---|---|---|\n");
                for (a, b) in d.pure.iter().zip(&d.decohered) {
                    let _ = writeln!(out, "| {} | {} | {} |", num(a.0), num(a.1), num(b.1));
                }
                let _ = writeln!(out, "\ngap: {}", num(d.gap));
                out
            }
            Output::Table(t) => t.to_markdown(),
        }
    }

    pub fn json(&self) -> Value {
        match self {
            Output::Universe(s) => {
                let subsets: Vec<Value> =
                    s.subsets.iter().map(|x| match &x.dnf {
                        Ok(f) => json!({ "name": x.name, "members": x.members, "dnf": f }),
                        Err(e) => json!({ "name": x.name, "members": x.members, "dnf": null, "reason": e }),
                    }).collect();
                json!({
                    "universe": s.doc.to_json(),
                    "complete": s.complete,
                    "cells": s.cells.map(|(c, bound)| json!({ "count": c, "bound": bound })),
                    "join": s.join,
                    "subsets": subsets,
                })
            }
            Output::Incidence(a) => json!(incidence_to_json(a)),
            Output::Classical(rho) => json!(classical_to_json(rho)),
            Output::BlockProbs(rows) => rows
                .iter()
                .map(|r| json!({ "block": r.block, "members": r.members, "probability": fraction_string(&r.probability) }))
                .collect(),
            Output::Conditioned { block, probability, posterior } => json!({
                "block": block,
                "probability": fraction_string(probability),
                "posterior": classical_to_json(posterior),
            }),
            Output::Quantum(rho) => json!(cmatrix_to_json(rho.matrix())),
            Output::Outcomes(rows) => outcomes_json(rows),
            Output::Sample { seed, eigenvalue, posterior } => json!({
                "seed": seed,
                "eigenvalue": eigenvalue,
                "posterior": cmatrix_to_json(posterior.matrix()),
            }),
            Output::Distinguish(d) => json!({
                "pure": outcomes_json(&d.pure),
                "decohered": outcomes_json(&d.decohered),
                "gap": d.gap,
            }),
            Output::Table(t) => json!(table_to_json(t)),
        }
    }
}

fn universe_markdown(s: &UniverseSummary) -> String {
    let doc = &s.doc;
    let mut out = String::new();
    let mut header = vec!["element".to_string()];
    header.extend(doc.attributes.iter().map(|a| a.name().to_string()));
    header.extend(doc.subsets.iter().map(|(n, _)| n.clone()));
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    for (j, label) in doc.universe.labels().iter().enumerate() {
        let mut row = vec![label.clone()];
        row.extend(doc.attributes.iter().map(|a| a.value(j).to_string()));
        row.extend(doc.subsets.iter().map(|(_, x)| if x.contains(j) { "1" } else { "0" }.to_string()));
        let _ = writeln!(out, "| {} |", row.join(" | "));
    }
    out.push('\n');
    if let Some(c) = s.complete {
        let _ = writeln!(out, "complete: {}", if c { "yes" } else { "no" });
    }
    if let Some((c, bound)) = s.cells {
        let _ = writeln!(out, "classifiable cells: {c} of {bound}");
    }
    let _ = writeln!(out, "join: {}", s.join);
    for x in &s.subsets {
        let _ = match &x.dnf {
            Ok(f) => writeln!(out, "{} = {}: {f}", x.name, x.members),
            Err(e) => writeln!(out, "{} = {}: no DNF ({e})", x.name, x.members),
        };
    }
    out
}
