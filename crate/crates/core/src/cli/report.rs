//! Report documents (JSON schema `uddpir.report.v1`) and their text rendering.
//!
//! Symbols, positions, and permutations are 1-based throughout. Rationals are
//! strings `a/b`, or plain integers when the denominator is 1.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Error;

pub const SCHEMA_ID: &str = "uddpir.report.v1";

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub input: Input,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_distance: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separation_vector: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pir_level: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub demand: Option<Vec<u64>>,
    /// Data position served by each demand entry.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    /// Hyperplanes with too few columns outside them.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hyperplane_violations: Option<Vec<HyperplaneViolation>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ilp: Option<Ilp>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<Search>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Input {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nmax: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub satisfied: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_symbol: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_maximum: Option<u64>,
    pub symbols: Vec<SymbolWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymbolWitness {
    pub symbol: usize,
    pub demand: u64,
    pub recovery_sets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HyperplaneViolation {
    pub normal: String,
    pub outside: u64,
    pub required: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub griesmer_sum: u64,
    pub fractional: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Ilp {
    pub mu: u64,
    pub optimal: bool,
    pub variables: usize,
    pub constraints: usize,
    /// Nonzero multiplicities as `vec:count`.
    pub assignment: Vec<String>,
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix_path: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Search {
    pub mode: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    pub floor: u64,
    pub baseline: u64,
    pub examined: u64,
    /// Matrix file text of the witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_path: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema: SCHEMA_ID,
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn verdict(&mut self, name: &str, pass: bool) {
        self.verdicts.push(Verdict {
            name: name.to_string(),
            pass,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |key: &str, value: String| {
            let _ = writeln!(out, "{key}: {value}");
        };
        line("command", self.command.clone());
        let i = &self.input;
        if let Some(p) = &i.path {
            line("input", p.clone());
        }
        if let Some(q) = i.q {
            let field = match &i.modulus {
                Some(m) => format!("GF({q}) modulus {m}"),
                None => format!("GF({q})"),
            };
            line("field", field);
        }
        if let (Some(k), Some(n)) = (i.k, i.n) {
            line("size", format!("{k} x {n}"));
        }
        if let Some(m) = &i.mode {
            line("mode", m.clone());
        }
        if let Some(n) = i.nmax {
            line("nmax", n.to_string());
        }
        if let Some(r) = self.rank {
            line("rank", r.to_string());
        }
        if let Some(d) = self.min_distance {
            line("min_distance", d.to_string());
        }
        if let Some(s) = &self.separation_vector {
            line("separation_vector", join(s));
        }
        if let Some(s) = &self.pir_level {
            line("pir_level", join(s));
        }
        if let Some(s) = &self.demand {
            line("demand", join(s));
        }
        if let Some(s) = &self.permutation {
            line("permutation", join(s));
        }
        if let Some(c) = &self.certificate {
            let head = match (c.failing_symbol, c.failing_maximum) {
                (Some(j), Some(m)) => format!("refuted at symbol {j} (maximum {m})"),
                _ => "satisfied".to_string(),
            };
            line("certificate", head);
            for w in &c.symbols {
                let sets: Vec<String> = w
                    .recovery_sets
                    .iter()
                    .map(|s| format!("{{{}}}", join_with(s, ",")))
                    .collect();
                line(&format!("  symbol {} (demand {})", w.symbol, w.demand), sets.join(" "));
            }
        }
        if let Some(v) = &self.hyperplane_violations {
            let items: Vec<String> = v
                .iter()
                .map(|h| format!("{} ({} < {})", h.normal, h.outside, h.required))
                .collect();
            line(
                "hyperplane_violations",
                if items.is_empty() {
                    "none".to_string()
                } else {
                    items.join(", ")
                },
            );
        }
        if let Some(b) = &self.bounds {
            line("griesmer_sum", b.griesmer_sum.to_string());
            line("fractional", b.fractional.clone());
            if let Some(mu) = b.mu {
                line("mu", mu.to_string());
            }
        }
        if let Some(p) = &self.ilp {
            line("ilp", format!("mu {} ({} nodes)", p.mu, p.nodes));
            line("assignment", p.assignment.join(" "));
            if let Some(path) = &p.matrix_path {
                line("matrix", path.clone());
            }
        }
        if let Some(s) = &self.search {
            match s.length {
                Some(n) => line("length", format!("{n} vs baseline {}", s.baseline)),
                None => line("length", format!("none <= {}", i.nmax.unwrap_or(0))),
            }
            line("floor", s.floor.to_string());
            line("examined", s.examined.to_string());
            if let Some(p) = &s.witness_path {
                line("witness", p.clone());
            }
        }
        if !self.verdicts.is_empty() {
            let v: Vec<String> = self
                .verdicts
                .iter()
                .map(|v| format!("{} {}", v.name, if v.pass { "pass" } else { "fail" }))
                .collect();
            line("verdicts", v.join(", "));
        }
        if let Some(e) = &self.error {
            line("error", format!("{} ({})", e.message, e.kind));
        }
        if let Some(model) = self.ilp.as_ref().and_then(|p| p.model.as_ref()) {
            out.push('\n');
            out.push_str(model);
        }
        if let Some(w) = self
            .search
            .as_ref()
            .filter(|s| s.witness_path.is_none())
            .and_then(|s| s.witness.as_ref())
        {
            out.push('\n');
            out.push_str(w);
        }
        out
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    join_with(v, " ")
}

fn join_with<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

/// Stable snake_case name of a library error.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NonPrimeCharacteristic(_) => "non_prime_characteristic",
        Error::ZeroDegree => "zero_degree",
        Error::FieldTooLarge(_) => "field_too_large",
        Error::NotPrimePower(_) => "not_prime_power",
        Error::MissingModulus { .. } => "missing_modulus",
        Error::MalformedModulus { .. } => "malformed_modulus",
        Error::ReducibleModulus { .. } => "reducible_modulus",
        Error::InvalidElement { .. } => "invalid_element",
        Error::ZeroInverse => "zero_inverse",
        Error::NoRows => "no_rows",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::IndexOutOfRange { .. } => "index_out_of_range",
        Error::FieldMismatch => "field_mismatch",
        Error::RankDeficient { .. } => "rank_deficient",
        Error::LengthMismatch { .. } => "length_mismatch",
        Error::DemandNotSorted { .. } => "demand_not_sorted",
        Error::TooManyColumns { .. } => "too_many_columns",
        Error::InfeasibleAssignment { .. } => "infeasible_assignment",
        Error::BoundBelowFloor { .. } => "bound_below_floor",
        Error::BoundExceeded { .. } => "bound_exceeded",
        Error::ScaleExceeded { .. } => "scale_exceeded",
    }
}
