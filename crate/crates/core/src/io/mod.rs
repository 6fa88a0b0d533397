//! Reading, grounding and writing theories and conclusions.

mod emit;
mod ground;
mod parse;

use std::fmt;

pub use emit::{emit_conclusions, Format};
pub use ground::{constants, ground, GroundingMap, Instance};
pub use parse::{
    parse, Diagnostic, DiagnosticKind, Pos, SourceLiteral, SourceRule, SourceSuperiority,
    SourceTheory, Term,
};

use crate::model::Theory;

/// Canonical text: facts, then rules, then superiority pairs, each in
/// theory order. Parsing and grounding the output gives back an equal theory.
pub fn serialize_theory(theory: &Theory) -> String {
    let mut out = String::new();
    for &f in theory.facts() {
        out.push_str(&format!("fact {}.\n", theory.literal_name(f)));
    }
    for rule in theory.rules() {
        let body: Vec<String> = rule.body.iter().map(|&l| theory.literal_name(l)).collect();
        let sep = if body.is_empty() { "" } else { " " };
        out.push_str(&format!(
            "{}: {}{sep}{} {}.\n",
            rule.label,
            body.join(", "),
            rule.kind.arrow(),
            theory.literal_name(rule.head)
        ));
    }
    for &(w, l) in theory.superiority() {
        out.push_str(&format!(
            "{} > {}.\n",
            theory.rule(w).label,
            theory.rule(l).label
        ));
    }
    out
}

/// Diagnostics from reading a theory file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadError {
    pub diagnostics: Vec<Diagnostic>,
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for LoadError {}

/// Parses and grounds `text`.
pub fn load_theory(text: &str) -> Result<(Theory, GroundingMap), LoadError> {
    let src = parse(text).map_err(|diagnostics| LoadError { diagnostics })?;
    ground(&src).map_err(|diagnostics| LoadError { diagnostics })
}

/// [`load_theory`] without the grounding map.
pub fn read_theory(text: &str) -> Result<Theory, LoadError> {
    load_theory(text).map(|(t, _)| t)
}
