//! Grounding: every rule with variables stands for all its instances over the
//! constants of the theory.

use std::collections::HashMap;

use serde::Serialize;

use super::parse::{Diagnostic, DiagnosticKind, Pos, SourceLiteral, SourceTheory, Term};
use crate::model::{Finding, Theory, TheoryBuilder};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub label: String,
    /// `(variable, constant)` in order of first appearance of the variable.
    pub binding: Vec<(String, String)>,
}

/// Instances generated for each source rule that has variables, in source
/// order. Ground rules keep their label and are not listed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GroundingMap {
    pub rules: Vec<(String, Vec<Instance>)>,
}

impl GroundingMap {
    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn instances(&self, label: &str) -> Option<&[Instance]> {
        self.rules
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, i)| i.as_slice())
    }
}

/// Constants in order of first appearance, facts before rules.
pub fn constants(src: &SourceTheory) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let lits = src.facts.iter().chain(
        src.rules
            .iter()
            .flat_map(|r| r.body.iter().chain(std::iter::once(&r.head))),
    );
    for lit in lits {
        for t in &lit.args {
            if let Term::Const(c) = t {
                if !out.contains(c) {
                    out.push(c.clone());
                }
            }
        }
    }
    out
}

fn ground_name(lit: &SourceLiteral, binding: &HashMap<&str, &str>) -> String {
    let name = lit.atom_name(&|v| binding[v].to_string());
    if lit.positive {
        name
    } else {
        format!("~{name}")
    }
}

/// Instantiates `src`. Errors: a fact with variables, or a rule with
/// variables when the theory has no constants, or a theory that fails
/// validation after instantiation.
pub fn ground(src: &SourceTheory) -> Result<(Theory, GroundingMap), Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let universe = constants(src);
    let mut builder = TheoryBuilder::new();
    for fact in &src.facts {
        if fact.is_ground() {
            builder.fact(&ground_name(fact, &HashMap::new()));
        } else {
            diags.push(Diagnostic {
                kind: DiagnosticKind::Grounding,
                pos: fact.pos,
                message: format!(
                    "fact `{}` is not ground",
                    fact.atom_name(&|v| v.to_string())
                ),
            });
        }
    }

    let mut map = GroundingMap::default();
    let mut instance_labels: HashMap<&str, Vec<String>> = HashMap::new();
    for rule in &src.rules {
        let vars = rule.variables();
        if vars.is_empty() {
            let body: Vec<String> = rule
                .body
                .iter()
                .map(|l| ground_name(l, &HashMap::new()))
                .collect();
            let body: Vec<&str> = body.iter().map(String::as_str).collect();
            builder.rule(
                &rule.label,
                rule.kind,
                &body,
                &ground_name(&rule.head, &HashMap::new()),
            );
            instance_labels.insert(&rule.label, vec![rule.label.clone()]);
            continue;
        }
        if universe.is_empty() {
            diags.push(Diagnostic {
                kind: DiagnosticKind::Grounding,
                pos: rule.pos,
                message: format!(
                    "rule `{}` has variables but the theory has no constants",
                    rule.label
                ),
            });
            continue;
        }
        // Odometer over the universe, first variable most significant.
        let mut digits = vec![0usize; vars.len()];
        let mut instances = Vec::new();
        loop {
            let binding: HashMap<&str, &str> = vars
                .iter()
                .zip(&digits)
                .map(|(v, &d)| (v.as_str(), universe[d].as_str()))
                .collect();
            let label = format!("{}#{}", rule.label, instances.len());
            let body: Vec<String> = rule.body.iter().map(|l| ground_name(l, &binding)).collect();
            let body: Vec<&str> = body.iter().map(String::as_str).collect();
            builder.rule(&label, rule.kind, &body, &ground_name(&rule.head, &binding));
            instances.push(Instance {
                label,
                binding: vars
                    .iter()
                    .zip(&digits)
                    .map(|(v, &d)| (v.clone(), universe[d].clone()))
                    .collect(),
            });
            let mut i = digits.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < universe.len() {
                    break;
                }
                digits[i] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
        instance_labels.insert(
            &rule.label,
            instances.iter().map(|i| i.label.clone()).collect(),
        );
        map.rules.push((rule.label.clone(), instances));
    }

    let mut superiority_pos: HashMap<(String, String), Pos> = HashMap::new();
    for pair in &src.superiority {
        // Unknown labels pass through so validation reports them.
        let winners = instance_labels
            .get(pair.winner.as_str())
            .cloned()
            .unwrap_or_else(|| vec![pair.winner.clone()]);
        let losers = instance_labels
            .get(pair.loser.as_str())
            .cloned()
            .unwrap_or_else(|| vec![pair.loser.clone()]);
        for w in &winners {
            for l in &losers {
                builder.superior(w, l);
                superiority_pos
                    .entry((w.clone(), l.clone()))
                    .or_insert(pair.pos);
            }
        }
    }

    if !diags.is_empty() {
        return Err(diags);
    }
    builder.build().map(|t| (t, map)).map_err(|report| {
        let first_rule = src
            .rules
            .first()
            .map_or(Pos { line: 1, column: 1 }, |r| r.pos);
        report
            .findings
            .into_iter()
            .map(|finding| {
                let pos = match &finding {
                    Finding::UnknownLabel {
                        superior, inferior, ..
                    } => superiority_pos
                        .get(&(superior.clone(), inferior.clone()))
                        .copied()
                        .unwrap_or(first_rule),
                    Finding::SuperiorityCycle { labels } => src
                        .superiority
                        .iter()
                        .find(|p| {
                            labels
                                .iter()
                                .any(|l| l == &p.winner || l.starts_with(&format!("{}#", p.winner)))
                        })
                        .map_or(first_rule, |p| p.pos),
                    Finding::DuplicateLabel { label } => src
                        .rules
                        .iter()
                        .filter(|r| &r.label == label)
                        .nth(1)
                        .map_or(first_rule, |r| r.pos),
                };
                Diagnostic {
                    kind: DiagnosticKind::Validation,
                    pos,
                    message: finding.to_string(),
                }
            })
            .collect()
    })
}
