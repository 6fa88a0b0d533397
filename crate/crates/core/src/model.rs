//! Ground defeasible theories: atoms, literals, rules and the superiority
//! relation, with dense integer indexing.
//!
//! A literal id is `2 * atom + sign_bit`, so closures over a theory are flat
//! arrays indexed by [`Literal::index`]. A [`Theory`] is only obtained from a
//! [`TheoryBuilder`] that validated it, and is immutable afterwards.

use std::collections::{HashMap, HashSet};
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleId(pub u32);

impl RuleId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A signed atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal(u32);

impl Literal {
    pub fn new(atom: AtomId, positive: bool) -> Self {
        Literal(atom.0 * 2 + u32::from(!positive))
    }

    pub fn positive(atom: AtomId) -> Self {
        Self::new(atom, true)
    }

    pub fn negative(atom: AtomId) -> Self {
        Self::new(atom, false)
    }

    pub fn from_index(index: usize) -> Self {
        Literal(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn atom(self) -> AtomId {
        AtomId(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    /// `~q`: flips the sign, keeps the atom.
    pub fn complement(self) -> Self {
        Literal(self.0 ^ 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    Strict,
    Defeasible,
    Defeater,
}

impl RuleKind {
    pub fn arrow(self) -> &'static str {
        match self {
            RuleKind::Strict => "->",
            RuleKind::Defeasible => "=>",
            RuleKind::Defeater => "~>",
        }
    }

    /// Strict and defeasible rules can fire; defeaters only attack.
    pub fn can_fire(self) -> bool {
        self != RuleKind::Defeater
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub label: String,
    pub kind: RuleKind,
    pub body: Vec<Literal>,
    pub head: Literal,
}

/// Problems that keep a draft theory from being frozen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Finding {
    DuplicateLabel {
        label: String,
    },
    UnknownLabel {
        label: String,
        superior: String,
        inferior: String,
    },
    SuperiorityCycle {
        labels: Vec<String>,
    },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::DuplicateLabel { label } => write!(f, "duplicate rule label `{label}`"),
            Finding::UnknownLabel {
                label,
                superior,
                inferior,
            } => write!(
                f,
                "superiority pair `{superior} > {inferior}` names unknown rule `{label}`"
            ),
            Finding::SuperiorityCycle { labels } => {
                write!(
                    f,
                    "superiority relation is cyclic through {}",
                    labels.join(", ")
                )
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, finding) in self.findings.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{finding}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// Collects atoms, facts, rules and superiority pairs in insertion order.
///
/// Literal strings use a leading `~` for negation, e.g. `"~fly(tweety)"`.
#[derive(Debug, Clone, Default)]
pub struct TheoryBuilder {
    atoms: Vec<String>,
    atom_ids: HashMap<String, AtomId>,
    facts: Vec<Literal>,
    rules: Vec<Rule>,
    superiority: Vec<(String, String)>,
}

impl TheoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Interns an atom name, returning its id.
    pub fn atom(&mut self, name: &str) -> AtomId {
        if let Some(&id) = self.atom_ids.get(name) {
            return id;
        }
        let id = AtomId(self.atoms.len() as u32);
        self.atoms.push(name.to_string());
        self.atom_ids.insert(name.to_string(), id);
        id
    }

    pub fn literal(&mut self, text: &str) -> Literal {
        let text = text.trim();
        match text.strip_prefix('~') {
            Some(rest) => Literal::negative(self.atom(rest.trim())),
            None => Literal::positive(self.atom(text)),
        }
    }

    pub fn fact(&mut self, literal: &str) -> &mut Self {
        let lit = self.literal(literal);
        self.fact_literal(lit)
    }

    pub fn fact_literal(&mut self, lit: Literal) -> &mut Self {
        if !self.facts.contains(&lit) {
            self.facts.push(lit);
        }
        self
    }

    pub fn rule(&mut self, label: &str, kind: RuleKind, body: &[&str], head: &str) -> &mut Self {
        let body: Vec<Literal> = body.iter().map(|b| self.literal(b)).collect();
        let head = self.literal(head);
        self.rule_literals(label, kind, body, head)
    }

    /// Adds a rule over already-interned literals. Duplicate body literals are
    /// dropped, keeping the first occurrence.
    pub fn rule_literals(
        &mut self,
        label: &str,
        kind: RuleKind,
        body: Vec<Literal>,
        head: Literal,
    ) -> &mut Self {
        let mut seen = HashSet::new();
        let body = body.into_iter().filter(|l| seen.insert(*l)).collect();
        self.rules.push(Rule {
            label: label.to_string(),
            kind,
            body,
            head,
        });
        self
    }

    pub fn superior(&mut self, winner: &str, loser: &str) -> &mut Self {
        let pair = (winner.to_string(), loser.to_string());
        if !self.superiority.contains(&pair) {
            self.superiority.push(pair);
        }
        self
    }

    pub fn validate(&self) -> ValidationReport {
        let mut findings = Vec::new();
        let mut labels: HashMap<&str, usize> = HashMap::new();
        for (i, rule) in self.rules.iter().enumerate() {
            if labels.insert(rule.label.as_str(), i).is_some() {
                findings.push(Finding::DuplicateLabel {
                    label: rule.label.clone(),
                });
            }
        }

        let mut graph = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = (0..self.rules.len()).map(|_| graph.add_node(())).collect();
        for (winner, loser) in &self.superiority {
            let mut known = true;
            for label in [winner, loser] {
                if !labels.contains_key(label.as_str()) {
                    known = false;
                    findings.push(Finding::UnknownLabel {
                        label: label.clone(),
                        superior: winner.clone(),
                        inferior: loser.clone(),
                    });
                }
            }
            if known {
                graph.add_edge(
                    nodes[labels[winner.as_str()]],
                    nodes[labels[loser.as_str()]],
                    (),
                );
            }
        }
        for scc in tarjan_scc(&graph) {
            let cyclic = scc.len() > 1 || graph.contains_edge(scc[0], scc[0]);
            if cyclic {
                let mut members: Vec<usize> = scc.iter().map(|n| n.index()).collect();
                members.sort_unstable();
                findings.push(Finding::SuperiorityCycle {
                    labels: members
                        .iter()
                        .map(|&i| self.rules[i].label.clone())
                        .collect(),
                });
            }
        }
        ValidationReport { findings }
    }

    pub fn build(self) -> Result<Theory, ValidationReport> {
        let report = self.validate();
        if !report.is_empty() {
            return Err(report);
        }
        let label_ids: HashMap<String, RuleId> = self
            .rules
            .iter()
            .enumerate()
            .map(|(i, r)| (r.label.clone(), RuleId(i as u32)))
            .collect();
        let superiority = self
            .superiority
            .iter()
            .map(|(w, l)| (label_ids[w], label_ids[l]))
            .collect();
        Ok(Theory::assemble(
            self.atoms,
            self.facts,
            self.rules,
            superiority,
        ))
    }
}

/// A validated, immutable ground defeasible theory `(F, R, >)`.
#[derive(Debug, Clone)]
pub struct Theory {
    atoms: Vec<String>,
    atom_ids: HashMap<String, AtomId>,
    facts: Vec<Literal>,
    is_fact: Vec<bool>,
    rules: Vec<Rule>,
    label_ids: HashMap<String, RuleId>,
    superiority: Vec<(RuleId, RuleId)>,
    superior_pairs: HashSet<(RuleId, RuleId)>,
    beaten_by: Vec<Vec<RuleId>>,
    by_head: Vec<Vec<RuleId>>,
    by_body: Vec<Vec<RuleId>>,
}

impl Theory {
    fn assemble(
        atoms: Vec<String>,
        facts: Vec<Literal>,
        rules: Vec<Rule>,
        superiority: Vec<(RuleId, RuleId)>,
    ) -> Self {
        let literal_count = atoms.len() * 2;
        let mut is_fact = vec![false; literal_count];
        for f in &facts {
            is_fact[f.index()] = true;
        }
        let mut by_head = vec![Vec::new(); literal_count];
        let mut by_body = vec![Vec::new(); literal_count];
        for (i, rule) in rules.iter().enumerate() {
            by_head[rule.head.index()].push(RuleId(i as u32));
            for b in &rule.body {
                by_body[b.index()].push(RuleId(i as u32));
            }
        }
        let mut beaten_by = vec![Vec::new(); rules.len()];
        for &(winner, loser) in &superiority {
            beaten_by[loser.index()].push(winner);
        }
        let atom_ids = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), AtomId(i as u32)))
            .collect();
        let label_ids = rules
            .iter()
            .enumerate()
            .map(|(i, r)| (r.label.clone(), RuleId(i as u32)))
            .collect();
        Theory {
            atoms,
            atom_ids,
            superior_pairs: superiority.iter().copied().collect(),
            facts,
            is_fact,
            rules,
            label_ids,
            superiority,
            beaten_by,
            by_head,
            by_body,
        }
    }

    /// Same atom table, different facts/rules/superiority. Used by
    /// transformations that must keep literal ids stable.
    pub(crate) fn with_parts(
        &self,
        facts: Vec<Literal>,
        rules: Vec<Rule>,
        superiority: Vec<(RuleId, RuleId)>,
    ) -> Theory {
        Theory::assemble(self.atoms.clone(), facts, rules, superiority)
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn literal_count(&self) -> usize {
        self.atoms.len() * 2
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        (0..self.literal_count()).map(Literal::from_index)
    }

    pub fn atom_name(&self, atom: AtomId) -> &str {
        &self.atoms[atom.0 as usize]
    }

    pub fn atom_id(&self, name: &str) -> Option<AtomId> {
        self.atom_ids.get(name).copied()
    }

    /// Resolves `name` or `~name`.
    pub fn find_literal(&self, text: &str) -> Option<Literal> {
        let text = text.trim();
        match text.strip_prefix('~') {
            Some(rest) => self.atom_id(rest.trim()).map(Literal::negative),
            None => self.atom_id(text).map(Literal::positive),
        }
    }

    pub fn literal_name(&self, lit: Literal) -> String {
        let atom = self.atom_name(lit.atom());
        if lit.is_positive() {
            atom.to_string()
        } else {
            format!("~{atom}")
        }
    }

    pub fn facts(&self) -> &[Literal] {
        &self.facts
    }

    pub fn is_fact(&self, lit: Literal) -> bool {
        self.is_fact[lit.index()]
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, id: RuleId) -> &Rule {
        &self.rules[id.index()]
    }

    pub fn rule_ids(&self) -> impl Iterator<Item = RuleId> {
        (0..self.rules.len() as u32).map(RuleId)
    }

    pub fn rule_id(&self, label: &str) -> Option<RuleId> {
        self.label_ids.get(label).copied()
    }

    pub fn superiority(&self) -> &[(RuleId, RuleId)] {
        &self.superiority
    }

    pub fn is_superior(&self, winner: RuleId, loser: RuleId) -> bool {
        self.superior_pairs.contains(&(winner, loser))
    }

    /// Rules `t` with `t > loser`.
    pub fn beaten_by(&self, loser: RuleId) -> &[RuleId] {
        &self.beaten_by[loser.index()]
    }

    /// `R[q]`: all rules with head `q`, in rule order.
    pub fn rules_with_head(&self, q: Literal) -> &[RuleId] {
        &self.by_head[q.index()]
    }

    /// Rules having `q` in their body.
    pub fn rules_with_body_literal(&self, q: Literal) -> &[RuleId] {
        &self.by_body[q.index()]
    }

    /// `R[q]`, `R_s[q]` or `R_sd[q]` depending on the flags.
    pub fn rules_for(&self, q: Literal, strict_only: bool, sd_only: bool) -> Vec<RuleId> {
        self.rules_with_head(q)
            .iter()
            .copied()
            .filter(|&r| {
                let kind = self.rule(r).kind;
                if strict_only {
                    kind == RuleKind::Strict
                } else if sd_only {
                    kind.can_fire()
                } else {
                    true
                }
            })
            .collect()
    }

    pub fn has_strict_rules(&self) -> bool {
        self.rules.iter().any(|r| r.kind == RuleKind::Strict)
    }
}

/// Equality is equality of canonical serialized forms.
impl PartialEq for Theory {
    fn eq(&self, other: &Self) -> bool {
        crate::io::serialize_theory(self) == crate::io::serialize_theory(other)
    }
}

impl Eq for Theory {}
