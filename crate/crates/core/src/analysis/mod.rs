//! Structural analysis of theories and the certificates built on it.

mod decisive;
mod regime;
mod simplify;
mod structure;

use serde::Serialize;

pub use decisive::{
    certify_decisiveness, check_undecided_lemma, CertStatus, DecisivenessCertificate,
    LemmaViolation,
};
pub use regime::{
    certify_regime, classify_regime, Basis, Condition, Discharged, NotATarget, Regime,
    RegimeCertificate,
};
pub use simplify::simplify;
pub use structure::{
    classify_structure, conflict_dependencies, conflicted_literals, dependency_graph, detect_loops,
    fact_contradicts_rule_head, is_fact_deficient, layer_map_admissible, DependencyGraph, Loops,
    Scope, StructureReport,
};

use crate::closure::Tag;
use crate::model::{Literal, Theory};

/// Everything the analyzer knows about a theory, with literals by name.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub atoms: usize,
    pub rules: usize,
    pub facts: usize,
    pub superiority_pairs: usize,
    pub hierarchical: bool,
    pub semi_hierarchical: bool,
    pub strict_semi_hierarchical: bool,
    pub sd_semi_hierarchical: bool,
    pub fact_deficient: bool,
    pub empty_superiority: bool,
    pub looping_literals: Vec<String>,
    pub self_loops: Vec<String>,
    pub strict_loops: Vec<String>,
    pub conflicted_literals: Vec<String>,
    /// Atom name to layer, when the theory is hierarchical.
    pub atom_layers: Option<Vec<(String, usize)>>,
    pub decisiveness: Vec<DecisivenessEntry>,
    pub regimes: Vec<RegimeCertificate>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecisivenessEntry {
    pub tag: Tag,
    pub status: CertStatus,
    pub basis: String,
    pub witnesses: Vec<String>,
}

/// Structure, decisiveness for every tag (semantic checks when
/// `allow_semantic`) and the regime for every conventional target.
pub fn analyze(theory: &Theory, allow_semantic: bool) -> AnalysisReport {
    let s = classify_structure(theory);
    let names = |lits: &[Literal]| lits.iter().map(|&l| theory.literal_name(l)).collect();
    let decisiveness = Tag::ALL
        .iter()
        .map(|&tag| {
            let c = decisive::certify_with(theory, &s, tag, allow_semantic);
            DecisivenessEntry {
                tag,
                status: c.status,
                basis: c.basis,
                witnesses: names(&c.witnesses),
            }
        })
        .collect();
    let regimes = [
        Tag::Partial,
        Tag::PartialStar,
        Tag::DeltaAp,
        Tag::DeltaApStar,
        Tag::Supp,
        Tag::SuppStar,
    ]
    .iter()
    .map(|&t| classify_regime(theory, t).expect("conventional target"))
    .collect();
    AnalysisReport {
        atoms: theory.atom_count(),
        rules: theory.rules().len(),
        facts: theory.facts().len(),
        superiority_pairs: theory.superiority().len(),
        hierarchical: s.hierarchical,
        semi_hierarchical: s.semi_hierarchical,
        strict_semi_hierarchical: s.strict_semi_hierarchical,
        sd_semi_hierarchical: s.sd_semi_hierarchical,
        fact_deficient: s.fact_deficient,
        empty_superiority: s.empty_superiority,
        looping_literals: names(&s.looping_literals),
        self_loops: names(&s.self_loops),
        strict_loops: names(&s.strict_loops),
        conflicted_literals: names(&s.conflicted_literals),
        atom_layers: s.atom_layers.map(|layers| {
            layers
                .iter()
                .enumerate()
                .map(|(a, &l)| {
                    (
                        theory.atom_name(crate::model::AtomId(a as u32)).to_string(),
                        l,
                    )
                })
                .collect()
        }),
        decisiveness,
        regimes,
    }
}
