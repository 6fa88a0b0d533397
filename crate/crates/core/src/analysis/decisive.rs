//! Decisiveness: every literal gets `+d` or `-d`.

use serde::Serialize;

use super::structure::{classify_structure, StructureReport};
use crate::closure::{ClosureSet, Status, Tag};
use crate::engine;
use crate::model::{Literal, Theory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertStatus {
    /// Follows from the structure of the rules.
    CertifiedSyntactic,
    /// Checked by computing the closure of this theory.
    CertifiedSemantic,
    Unknown,
}

impl CertStatus {
    pub fn is_certified(self) -> bool {
        self != CertStatus::Unknown
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisivenessCertificate {
    pub tag: Tag,
    pub status: CertStatus,
    /// What the certificate rests on, e.g. `hierarchical`.
    pub basis: String,
    /// Undecided literals found by a failed semantic check.
    pub witnesses: Vec<Literal>,
}

/// Structural reason for `tag`-decisiveness, if any.
fn syntactic_basis(s: &StructureReport, tag: Tag) -> Option<&'static str> {
    if s.hierarchical {
        return Some("hierarchical");
    }
    match tag {
        Tag::Delta if s.no_strict_rules => Some("no strict rules"),
        Tag::Delta if s.strict_semi_hierarchical => Some("strict rules semi-hierarchical"),
        Tag::Lambda if s.sd_semi_hierarchical => {
            Some("strict and defeasible rules semi-hierarchical")
        }
        _ => None,
    }
}

pub fn certify_decisiveness(
    theory: &Theory,
    tag: Tag,
    allow_semantic: bool,
) -> DecisivenessCertificate {
    certify_with(theory, &classify_structure(theory), tag, allow_semantic)
}

pub(crate) fn certify_with(
    theory: &Theory,
    structure: &StructureReport,
    tag: Tag,
    allow_semantic: bool,
) -> DecisivenessCertificate {
    if let Some(basis) = syntactic_basis(structure, tag) {
        return DecisivenessCertificate {
            tag,
            status: CertStatus::CertifiedSyntactic,
            basis: basis.to_string(),
            witnesses: Vec::new(),
        };
    }
    if !allow_semantic {
        return DecisivenessCertificate {
            tag,
            status: CertStatus::Unknown,
            basis: "no structural condition applies".to_string(),
            witnesses: Vec::new(),
        };
    }
    match engine::closure(theory, tag) {
        Ok(set) => {
            let witnesses: Vec<Literal> = set.closure(tag).undecided_literals().collect();
            let status = if witnesses.is_empty() {
                CertStatus::CertifiedSemantic
            } else {
                CertStatus::Unknown
            };
            DecisivenessCertificate {
                tag,
                status,
                basis: "closure computed".to_string(),
                witnesses,
            }
        }
        Err(e) => DecisivenessCertificate {
            tag,
            status: CertStatus::Unknown,
            basis: format!("closure failed: {e}"),
            witnesses: Vec::new(),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaViolation {
    pub literal: Literal,
    /// The conclusion that should hold but does not, e.g. `+partial q`.
    pub missing: String,
}

/// For every Δ-undecided literal `p` of a ∂-decisive theory, `-Δ ~p`,
/// `+∂ p`, `-∂ ~p` and `+λ p` must all hold. `closures` must contain Δ, λ
/// and ∂.
pub fn check_undecided_lemma(theory: &Theory, closures: &ClosureSet) -> Vec<LemmaViolation> {
    let mut out = Vec::new();
    for p in closures.closure(Tag::Delta).undecided_literals() {
        let np = p.complement();
        let wanted = [
            (Tag::Delta, np, Status::Minus),
            (Tag::Partial, p, Status::Plus),
            (Tag::Partial, np, Status::Minus),
            (Tag::Lambda, p, Status::Plus),
        ];
        for (tag, lit, status) in wanted {
            if closures.status(tag, lit) != status {
                let sign = if status == Status::Plus { '+' } else { '-' };
                out.push(LemmaViolation {
                    literal: p,
                    missing: format!("{sign}{tag} {}", theory.literal_name(lit)),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::read_theory;

    #[test]
    fn selfloop_certificates() {
        let t = read_theory("r: q -> q.\ns: => q.").unwrap();
        let c = certify_decisiveness(&t, Tag::Partial, true);
        assert_eq!(c.status, CertStatus::CertifiedSemantic);
        let c = certify_decisiveness(&t, Tag::Delta, true);
        assert_eq!(c.status, CertStatus::Unknown);
        assert_eq!(c.witnesses, vec![t.find_literal("q").unwrap()]);
        assert_eq!(
            certify_decisiveness(&t, Tag::Partial, false).status,
            CertStatus::Unknown
        );
    }

    #[test]
    fn selfloop_lemma_holds() {
        let t = read_theory("r: q -> q.\ns: => q.").unwrap();
        let all = engine::all_closures(&t).unwrap();
        assert!(check_undecided_lemma(&t, &all).is_empty());
    }

    #[test]
    fn no_strict_rules_is_delta_decisive() {
        let t = read_theory("r: p => p.").unwrap();
        let c = certify_decisiveness(&t, Tag::Delta, false);
        assert_eq!(c.status, CertStatus::CertifiedSyntactic);
        assert_eq!(c.basis, "no strict rules");
    }
}
