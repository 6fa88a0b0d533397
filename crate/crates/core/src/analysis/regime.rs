//! Which relationship between the parallel logic and a conventional target
//! can be certified for a theory.

use std::fmt;

use serde::Serialize;

use super::decisive::{certify_with, CertStatus};
use super::structure::{
    classify_structure, conflict_dependencies, fact_contradicts_rule_head, StructureReport,
};
use crate::closure::Tag;
use crate::model::Theory;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// The parallel closure equals the target closure, both signs.
    ExactSubstitution,
    /// The positive parallel closure equals the positive target closure.
    ExactEquality,
    /// Parallel positives are target positives.
    UnderApprox,
    /// Target positives are parallel positives.
    OverApprox,
    None,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::ExactSubstitution => "exact_substitution",
            Regime::ExactEquality => "exact_equality",
            Regime::UnderApprox => "under_approx",
            Regime::OverApprox => "over_approx",
            Regime::None => "none",
        })
    }
}

/// A checkable property of a theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "tag", rename_all = "snake_case")]
pub enum Condition {
    NoConflictedDependsOnConflicted,
    NoConflictedDependsOnLooping,
    NoFactContradictsRuleHead,
    Hierarchical,
    FactDeficient,
    EmptySuperiority,
    Decisive(Tag),
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::NoConflictedDependsOnConflicted => {
                f.write_str("no conflicted literal depends on a conflicted literal")
            }
            Condition::NoConflictedDependsOnLooping => {
                f.write_str("no conflicted literal depends on a looping literal")
            }
            Condition::NoFactContradictsRuleHead => {
                f.write_str("no fact contradicts the head of a rule")
            }
            Condition::Hierarchical => f.write_str("hierarchical"),
            Condition::FactDeficient => f.write_str("fact-deficient"),
            Condition::EmptySuperiority => f.write_str("empty superiority relation"),
            Condition::Decisive(tag) => write!(f, "{tag}-decisive"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Discharged {
    pub condition: Condition,
    pub how: CertStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Basis {
    pub name: &'static str,
    pub preconditions: Vec<Discharged>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegimeCertificate {
    pub target: Tag,
    pub regime: Regime,
    /// The parallel tag the certificate relates to the target.
    pub via: Tag,
    pub basis: Option<Basis>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0} is not a conventional target (expected partial, partial_star, delta_ap, delta_ap_star, supp or supp_star)")]
pub struct NotATarget(pub Tag);

/// Evaluates conditions against one theory, caching the structure report.
struct Checker<'t> {
    theory: &'t Theory,
    structure: StructureReport,
    deps: (bool, bool),
}

impl<'t> Checker<'t> {
    fn new(theory: &'t Theory) -> Self {
        Checker {
            theory,
            structure: classify_structure(theory),
            deps: conflict_dependencies(theory),
        }
    }

    fn check(&self, condition: Condition) -> CertStatus {
        let syntactic = |b: bool| {
            if b {
                CertStatus::CertifiedSyntactic
            } else {
                CertStatus::Unknown
            }
        };
        match condition {
            Condition::NoConflictedDependsOnConflicted => syntactic(!self.deps.0),
            Condition::NoConflictedDependsOnLooping => syntactic(!self.deps.1),
            Condition::NoFactContradictsRuleHead => {
                syntactic(!fact_contradicts_rule_head(self.theory))
            }
            Condition::Hierarchical => syntactic(self.structure.hierarchical),
            Condition::FactDeficient => syntactic(self.structure.fact_deficient),
            Condition::EmptySuperiority => syntactic(self.structure.empty_superiority),
            Condition::Decisive(tag) => {
                certify_with(self.theory, &self.structure, tag, true).status
            }
        }
    }

    /// Discharges every group (a disjunction of alternatives) or fails.
    fn discharge(&self, groups: &[&[Condition]]) -> Option<Vec<Discharged>> {
        let mut out = Vec::new();
        for group in groups {
            let found = group.iter().find_map(|&condition| {
                let how = self.check(condition);
                how.is_certified().then_some(Discharged { condition, how })
            })?;
            out.push(found);
        }
        Some(out)
    }
}

struct Candidate {
    regime: Regime,
    name: &'static str,
    groups: &'static [&'static [Condition]],
}

use Condition::*;

const EQUIV: &[&[Condition]] = &[
    &[NoConflictedDependsOnConflicted],
    &[NoConflictedDependsOnLooping],
];
const EQUIV_AP: &[&[Condition]] = &[
    &[NoConflictedDependsOnConflicted],
    &[NoConflictedDependsOnLooping],
    &[NoFactContradictsRuleHead],
];

fn candidates(target: Tag) -> Vec<Candidate> {
    let c = |regime, name, groups| Candidate {
        regime,
        name,
        groups,
    };
    match target {
        Tag::Partial => vec![
            c(Regime::ExactSubstitution, "equiv-theorem", EQUIV),
            c(
                Regime::UnderApprox,
                "hierarchical-containment",
                &[&[Hierarchical]],
            ),
            c(
                Regime::UnderApprox,
                "decisive-containment",
                &[&[Decisive(Tag::Partial)]],
            ),
        ],
        Tag::PartialStar => vec![
            c(Regime::ExactSubstitution, "equiv-theorem", EQUIV),
            c(
                Regime::UnderApprox,
                "hierarchical-containment",
                &[&[Hierarchical]],
            ),
            c(
                Regime::UnderApprox,
                "decisive-containment",
                &[&[Decisive(Tag::PartialStar)]],
            ),
        ],
        Tag::DeltaAp => vec![
            c(Regime::ExactSubstitution, "equiv-theorem", EQUIV_AP),
            c(
                Regime::ExactEquality,
                "fact-deficient-equality",
                &[
                    &[FactDeficient],
                    &[Decisive(Tag::Delta)],
                    &[EmptySuperiority],
                    &[Decisive(Tag::Lambda), Decisive(Tag::Supp)],
                ],
            ),
            c(
                Regime::UnderApprox,
                "hierarchical-fact-deficient-containment",
                &[&[Hierarchical], &[FactDeficient]],
            ),
            c(
                Regime::UnderApprox,
                "fact-deficient-containment",
                &[
                    &[FactDeficient],
                    &[Decisive(Tag::Supp)],
                    &[Decisive(Tag::Delta), Decisive(Tag::DeltaAp)],
                ],
            ),
            c(
                Regime::OverApprox,
                "fact-deficient-over-approximation",
                &[&[FactDeficient], &[EmptySuperiority]],
            ),
        ],
        Tag::DeltaApStar => vec![
            c(Regime::ExactSubstitution, "equiv-theorem", EQUIV_AP),
            c(
                Regime::ExactEquality,
                "fact-deficient-equality",
                &[
                    &[FactDeficient],
                    &[Decisive(Tag::Delta)],
                    &[EmptySuperiority],
                    &[Decisive(Tag::Lambda), Decisive(Tag::SuppStar)],
                ],
            ),
            c(
                Regime::UnderApprox,
                "hierarchical-fact-deficient-containment",
                &[&[Hierarchical], &[FactDeficient]],
            ),
            c(
                Regime::UnderApprox,
                "fact-deficient-containment",
                &[
                    &[FactDeficient],
                    &[Decisive(Tag::SuppStar)],
                    &[Decisive(Tag::Delta), Decisive(Tag::DeltaApStar)],
                ],
            ),
            c(
                Regime::OverApprox,
                "fact-deficient-over-approximation",
                &[&[FactDeficient], &[EmptySuperiority]],
            ),
        ],
        Tag::Supp => vec![c(
            Regime::UnderApprox,
            "support-containment",
            &[&[Decisive(Tag::DeltaAp)]],
        )],
        Tag::SuppStar => {
            vec![c(
                Regime::UnderApprox,
                "support-containment",
                &[&[Decisive(Tag::DeltaApStar)]],
            )]
        }
        _ => Vec::new(),
    }
}

/// The strongest certificate available for `target`, trying exact
/// substitution, then exact equality, under- and over-approximation.
pub fn classify_regime(theory: &Theory, target: Tag) -> Result<RegimeCertificate, NotATarget> {
    let options = candidates(target);
    if options.is_empty() {
        return Err(NotATarget(target));
    }
    let via = target.parallel_counterpart();
    let checker = Checker::new(theory);
    for candidate in options {
        if let Some(preconditions) = checker.discharge(candidate.groups) {
            return Ok(RegimeCertificate {
                target,
                regime: candidate.regime,
                via,
                basis: Some(Basis {
                    name: candidate.name,
                    preconditions,
                }),
            });
        }
    }
    Ok(RegimeCertificate {
        target,
        regime: Regime::None,
        via,
        basis: None,
    })
}

/// A certificate for exactly `regime`, if one of its bases applies. Unlike
/// [`classify_regime`] this does not stop at a stronger regime.
pub fn certify_regime(
    theory: &Theory,
    target: Tag,
    regime: Regime,
) -> Result<Option<RegimeCertificate>, NotATarget> {
    let options = candidates(target);
    if options.is_empty() {
        return Err(NotATarget(target));
    }
    let checker = Checker::new(theory);
    Ok(options
        .into_iter()
        .filter(|c| c.regime == regime)
        .find_map(|c| {
            let preconditions = checker.discharge(c.groups)?;
            Some(RegimeCertificate {
                target,
                regime,
                via: target.parallel_counterpart(),
                basis: Some(Basis {
                    name: c.name,
                    preconditions,
                }),
            })
        }))
}

impl RegimeCertificate {
    /// Re-checks every listed precondition from scratch.
    pub fn reverify(&self, theory: &Theory) -> bool {
        match &self.basis {
            None => self.regime == Regime::None,
            Some(basis) => {
                let checker = Checker::new(theory);
                basis
                    .preconditions
                    .iter()
                    .all(|d| checker.check(d.condition).is_certified())
            }
        }
    }
}
