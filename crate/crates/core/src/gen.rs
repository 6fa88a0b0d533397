//! Seeded random theories with structural guarantees.
//!
//! Atoms are named `p0, p1, ...` and ids follow that order. Shapes that
//! restrict recursion use the atom (or literal) index as the layer: a head
//! must sit strictly above every body element.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::model::{AtomId, Literal, RuleKind, Theory, TheoryBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Free,
    /// Head atom above all body atoms.
    Hierarchical,
    /// No facts; every strict rule has a body.
    FactDeficient,
    HierarchicalFactDeficient,
    /// No conflicted literal depends on a conflicted or looping literal, and
    /// no fact contradicts a rule head.
    ConflictChainFree,
    /// Every atom has rules for one sign only; facts never contradict a rule
    /// head or another fact.
    ConflictFree,
    /// Strict and defeasible heads above their body literals (literal order).
    SemiHierarchical,
    /// Strict heads above their body literals (literal order).
    StrictSemiHierarchical,
}

impl Shape {
    pub const ALL: [Shape; 8] = [
        Shape::Free,
        Shape::Hierarchical,
        Shape::FactDeficient,
        Shape::HierarchicalFactDeficient,
        Shape::ConflictChainFree,
        Shape::ConflictFree,
        Shape::SemiHierarchical,
        Shape::StrictSemiHierarchical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Shape::Free => "free",
            Shape::Hierarchical => "hierarchical",
            Shape::FactDeficient => "fact_deficient",
            Shape::HierarchicalFactDeficient => "hierarchical_fact_deficient",
            Shape::ConflictChainFree => "conflict_chain_free",
            Shape::ConflictFree => "conflict_free",
            Shape::SemiHierarchical => "semi_hierarchical",
            Shape::StrictSemiHierarchical => "strict_semi_hierarchical",
        }
    }

    fn hierarchical(self) -> bool {
        matches!(self, Shape::Hierarchical | Shape::HierarchicalFactDeficient)
    }

    fn fact_deficient(self) -> bool {
        matches!(
            self,
            Shape::FactDeficient | Shape::HierarchicalFactDeficient
        )
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Shape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Shape::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Shape::ALL.iter().map(|x| x.name()).collect();
                format!("unknown shape `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// Relative weights of the three rule kinds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KindMix {
    pub strict: u32,
    pub defeasible: u32,
    pub defeater: u32,
}

impl Default for KindMix {
    fn default() -> Self {
        KindMix {
            strict: 1,
            defeasible: 4,
            defeater: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenSpec {
    pub atoms: usize,
    pub rules: usize,
    pub facts: usize,
    pub max_body: usize,
    pub kind_mix: KindMix,
    /// Probability of an edge between two rules with complementary heads.
    pub superiority_density: f64,
    pub shape: Shape,
    pub seed: u64,
}

impl Default for GenSpec {
    fn default() -> Self {
        GenSpec {
            atoms: 8,
            rules: 16,
            facts: 2,
            max_body: 2,
            kind_mix: KindMix::default(),
            superiority_density: 0.3,
            shape: Shape::Free,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("a theory needs at least one atom")]
    NoAtoms,
    #[error("all rule kind weights are zero")]
    NoKinds,
    #[error("{0} theories with non-empty bodies need at least two atoms")]
    TooFewAtoms(Shape),
    #[error("{0} theories need strict rules with bodies, but max_body is 0")]
    StrictWithoutBody(Shape),
}

/// Which atoms may appear in bodies of rules for a given head atom, for the
/// conflict-chain-free shape.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    /// Never reaches a conflicted atom; bodies from lower pure atoms.
    Pure,
    /// Rules for both signs; bodies from pure atoms.
    Conflict,
    /// Not reachable from conflict atoms; bodies unrestricted.
    Open,
}

struct Draft {
    kind: RuleKind,
    body: Vec<Literal>,
    head: Literal,
}

pub fn generate(spec: &GenSpec) -> Result<Theory, GenError> {
    let shape = spec.shape;
    if spec.atoms == 0 {
        return Err(GenError::NoAtoms);
    }
    let mix = spec.kind_mix;
    if mix.strict + mix.defeasible + mix.defeater == 0 {
        return Err(GenError::NoKinds);
    }
    if shape.hierarchical() && spec.atoms < 2 && spec.max_body > 0 {
        return Err(GenError::TooFewAtoms(shape));
    }
    if shape.fact_deficient() && spec.max_body == 0 && mix.strict > 0 {
        return Err(GenError::StrictWithoutBody(shape));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.atoms;
    let lit = |atom: usize, positive: bool| Literal::new(AtomId(atom as u32), positive);

    let roles: Vec<Role> = (0..n)
        .map(|_| match rng.gen_range(0..10) {
            0..=3 => Role::Pure,
            4..=6 => Role::Conflict,
            _ => Role::Open,
        })
        .collect();
    let head_sign: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();

    let total = (mix.strict + mix.defeasible + mix.defeater) as f64;
    let mut drafts: Vec<Draft> = Vec::new();
    let mut seen: HashSet<(RuleKind, Vec<Literal>, Literal)> = HashSet::new();
    let mut attempts = 0;
    while drafts.len() < spec.rules && attempts < spec.rules * 20 + 100 {
        attempts += 1;
        let pick = rng.gen_range(0.0..total);
        let kind = if pick < mix.strict as f64 {
            RuleKind::Strict
        } else if pick < (mix.strict + mix.defeasible) as f64 {
            RuleKind::Defeasible
        } else {
            RuleKind::Defeater
        };
        let mut size = rng.gen_range(0..=spec.max_body);
        if kind == RuleKind::Strict && shape.fact_deficient() && size == 0 {
            size = 1;
        }

        let head_atom = rng.gen_range(0..n);
        let mut head_positive = rng.gen_bool(0.5);
        // Candidate body literals for this head.
        let candidates: Vec<Literal> = match shape {
            Shape::Hierarchical | Shape::HierarchicalFactDeficient => (0..head_atom)
                .flat_map(|a| [lit(a, true), lit(a, false)])
                .collect(),
            Shape::SemiHierarchical | Shape::StrictSemiHierarchical => {
                let constrained = kind == RuleKind::Strict
                    || (shape == Shape::SemiHierarchical && kind == RuleKind::Defeasible);
                let head = lit(head_atom, head_positive);
                if constrained {
                    (0..head.index()).map(Literal::from_index).collect()
                } else {
                    (0..2 * n).map(Literal::from_index).collect()
                }
            }
            Shape::ConflictChainFree => {
                if roles[head_atom] != Role::Conflict {
                    head_positive = head_sign[head_atom];
                }
                let allowed = |a: usize| match roles[head_atom] {
                    Role::Pure => roles[a] == Role::Pure && a < head_atom,
                    Role::Conflict => roles[a] == Role::Pure,
                    Role::Open => true,
                };
                (0..n)
                    .filter(|&a| allowed(a))
                    .flat_map(|a| [lit(a, true), lit(a, false)])
                    .collect()
            }
            Shape::ConflictFree => {
                head_positive = head_sign[head_atom];
                (0..2 * n).map(Literal::from_index).collect()
            }
            Shape::Free | Shape::FactDeficient => (0..2 * n).map(Literal::from_index).collect(),
        };
        let size = size.min(candidates.len());
        if size == 0 && kind == RuleKind::Strict && shape.fact_deficient() {
            continue;
        }
        let mut body: Vec<Literal> = candidates
            .choose_multiple(&mut rng, size)
            .copied()
            .collect();
        body.sort_unstable();
        let head = lit(head_atom, head_positive);
        if seen.insert((kind, body.clone(), head)) {
            drafts.push(Draft { kind, body, head });
        }
    }

    let mut facts: Vec<Literal> = Vec::new();
    if !shape.fact_deficient() {
        let restricted = matches!(shape, Shape::ConflictChainFree | Shape::ConflictFree);
        let headed: HashSet<Literal> = drafts.iter().map(|d| d.head).collect();
        let mut pool: Vec<Literal> = (0..2 * n)
            .map(Literal::from_index)
            .filter(|q| !restricted || !headed.contains(&q.complement()))
            .collect();
        pool.shuffle(&mut rng);
        for q in pool {
            if facts.len() >= spec.facts {
                break;
            }
            if restricted && facts.contains(&q.complement()) {
                continue;
            }
            facts.push(q);
        }
    }

    // Random rank orients every superiority edge, so the relation is acyclic.
    let mut rank: Vec<usize> = (0..drafts.len()).collect();
    rank.shuffle(&mut rng);
    let mut superiority = Vec::new();
    for i in 0..drafts.len() {
        for j in 0..drafts.len() {
            if drafts[i].head == drafts[j].head.complement()
                && rank[i] > rank[j]
                && rng.gen_bool(spec.superiority_density.clamp(0.0, 1.0))
            {
                superiority.push((i, j));
            }
        }
    }

    let mut b = TheoryBuilder::new();
    for a in 0..n {
        b.atom(&format!("p{a}"));
    }
    for f in facts {
        b.fact_literal(f);
    }
    for (i, d) in drafts.into_iter().enumerate() {
        b.rule_literals(&format!("r{i}"), d.kind, d.body, d.head);
    }
    for (i, j) in superiority {
        b.superior(&format!("r{i}"), &format!("r{j}"));
    }
    Ok(b.build()
        .expect("generated theories are valid by construction"))
}
