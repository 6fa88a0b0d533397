//! Tagged closures.
//!
//! The parallel family is staged: Δ is computed alone, λ from the completed
//! Δ-closure, and ∂|| / ∂||* from both. The conventional logics reference
//! conclusions inside the proof, so ∂ and ∂* each run as one joint fixpoint
//! with Δ, and δ (δ*) jointly with Δ and its support tag.
//!
//! The negative ∂|| rule is the strong negation of the positive ∂|| rule,
//! including the λ-based attack clause.

pub mod condition;
mod fixpoint;

use std::sync::OnceLock;

use crate::closure::{ClosureSet, Incoherent, Status, Tag, TagClosure};
use crate::model::{Literal, Theory};

use fixpoint::Fixpoint;
pub use fixpoint::WorklistOrder;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Incoherent(#[from] Incoherent),
    #[error("{0} is not a conventional logic (expected partial, partial_star, delta_ap or delta_ap_star)")]
    NotConventional(Tag),
    #[error("unknown literal `{0}`")]
    UnknownLiteral(String),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EngineOptions {
    pub order: WorklistOrder,
}

/// Tags computed together with `logic` in one fixpoint.
pub fn joint_tags(logic: Tag) -> Option<&'static [Tag]> {
    match logic {
        Tag::Partial => Some(&[Tag::Delta, Tag::Partial]),
        Tag::PartialStar => Some(&[Tag::Delta, Tag::PartialStar]),
        Tag::DeltaAp | Tag::Supp => Some(&[Tag::Delta, Tag::DeltaAp, Tag::Supp]),
        Tag::DeltaApStar | Tag::SuppStar => Some(&[Tag::Delta, Tag::DeltaApStar, Tag::SuppStar]),
        _ => None,
    }
}

fn single(mut closures: Vec<TagClosure>) -> TagClosure {
    closures.pop().expect("one active tag")
}

pub fn delta_closure(theory: &Theory) -> Result<TagClosure, Incoherent> {
    delta_closure_with(theory, EngineOptions::default())
}

pub fn delta_closure_with(theory: &Theory, opts: EngineOptions) -> Result<TagClosure, Incoherent> {
    Fixpoint::new(theory, &[Tag::Delta], None, None, opts.order)
        .run()
        .map(single)
}

pub fn lambda_closure(theory: &Theory, delta: &TagClosure) -> Result<TagClosure, Incoherent> {
    lambda_closure_with(theory, delta, EngineOptions::default())
}

pub fn lambda_closure_with(
    theory: &Theory,
    delta: &TagClosure,
    opts: EngineOptions,
) -> Result<TagClosure, Incoherent> {
    Fixpoint::new(theory, &[Tag::Lambda], Some(delta), None, opts.order)
        .run()
        .map(single)
}

/// ∂|| with team defeat, ∂||* without.
pub fn partial_par_closure(
    theory: &Theory,
    delta: &TagClosure,
    lambda: &TagClosure,
    team_defeat: bool,
) -> Result<TagClosure, Incoherent> {
    partial_par_closure_with(theory, delta, lambda, team_defeat, EngineOptions::default())
}

pub fn partial_par_closure_with(
    theory: &Theory,
    delta: &TagClosure,
    lambda: &TagClosure,
    team_defeat: bool,
    opts: EngineOptions,
) -> Result<TagClosure, Incoherent> {
    let tag = if team_defeat {
        Tag::PartialPar
    } else {
        Tag::PartialParStar
    };
    Fixpoint::new(theory, &[tag], Some(delta), Some(lambda), opts.order)
        .run()
        .map(single)
}

/// Joint closure for ∂, ∂*, δ or δ*: the principal tag, Δ, and for the δ
/// family its support tag.
pub fn conventional_closure(theory: &Theory, logic: Tag) -> Result<ClosureSet, EngineError> {
    kickstart_closure_with(theory, logic, &[], EngineOptions::default())
}

pub fn conventional_closure_with(
    theory: &Theory,
    logic: Tag,
    opts: EngineOptions,
) -> Result<ClosureSet, EngineError> {
    kickstart_closure_with(theory, logic, &[], opts)
}

/// As [`conventional_closure`], with `seed` recorded as `+logic` before the
/// fixpoint starts. `logic` may also be a support tag. The result equals the direct closure whenever `seed` is
/// contained in it; nothing is checked here.
pub fn kickstart_closure(
    theory: &Theory,
    logic: Tag,
    seed: &[Literal],
) -> Result<ClosureSet, EngineError> {
    kickstart_closure_with(theory, logic, seed, EngineOptions::default())
}

pub fn kickstart_closure_with(
    theory: &Theory,
    logic: Tag,
    seed: &[Literal],
    opts: EngineOptions,
) -> Result<ClosureSet, EngineError> {
    let tags = joint_tags(logic).ok_or(EngineError::NotConventional(logic))?;
    let mut fixpoint = Fixpoint::new(theory, tags, None, None, opts.order);
    for &lit in seed {
        fixpoint.seed(logic, lit)?;
    }
    Ok(fixpoint.run()?.into_iter().collect())
}

/// The closure for `tag` together with the closures it was computed from.
pub fn closure(theory: &Theory, tag: Tag) -> Result<ClosureSet, EngineError> {
    closure_with(theory, tag, EngineOptions::default())
}

pub fn closure_with(
    theory: &Theory,
    tag: Tag,
    opts: EngineOptions,
) -> Result<ClosureSet, EngineError> {
    let delta = delta_closure_with(theory, opts)?;
    let mut set = ClosureSet::new();
    match tag {
        Tag::Delta => {}
        Tag::Lambda => set.insert(lambda_closure_with(theory, &delta, opts)?),
        Tag::PartialPar | Tag::PartialParStar => {
            let lambda = lambda_closure_with(theory, &delta, opts)?;
            let team = tag == Tag::PartialPar;
            set.insert(partial_par_closure_with(
                theory, &delta, &lambda, team, opts,
            )?);
            set.insert(lambda);
        }
        Tag::Supp => return conventional_closure_with(theory, Tag::DeltaAp, opts),
        Tag::SuppStar => return conventional_closure_with(theory, Tag::DeltaApStar, opts),
        conventional => return conventional_closure_with(theory, conventional, opts),
    }
    set.insert(delta);
    Ok(set)
}

/// All ten closures.
pub fn all_closures(theory: &Theory) -> Result<ClosureSet, EngineError> {
    all_closures_with(theory, EngineOptions::default())
}

pub fn all_closures_with(theory: &Theory, opts: EngineOptions) -> Result<ClosureSet, EngineError> {
    let delta = delta_closure_with(theory, opts)?;
    let lambda = lambda_closure_with(theory, &delta, opts)?;
    let mut set = ClosureSet::new();
    set.insert(partial_par_closure_with(
        theory, &delta, &lambda, true, opts,
    )?);
    set.insert(partial_par_closure_with(
        theory, &delta, &lambda, false, opts,
    )?);
    for logic in [
        Tag::Partial,
        Tag::PartialStar,
        Tag::DeltaAp,
        Tag::DeltaApStar,
    ] {
        let mut joint = conventional_closure_with(theory, logic, opts)?;
        joint = joint.restrict(&[logic, Tag::Supp, Tag::SuppStar]);
        set.merge(joint);
    }
    set.insert(delta);
    set.insert(lambda);
    Ok(set)
}

/// Answers queries against one theory, computing each closure at most once.
pub struct Reasoner<'t> {
    theory: &'t Theory,
    cache: [OnceLock<Result<TagClosure, EngineError>>; 10],
}

impl<'t> Reasoner<'t> {
    pub fn new(theory: &'t Theory) -> Self {
        Reasoner {
            theory,
            cache: Default::default(),
        }
    }

    pub fn theory(&self) -> &'t Theory {
        self.theory
    }

    pub fn closure(&self, tag: Tag) -> Result<&TagClosure, EngineError> {
        let slot = &self.cache[tag.index()];
        if slot.get().is_none() {
            // Fill every tag the computation produced, not only the one asked for.
            let computed = closure(self.theory, tag);
            match computed {
                Ok(set) => {
                    for c in set.iter() {
                        let _ = self.cache[c.tag().index()].set(Ok(c.clone()));
                    }
                }
                Err(e) => {
                    let _ = slot.set(Err(e));
                }
            }
        }
        slot.get()
            .expect("filled above")
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn query(&self, tag: Tag, literal: Literal) -> Result<Status, EngineError> {
        Ok(self.closure(tag)?.status(literal))
    }

    /// Looks the literal up by name, e.g. `~fly(tweety)`.
    pub fn query_named(&self, tag: Tag, literal: &str) -> Result<Status, EngineError> {
        let lit = self
            .theory
            .find_literal(literal)
            .ok_or_else(|| EngineError::UnknownLiteral(literal.to_string()))?;
        self.query(tag, lit)
    }
}
