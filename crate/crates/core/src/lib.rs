//! Defeasible-logic inference: a ground theory model, staged and joint
//! fixpoint engines for ten proof tags, structural analysis that certifies
//! when the parallel logic can stand in for the conventional ones, and a
//! pipeline that acts on those certificates.

pub mod analysis;
pub mod batch;
pub mod bench;
pub mod closure;
pub mod engine;
pub mod gen;
pub mod io;
pub mod model;
pub mod oracle;
pub mod pipeline;

pub use closure::{ClosureSet, Incoherent, Sign, Status, Tag, TagClosure, TaggedConclusion};
pub use model::{AtomId, Literal, Rule, RuleId, RuleKind, Theory, TheoryBuilder};
