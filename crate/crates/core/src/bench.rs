//! Timing records for single theories.

use std::time::Instant;

use serde::Serialize;

use crate::closure::Tag;
use crate::engine::{self, EngineError};
use crate::model::Theory;
use crate::pipeline::{self, PipelineError, Route};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheorySize {
    pub atoms: usize,
    pub literals: usize,
    pub rules: usize,
    pub facts: usize,
    pub superiority_pairs: usize,
    /// Sum of body lengths.
    pub body_literals: usize,
}

impl TheorySize {
    pub fn of(theory: &Theory) -> Self {
        TheorySize {
            atoms: theory.atom_count(),
            literals: theory.literal_count(),
            rules: theory.rules().len(),
            facts: theory.facts().len(),
            superiority_pairs: theory.superiority().len(),
            body_literals: theory.rules().iter().map(|r| r.body.len()).sum(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TagTiming {
    pub tag: Tag,
    /// Fastest of the repetitions.
    pub min_micros: u128,
    pub median_micros: u128,
    pub plus: usize,
    pub minus: usize,
    pub undecided: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub size: TheorySize,
    pub repeat: usize,
    pub tags: Vec<TagTiming>,
    pub target: Tag,
    pub route: Route,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

/// Times every tag's closure `repeat` times (at least once) and records the
/// route the pipeline would take for `target`.
pub fn bench_theory(
    theory: &Theory,
    target: Tag,
    repeat: usize,
) -> Result<BenchRecord, BenchError> {
    let repeat = repeat.max(1);
    let mut tags = Vec::new();
    for tag in Tag::ALL {
        let mut times = Vec::with_capacity(repeat);
        let mut last = None;
        for _ in 0..repeat {
            let start = Instant::now();
            let set = engine::closure(theory, tag)?;
            times.push(start.elapsed().as_micros());
            last = Some(set);
        }
        times.sort_unstable();
        let set = last.expect("at least one repetition");
        let c = set.closure(tag);
        let plus = c.positive_count();
        let minus = c.negatives().count();
        tags.push(TagTiming {
            tag,
            min_micros: times[0],
            median_micros: times[times.len() / 2],
            plus,
            minus,
            undecided: c.len() - plus - minus,
        });
    }
    let route = pipeline::plan(theory, target)?.route;
    Ok(BenchRecord {
        size: TheorySize::of(theory),
        repeat,
        tags,
        target,
        route,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::read_theory;

    #[test]
    fn counts_cover_every_literal() {
        let t = read_theory("r: q -> q.\ns: => q.").unwrap();
        let rec = bench_theory(&t, Tag::Partial, 2).unwrap();
        assert_eq!(rec.tags.len(), 10);
        for tt in &rec.tags {
            assert_eq!(tt.plus + tt.minus + tt.undecided, t.literal_count());
            assert!(tt.min_micros <= tt.median_micros);
        }
    }
}
