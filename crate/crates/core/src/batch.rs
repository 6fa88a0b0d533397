//! Closures over many theories at once.
//!
//! With the `parallel` feature (on by default) [`map`] spreads theories over
//! the rayon thread pool. Without it, [`map`] is [`map_sequential`].

use crate::closure::{ClosureSet, Tag};
use crate::engine::{self, EngineError};
use crate::model::Theory;

/// Whether [`map`] runs on a thread pool in this build.
pub const PARALLEL: bool = cfg!(feature = "parallel");

pub fn map_sequential<T, F>(theories: &[Theory], f: F) -> Vec<T>
where
    F: Fn(&Theory) -> T,
{
    theories.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map<T, F>(theories: &[Theory], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&Theory) -> T + Sync + Send,
{
    use rayon::prelude::*;
    theories.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, F>(theories: &[Theory], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&Theory) -> T + Sync + Send,
{
    map_sequential(theories, f)
}

/// All ten closures for each theory, in input order.
pub fn all_closures(theories: &[Theory]) -> Vec<Result<ClosureSet, EngineError>> {
    map(theories, engine::all_closures)
}

/// The closure for `tag` (with what it was computed from) for each theory.
pub fn closures(theories: &[Theory], tag: Tag) -> Vec<Result<ClosureSet, EngineError>> {
    map(theories, |t| engine::closure(t, tag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate, GenSpec};

    #[test]
    fn parallel_matches_sequential() {
        let theories: Vec<Theory> = (0..24)
            .map(|seed| {
                generate(&GenSpec {
                    seed,
                    ..GenSpec::default()
                })
                .unwrap()
            })
            .collect();
        let seq = map_sequential(&theories, engine::all_closures);
        assert_eq!(all_closures(&theories), seq);
    }
}
