//! Reference evaluator. Interprets the proof-condition trees directly and
//! re-scans every (tag, sign, literal) until nothing changes. No indexing,
//! no counters, no worklist; meant for small theories in tests.

use std::collections::HashMap;

use crate::closure::{ClosureSet, Incoherent, Sign, Tag, TagClosure};
use crate::engine::condition::{evaluate, proof_condition, Cond, ProofState};
use crate::model::{Literal, Theory};

struct State<'a> {
    derived: HashMap<(Tag, Sign), Vec<bool>>,
    completed: &'a HashMap<Tag, TagClosure>,
}

impl ProofState for State<'_> {
    fn proved(&self, sign: Sign, tag: Tag, lit: Literal) -> Option<bool> {
        self.derived.get(&(tag, sign)).map(|v| v[lit.index()])
    }

    fn in_closure(&self, tag: Tag, lit: Literal) -> Option<bool> {
        self.completed.get(&tag).map(|c| c.is_plus(lit))
    }
}

fn run(
    theory: &Theory,
    tags: &[Tag],
    completed: &HashMap<Tag, TagClosure>,
) -> Result<Vec<TagClosure>, Incoherent> {
    let n = theory.literal_count();
    let conds: Vec<(Tag, Sign, Cond)> = tags
        .iter()
        .flat_map(|&t| [Sign::Plus, Sign::Minus].map(|s| (t, s, proof_condition(t, s))))
        .collect();
    let mut state = State {
        derived: conds
            .iter()
            .map(|(t, s, _)| ((*t, *s), vec![false; n]))
            .collect(),
        completed,
    };
    loop {
        let mut found = Vec::new();
        for (tag, sign, cond) in &conds {
            for lit in theory.literals() {
                if state.derived[&(*tag, *sign)][lit.index()] {
                    continue;
                }
                if evaluate(cond, theory, lit, &state).expect("oracle conditions are closed") {
                    found.push((*tag, *sign, lit));
                }
            }
        }
        if found.is_empty() {
            break;
        }
        for (tag, sign, lit) in found {
            state.derived.get_mut(&(tag, sign)).unwrap()[lit.index()] = true;
        }
    }
    tags.iter()
        .map(|&t| {
            TagClosure::from_signs(
                t,
                &state.derived[&(t, Sign::Plus)],
                &state.derived[&(t, Sign::Minus)],
            )
        })
        .collect()
}

fn stage(
    theory: &Theory,
    tags: &[Tag],
    completed: &mut HashMap<Tag, TagClosure>,
) -> Result<(), Incoherent> {
    for c in run(theory, tags, completed)? {
        completed.insert(c.tag(), c);
    }
    Ok(())
}

/// Closure for `tag` plus whatever it is computed with: Δ always, λ for the
/// parallel tags, the principal or support partner for the δ family.
pub fn oracle_closure(theory: &Theory, tag: Tag) -> Result<ClosureSet, Incoherent> {
    let mut done = HashMap::new();
    match tag {
        Tag::Delta => stage(theory, &[Tag::Delta], &mut done)?,
        Tag::Lambda => {
            stage(theory, &[Tag::Delta], &mut done)?;
            stage(theory, &[Tag::Lambda], &mut done)?;
        }
        Tag::PartialPar | Tag::PartialParStar => {
            stage(theory, &[Tag::Delta], &mut done)?;
            stage(theory, &[Tag::Lambda], &mut done)?;
            stage(theory, &[tag], &mut done)?;
        }
        Tag::Partial | Tag::PartialStar => stage(theory, &[Tag::Delta, tag], &mut done)?,
        Tag::DeltaAp | Tag::Supp => {
            stage(theory, &[Tag::Delta, Tag::DeltaAp, Tag::Supp], &mut done)?
        }
        Tag::DeltaApStar | Tag::SuppStar => stage(
            theory,
            &[Tag::Delta, Tag::DeltaApStar, Tag::SuppStar],
            &mut done,
        )?,
    }
    Ok(done.into_values().collect())
}

/// All ten closures.
pub fn oracle_all_closures(theory: &Theory) -> Result<ClosureSet, Incoherent> {
    let mut set = ClosureSet::new();
    for tag in [
        Tag::PartialPar,
        Tag::PartialParStar,
        Tag::Partial,
        Tag::PartialStar,
        Tag::DeltaAp,
        Tag::DeltaApStar,
    ] {
        set.merge(oracle_closure(theory, tag)?);
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::Status;
    use crate::io::read_theory;

    #[test]
    fn selfloop_is_partial_decisive() {
        let t = read_theory("r: q -> q.\ns: => q.").unwrap();
        let q = t.find_literal("q").unwrap();
        let set = oracle_closure(&t, Tag::Partial).unwrap();
        assert_eq!(set.status(Tag::Partial, q), Status::Plus);
        assert_eq!(set.status(Tag::Partial, q.complement()), Status::Minus);
        assert_eq!(set.status(Tag::Delta, q), Status::Undecided);
    }

    #[test]
    fn all_tags_present() {
        let t = read_theory("fact a.\nr: a => b.").unwrap();
        let set = oracle_all_closures(&t).unwrap();
        assert_eq!(set.tags().collect::<Vec<_>>(), Tag::ALL);
    }
}
