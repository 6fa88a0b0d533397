#![allow(dead_code)]

use defeasible_core::gen::{generate, GenSpec, Shape};
use defeasible_core::io::read_theory;
use defeasible_core::{RuleKind, Theory, TheoryBuilder};

macro_rules! corpus_file {
    ($name:literal) => {
        (
            $name,
            include_str!(concat!("../../../../corpus/", $name, ".dl")),
        )
    };
}

pub const CORPUS: [(&str, &str); 13] = [
    corpus_file!("tweety"),
    corpus_file!("team_defeat"),
    corpus_file!("ambiguity"),
    corpus_file!("selfloop"),
    corpus_file!("confloop"),
    corpus_file!("cascade"),
    corpus_file!("lambda_gap"),
    corpus_file!("masked_loop_1"),
    corpus_file!("masked_loop_2"),
    corpus_file!("masked_conflict_1"),
    corpus_file!("masked_conflict_2"),
    corpus_file!("restructure_a"),
    corpus_file!("restructure_b"),
];

pub fn corpus(name: &str) -> Theory {
    let (_, text) = CORPUS
        .iter()
        .find(|(n, _)| *n == name)
        .expect("corpus entry");
    read_theory(text).expect("corpus theories load")
}

pub fn corpus_all() -> Vec<(&'static str, Theory)> {
    CORPUS
        .iter()
        .map(|&(n, text)| (n, read_theory(text).unwrap()))
        .collect()
}

/// `count` theories of one shape, seeds `base..base + count`.
pub fn random(shape: Shape, count: u64, base: u64, atoms: usize, rules: usize) -> Vec<Theory> {
    (base..base + count)
        .map(|seed| {
            let spec = GenSpec {
                atoms,
                rules,
                shape,
                seed,
                ..GenSpec::default()
            };
            generate(&spec).expect("valid spec")
        })
        .collect()
}

/// Small theories of every shape, with at most 12 literals.
pub fn small_mixed(count: u64, base: u64) -> Vec<Theory> {
    (base..base + count)
        .map(|seed| {
            let shape = Shape::ALL[(seed % Shape::ALL.len() as u64) as usize];
            let spec = GenSpec {
                atoms: 3 + (seed % 4) as usize,
                rules: 4 + (seed % 7) as usize,
                facts: (seed % 3) as usize,
                superiority_density: 0.5,
                shape,
                seed,
                ..GenSpec::default()
            };
            generate(&spec).expect("valid spec")
        })
        .collect()
}

const LITS: [&str; 4] = ["a", "~a", "b", "~b"];
const KINDS: [RuleKind; 3] = [RuleKind::Strict, RuleKind::Defeasible, RuleKind::Defeater];

#[derive(Clone, Copy)]
struct RuleShape {
    kind: RuleKind,
    body: Option<usize>,
    head: usize,
}

fn rule_shapes() -> Vec<RuleShape> {
    let mut out = Vec::new();
    for kind in KINDS {
        for body in std::iter::once(None).chain((0..4).map(Some)) {
            for head in 0..4 {
                out.push(RuleShape { kind, body, head });
            }
        }
    }
    out
}

fn build(rules: &[RuleShape], sup: Option<(usize, usize)>, fact: bool) -> Theory {
    let mut b = TheoryBuilder::new();
    b.atom("a");
    b.atom("b");
    if fact {
        b.fact("a");
    }
    for (i, r) in rules.iter().enumerate() {
        let body: Vec<&str> = r.body.map(|x| LITS[x]).into_iter().collect();
        b.rule(&format!("r{i}"), r.kind, &body, LITS[r.head]);
    }
    if let Some((w, l)) = sup {
        b.superior(&format!("r{w}"), &format!("r{l}"));
    }
    b.build().expect("sweep theories are valid")
}

/// Every theory over atoms `a`, `b` with at most three distinct rules of
/// body length at most one, at most one superiority pair (between rules
/// with complementary heads), and either no facts or the fact `a`. Up to
/// renaming atoms and flipping signs this covers every single fact.
pub fn sweep(mut visit: impl FnMut(Theory)) -> usize {
    let shapes = rule_shapes();
    let n = shapes.len();
    let mut count = 0;
    let mut emit = |rules: &[RuleShape]| {
        let mut sups = vec![None];
        for w in 0..rules.len() {
            for l in 0..rules.len() {
                if rules[w].head ^ 1 == rules[l].head {
                    sups.push(Some((w, l)));
                }
            }
        }
        for sup in sups {
            for fact in [false, true] {
                visit(build(rules, sup, fact));
                count += 1;
            }
        }
    };
    emit(&[]);
    for i in 0..n {
        emit(&[shapes[i]]);
        for j in i + 1..n {
            emit(&[shapes[i], shapes[j]]);
            for k in j + 1..n {
                emit(&[shapes[i], shapes[j], shapes[k]]);
            }
        }
    }
    count
}
