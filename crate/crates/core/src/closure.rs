//! Proof tags and the per-tag conclusion maps produced by inference.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::model::Literal;

/// Identifier of an inference rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    /// Definite (monotonic) inference over facts and strict rules.
    Delta,
    /// Potential defeasible provability, the auxiliary tag of the parallel logic.
    Lambda,
    /// Ambiguity-propagating, team-defeat logic evaluated in stages.
    PartialPar,
    /// Individual-defeat variant of [`Tag::PartialPar`].
    PartialParStar,
    /// Conventional ambiguity-blocking, team-defeat logic.
    Partial,
    PartialStar,
    /// Conventional ambiguity-propagating logic.
    DeltaAp,
    DeltaApStar,
    /// Support rule for [`Tag::DeltaAp`].
    Supp,
    /// Support rule for [`Tag::DeltaApStar`].
    SuppStar,
}

impl Tag {
    pub const ALL: [Tag; 10] = [
        Tag::Delta,
        Tag::Lambda,
        Tag::PartialPar,
        Tag::PartialParStar,
        Tag::Partial,
        Tag::PartialStar,
        Tag::DeltaAp,
        Tag::DeltaApStar,
        Tag::Supp,
        Tag::SuppStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Tag::Delta => "delta",
            Tag::Lambda => "lambda",
            Tag::PartialPar => "partial_par",
            Tag::PartialParStar => "partial_par_star",
            Tag::Partial => "partial",
            Tag::PartialStar => "partial_star",
            Tag::DeltaAp => "delta_ap",
            Tag::DeltaApStar => "delta_ap_star",
            Tag::Supp => "supp",
            Tag::SuppStar => "supp_star",
        }
    }

    /// Conventional mathematical symbol, used in explanations.
    pub fn symbol(self) -> &'static str {
        match self {
            Tag::Delta => "Δ",
            Tag::Lambda => "λ",
            Tag::PartialPar => "∂||",
            Tag::PartialParStar => "∂||*",
            Tag::Partial => "∂",
            Tag::PartialStar => "∂*",
            Tag::DeltaAp => "δ",
            Tag::DeltaApStar => "δ*",
            Tag::Supp => "supp_δ",
            Tag::SuppStar => "supp_δ*",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Individual-defeat variants.
    pub fn is_star(self) -> bool {
        matches!(
            self,
            Tag::PartialParStar | Tag::PartialStar | Tag::DeltaApStar | Tag::SuppStar
        )
    }

    /// The parallel-logic tag with the same defeat discipline.
    pub fn parallel_counterpart(self) -> Tag {
        if self.is_star() {
            Tag::PartialParStar
        } else {
            Tag::PartialPar
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown tag `{0}`")]
pub struct UnknownTag(pub String);

impl FromStr for Tag {
    type Err = UnknownTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| UnknownTag(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Plus,
    Minus,
    #[default]
    Undecided,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Plus => "plus",
            Status::Minus => "minus",
            Status::Undecided => "undecided",
        })
    }
}

/// `+d q` or `-d q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TaggedConclusion {
    pub sign: Sign,
    pub tag: Tag,
    pub literal: Literal,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("literal #{literal} is both +{tag} and -{tag}")]
pub struct Incoherent {
    pub tag: Tag,
    pub literal: usize,
}

/// Status of every literal of a theory under one tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagClosure {
    tag: Tag,
    status: Vec<Status>,
}

impl TagClosure {
    /// Everything undecided.
    pub fn undecided(tag: Tag, literal_count: usize) -> Self {
        TagClosure {
            tag,
            status: vec![Status::Undecided; literal_count],
        }
    }

    /// Builds a closure from independently derived positive and negative
    /// sets, rejecting any literal present in both.
    pub fn from_signs(tag: Tag, plus: &[bool], minus: &[bool]) -> Result<Self, Incoherent> {
        debug_assert_eq!(plus.len(), minus.len());
        let status = plus
            .iter()
            .zip(minus)
            .enumerate()
            .map(|(i, (&p, &m))| match (p, m) {
                (true, true) => Err(Incoherent { tag, literal: i }),
                (true, false) => Ok(Status::Plus),
                (false, true) => Ok(Status::Minus),
                (false, false) => Ok(Status::Undecided),
            })
            .collect::<Result<_, _>>()?;
        Ok(TagClosure { tag, status })
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn status(&self, lit: Literal) -> Status {
        self.status[lit.index()]
    }

    pub fn statuses(&self) -> &[Status] {
        &self.status
    }

    pub fn len(&self) -> usize {
        self.status.len()
    }

    pub fn is_empty(&self) -> bool {
        self.status.is_empty()
    }

    pub fn is_plus(&self, lit: Literal) -> bool {
        self.status(lit) == Status::Plus
    }

    pub fn is_minus(&self, lit: Literal) -> bool {
        self.status(lit) == Status::Minus
    }

    fn with_status(&self, wanted: Status) -> impl Iterator<Item = Literal> + '_ {
        self.status
            .iter()
            .enumerate()
            .filter(move |(_, &s)| s == wanted)
            .map(|(i, _)| Literal::from_index(i))
    }

    pub fn positives(&self) -> impl Iterator<Item = Literal> + '_ {
        self.with_status(Status::Plus)
    }

    pub fn negatives(&self) -> impl Iterator<Item = Literal> + '_ {
        self.with_status(Status::Minus)
    }

    pub fn undecided_literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.with_status(Status::Undecided)
    }

    pub fn positive_count(&self) -> usize {
        self.positives().count()
    }

    /// Every literal decided.
    pub fn is_decisive(&self) -> bool {
        self.status.iter().all(|&s| s != Status::Undecided)
    }

    /// `+self ⊆ +other`.
    pub fn positives_subset_of(&self, other: &TagClosure) -> bool {
        self.positives().all(|l| other.is_plus(l))
    }

    /// Same statuses under another tag name.
    pub fn relabel(&self, tag: Tag) -> TagClosure {
        TagClosure {
            tag,
            status: self.status.clone(),
        }
    }

    /// Same statuses, ignoring the tag.
    pub fn same_conclusions(&self, other: &TagClosure) -> bool {
        self.status == other.status
    }
}

/// Closures for several tags over one theory, ordered by tag.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClosureSet {
    closures: Vec<TagClosure>,
}

impl ClosureSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts or replaces the closure for its tag.
    pub fn insert(&mut self, closure: TagClosure) {
        match self.closures.binary_search_by_key(&closure.tag, |c| c.tag) {
            Ok(i) => self.closures[i] = closure,
            Err(i) => self.closures.insert(i, closure),
        }
    }

    pub fn get(&self, tag: Tag) -> Option<&TagClosure> {
        self.closures
            .binary_search_by_key(&tag, |c| c.tag)
            .ok()
            .map(|i| &self.closures[i])
    }

    /// Panics when `tag` was not computed.
    pub fn closure(&self, tag: Tag) -> &TagClosure {
        self.get(tag)
            .unwrap_or_else(|| panic!("closure for {tag} not computed"))
    }

    pub fn status(&self, tag: Tag, lit: Literal) -> Status {
        self.get(tag).map_or(Status::Undecided, |c| c.status(lit))
    }

    pub fn tags(&self) -> impl Iterator<Item = Tag> + '_ {
        self.closures.iter().map(|c| c.tag)
    }

    pub fn iter(&self) -> impl Iterator<Item = &TagClosure> {
        self.closures.iter()
    }

    pub fn merge(&mut self, other: ClosureSet) {
        for c in other.closures {
            self.insert(c);
        }
    }

    /// Only the closures for `tags`.
    pub fn restrict(&self, tags: &[Tag]) -> ClosureSet {
        ClosureSet {
            closures: self
                .closures
                .iter()
                .filter(|c| tags.contains(&c.tag))
                .cloned()
                .collect(),
        }
    }

    pub fn conclusions(&self) -> impl Iterator<Item = TaggedConclusion> + '_ {
        self.closures.iter().flat_map(|c| {
            c.status.iter().enumerate().filter_map(move |(i, s)| {
                let sign = match s {
                    Status::Plus => Sign::Plus,
                    Status::Minus => Sign::Minus,
                    Status::Undecided => return None,
                };
                Some(TaggedConclusion {
                    sign,
                    tag: c.tag,
                    literal: Literal::from_index(i),
                })
            })
        })
    }
}

impl FromIterator<TagClosure> for ClosureSet {
    fn from_iter<I: IntoIterator<Item = TagClosure>>(iter: I) -> Self {
        let mut set = ClosureSet::new();
        for c in iter {
            set.insert(c);
        }
        set
    }
}
