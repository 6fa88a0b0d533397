//! Worklist evaluation of a set of jointly defined tags.
//!
//! Every rule carries, per active tag, a count of body literals proved `+tag`
//! and a count proved `-tag`. A rule is applicable once the first count
//! reaches the body length and discarded once the second is non-zero. When a
//! conclusion lands, only literals whose conditions can mention it are
//! re-queued: the literal itself, its complement, and the heads (and
//! complements of heads) of rules using it in their body.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closure::{Incoherent, Sign, Tag, TagClosure};
use crate::model::{Literal, RuleId, Theory};

/// Order in which pending re-evaluations are processed. Results do not
/// depend on it; the shuffled order exists to test that.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum WorklistOrder {
    #[default]
    Fifo,
    Shuffled(u64),
}

enum Worklist {
    Fifo(VecDeque<(usize, Literal)>),
    Shuffled(Vec<(usize, Literal)>, ChaCha8Rng),
}

impl Worklist {
    fn new(order: WorklistOrder, mut initial: Vec<(usize, Literal)>) -> Self {
        match order {
            WorklistOrder::Fifo => Worklist::Fifo(initial.into()),
            WorklistOrder::Shuffled(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                initial.shuffle(&mut rng);
                Worklist::Shuffled(initial, rng)
            }
        }
    }

    fn push(&mut self, item: (usize, Literal)) {
        match self {
            Worklist::Fifo(q) => q.push_back(item),
            Worklist::Shuffled(v, _) => v.push(item),
        }
    }

    fn pop(&mut self) -> Option<(usize, Literal)> {
        match self {
            Worklist::Fifo(q) => q.pop_front(),
            Worklist::Shuffled(v, rng) => {
                if v.is_empty() {
                    None
                } else {
                    let i = rng.gen_range(0..v.len());
                    Some(v.swap_remove(i))
                }
            }
        }
    }
}

/// How an attacking rule `s` is shown not to apply in clause (2.3.1).
#[derive(Clone, Copy)]
enum Disposal {
    /// Some body literal is `-tag` in the proof so far.
    Derived(Tag),
    /// Some body literal is outside the completed λ-closure.
    OutsideLambda,
}

pub(crate) struct Fixpoint<'a> {
    theory: &'a Theory,
    active: Vec<Tag>,
    slots: [Option<usize>; 10],
    plus: Vec<Vec<bool>>,
    minus: Vec<Vec<bool>>,
    body_plus: Vec<Vec<u32>>,
    body_minus: Vec<Vec<u32>>,
    queued: Vec<Vec<bool>>,
    delta: Option<&'a TagClosure>,
    lambda_blocked: Vec<bool>,
    queue: Worklist,
}

impl<'a> Fixpoint<'a> {
    /// `delta` and `lambda` are completed closures for staged tags; they must
    /// not be listed in `active`.
    pub(crate) fn new(
        theory: &'a Theory,
        active: &[Tag],
        delta: Option<&'a TagClosure>,
        lambda: Option<&'a TagClosure>,
        order: WorklistOrder,
    ) -> Self {
        let mut slots = [None; 10];
        for (i, tag) in active.iter().enumerate() {
            slots[tag.index()] = Some(i);
        }
        let n = theory.literal_count();
        let rules = theory.rules().len();
        let lambda_blocked = match lambda {
            Some(l) => theory
                .rules()
                .iter()
                .map(|r| r.body.iter().any(|&a| !l.is_plus(a)))
                .collect(),
            None => Vec::new(),
        };
        let mut initial = Vec::with_capacity(n * active.len());
        for lit in theory.literals() {
            for slot in 0..active.len() {
                initial.push((slot, lit));
            }
        }
        Fixpoint {
            theory,
            active: active.to_vec(),
            slots,
            plus: vec![vec![false; n]; active.len()],
            minus: vec![vec![false; n]; active.len()],
            body_plus: vec![vec![0; rules]; active.len()],
            body_minus: vec![vec![0; rules]; active.len()],
            queued: vec![vec![true; n]; active.len()],
            delta,
            lambda_blocked,
            queue: Worklist::new(order, initial),
        }
    }

    /// Records `+tag lit` before evaluation starts.
    pub(crate) fn seed(&mut self, tag: Tag, lit: Literal) -> Result<(), Incoherent> {
        let slot = self.slots[tag.index()].expect("seed tag is not active");
        if !self.plus[slot][lit.index()] {
            self.derive(slot, Sign::Plus, lit);
        }
        self.check(slot, lit)
    }

    pub(crate) fn run(mut self) -> Result<Vec<TagClosure>, Incoherent> {
        while let Some((slot, q)) = self.queue.pop() {
            self.queued[slot][q.index()] = false;
            let tag = self.active[slot];
            if !self.plus[slot][q.index()] && self.holds(tag, Sign::Plus, q) {
                self.derive(slot, Sign::Plus, q);
            }
            if !self.minus[slot][q.index()] && self.holds(tag, Sign::Minus, q) {
                self.derive(slot, Sign::Minus, q);
            }
            self.check(slot, q)?;
        }
        self.active
            .iter()
            .enumerate()
            .map(|(slot, &tag)| TagClosure::from_signs(tag, &self.plus[slot], &self.minus[slot]))
            .collect()
    }

    fn check(&self, slot: usize, q: Literal) -> Result<(), Incoherent> {
        if self.plus[slot][q.index()] && self.minus[slot][q.index()] {
            Err(Incoherent {
                tag: self.active[slot],
                literal: q.index(),
            })
        } else {
            Ok(())
        }
    }

    fn derive(&mut self, slot: usize, sign: Sign, q: Literal) {
        let theory = self.theory;
        match sign {
            Sign::Plus => self.plus[slot][q.index()] = true,
            Sign::Minus => self.minus[slot][q.index()] = true,
        }
        self.touch(q);
        self.touch(q.complement());
        for &r in theory.rules_with_body_literal(q) {
            match sign {
                Sign::Plus => self.body_plus[slot][r.index()] += 1,
                Sign::Minus => self.body_minus[slot][r.index()] += 1,
            }
            let head = theory.rule(r).head;
            self.touch(head);
            self.touch(head.complement());
        }
    }

    fn touch(&mut self, lit: Literal) {
        for slot in 0..self.active.len() {
            let flag = &mut self.queued[slot][lit.index()];
            if !*flag {
                *flag = true;
                self.queue.push((slot, lit));
            }
        }
    }

    fn pos(&self, tag: Tag, lit: Literal) -> bool {
        match self.slots[tag.index()] {
            Some(slot) => self.plus[slot][lit.index()],
            None => self.fixed(tag).is_plus(lit),
        }
    }

    fn neg(&self, tag: Tag, lit: Literal) -> bool {
        match self.slots[tag.index()] {
            Some(slot) => self.minus[slot][lit.index()],
            None => self.fixed(tag).is_minus(lit),
        }
    }

    fn fixed(&self, tag: Tag) -> &TagClosure {
        match tag {
            Tag::Delta => self.delta.expect("completed Δ-closure required"),
            other => panic!("{other} is neither active nor a completed input"),
        }
    }

    fn applicable(&self, tag: Tag, r: RuleId) -> bool {
        let slot = self.slots[tag.index()].expect("tag not active");
        self.body_plus[slot][r.index()] as usize == self.theory.rule(r).body.len()
    }

    fn discarded(&self, tag: Tag, r: RuleId) -> bool {
        let slot = self.slots[tag.index()].expect("tag not active");
        self.body_minus[slot][r.index()] > 0
    }

    fn strict(&self, q: Literal) -> impl Iterator<Item = RuleId> + '_ {
        self.theory
            .rules_with_head(q)
            .iter()
            .copied()
            .filter(|&r| self.theory.rule(r).kind == crate::model::RuleKind::Strict)
    }

    fn firing(&self, q: Literal) -> impl Iterator<Item = RuleId> + '_ {
        self.theory
            .rules_with_head(q)
            .iter()
            .copied()
            .filter(|&r| self.theory.rule(r).kind.can_fire())
    }

    fn attackers(&self, q: Literal) -> impl Iterator<Item = RuleId> + '_ {
        self.theory.rules_with_head(q.complement()).iter().copied()
    }

    /// Rules for `q` that can fire and beat `s`.
    fn overriders(&self, s: RuleId, q: Literal) -> impl Iterator<Item = RuleId> + '_ {
        self.theory.beaten_by(s).iter().copied().filter(move |&t| {
            let rule = self.theory.rule(t);
            rule.head == q && rule.kind.can_fire()
        })
    }

    fn disposed(&self, disposal: Disposal, s: RuleId) -> bool {
        match disposal {
            Disposal::Derived(tag) => self.discarded(tag, s),
            Disposal::OutsideLambda => self.lambda_blocked[s.index()],
        }
    }

    fn active_attacker(&self, disposal: Disposal, s: RuleId) -> bool {
        match disposal {
            Disposal::Derived(tag) => self.applicable(tag, s),
            Disposal::OutsideLambda => !self.lambda_blocked[s.index()],
        }
    }

    fn holds(&self, tag: Tag, sign: Sign, q: Literal) -> bool {
        match tag {
            Tag::Delta => self.delta_rule(sign, q),
            Tag::Lambda => self.lambda_rule(sign, q),
            Tag::PartialPar => self.defeasible_rule(tag, Disposal::OutsideLambda, true, sign, q),
            Tag::PartialParStar => {
                self.individual_rule(tag, Disposal::OutsideLambda, true, sign, q)
            }
            Tag::Partial => self.defeasible_rule(tag, Disposal::Derived(tag), false, sign, q),
            Tag::PartialStar => self.individual_rule(tag, Disposal::Derived(tag), false, sign, q),
            Tag::DeltaAp => self.defeasible_rule(tag, Disposal::Derived(Tag::Supp), false, sign, q),
            Tag::DeltaApStar => {
                self.individual_rule(tag, Disposal::Derived(Tag::SuppStar), false, sign, q)
            }
            Tag::Supp => self.support_rule(tag, Tag::DeltaAp, sign, q),
            Tag::SuppStar => self.support_rule(tag, Tag::DeltaApStar, sign, q),
        }
    }

    fn delta_rule(&self, sign: Sign, q: Literal) -> bool {
        match sign {
            Sign::Plus => {
                self.theory.is_fact(q) || self.strict(q).any(|r| self.applicable(Tag::Delta, r))
            }
            Sign::Minus => {
                !self.theory.is_fact(q) && self.strict(q).all(|r| self.discarded(Tag::Delta, r))
            }
        }
    }

    fn lambda_rule(&self, sign: Sign, q: Literal) -> bool {
        let nq = q.complement();
        match sign {
            Sign::Plus => {
                self.pos(Tag::Delta, q)
                    || (self.firing(q).any(|r| self.applicable(Tag::Lambda, r))
                        && !self.pos(Tag::Delta, nq))
            }
            Sign::Minus => {
                !self.pos(Tag::Delta, q)
                    && (self.firing(q).all(|r| self.discarded(Tag::Lambda, r))
                        || self.pos(Tag::Delta, nq))
            }
        }
    }

    /// Clause (1) of the positive rule and clause (2.2); `staged` selects
    /// membership in the completed Δ-closure over derived `-Δ`.
    fn delta_clauses(&self, staged: bool, sign: Sign, q: Literal) -> (bool, bool) {
        let nq = q.complement();
        match (sign, staged) {
            (Sign::Plus, true) => (self.pos(Tag::Delta, q), !self.pos(Tag::Delta, nq)),
            (Sign::Plus, false) => (self.pos(Tag::Delta, q), self.neg(Tag::Delta, nq)),
            (Sign::Minus, true) => (!self.pos(Tag::Delta, q), self.pos(Tag::Delta, nq)),
            (Sign::Minus, false) => (self.neg(Tag::Delta, q), self.pos(Tag::Delta, nq)),
        }
    }

    /// Team defeat: each attacker must be disposed of or beaten by some
    /// applicable rule for `q`.
    fn defeasible_rule(
        &self,
        tag: Tag,
        disposal: Disposal,
        staged: bool,
        sign: Sign,
        q: Literal,
    ) -> bool {
        let (first, blocked) = self.delta_clauses(staged, sign, q);
        match sign {
            Sign::Plus => {
                first
                    || (self.firing(q).any(|r| self.applicable(tag, r))
                        && blocked
                        && self.attackers(q).all(|s| {
                            self.disposed(disposal, s)
                                || self.overriders(s, q).any(|t| self.applicable(tag, t))
                        }))
            }
            Sign::Minus => {
                first
                    && (self.firing(q).all(|r| self.discarded(tag, r))
                        || blocked
                        || self.attackers(q).any(|s| {
                            self.active_attacker(disposal, s)
                                && self.overriders(s, q).all(|t| self.discarded(tag, t))
                        }))
            }
        }
    }

    /// Individual defeat: a single applicable rule for `q` must beat every
    /// attacker that is not disposed of.
    fn individual_rule(
        &self,
        tag: Tag,
        disposal: Disposal,
        staged: bool,
        sign: Sign,
        q: Literal,
    ) -> bool {
        let (first, blocked) = self.delta_clauses(staged, sign, q);
        let theory = self.theory;
        match sign {
            Sign::Plus => {
                first
                    || (blocked
                        && self.firing(q).any(|r| {
                            self.applicable(tag, r)
                                && self
                                    .attackers(q)
                                    .all(|s| self.disposed(disposal, s) || theory.is_superior(r, s))
                        }))
            }
            Sign::Minus => {
                first
                    && (blocked
                        || self.firing(q).all(|r| {
                            self.discarded(tag, r)
                                || self.attackers(q).any(|s| {
                                    self.active_attacker(disposal, s) && !theory.is_superior(r, s)
                                })
                        }))
            }
        }
    }

    /// Support: a rule for `q` whose body is supported and which no
    /// non-refuted attacker beats. No clause on `~q` being definite.
    fn support_rule(&self, tag: Tag, principal: Tag, sign: Sign, q: Literal) -> bool {
        let theory = self.theory;
        match sign {
            Sign::Plus => {
                self.pos(Tag::Delta, q)
                    || self.firing(q).any(|r| {
                        self.applicable(tag, r)
                            && self
                                .attackers(q)
                                .all(|s| self.discarded(principal, s) || !theory.is_superior(s, r))
                    })
            }
            Sign::Minus => {
                self.neg(Tag::Delta, q)
                    && self.firing(q).all(|r| {
                        self.discarded(tag, r)
                            || self
                                .attackers(q)
                                .any(|s| self.applicable(principal, s) && theory.is_superior(s, r))
                    })
            }
        }
    }
}
