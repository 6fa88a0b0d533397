//! Proof conditions as data.
//!
//! Each positive inference rule is written once as a [`Cond`] tree; the
//! negative rule is its [`strong_negation`]. The trees are interpreted
//! directly by [`evaluate`], which the reference oracle uses, and rendered in
//! the usual notation by `Display`.

use std::fmt;

use crate::closure::{Sign, Tag};
use crate::model::{Literal, RuleId, RuleKind, Theory};

/// Which rules for a literal a quantifier ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleScope {
    /// `R[q]`
    All,
    /// `R_s[q]`
    Strict,
    /// `R_sd[q]`
    Firing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quant {
    Exists,
    Forall,
}

impl Quant {
    fn dual(self) -> Quant {
        match self {
            Quant::Exists => Quant::Forall,
            Quant::Forall => Quant::Exists,
        }
    }
}

/// A literal position in a condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LitTerm {
    /// The literal being concluded.
    Query,
    /// Its complement.
    Complement,
    /// A body literal bound by an enclosing [`Cond::Body`].
    Var(char),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cond {
    /// Conjunction; empty means true.
    And(Vec<Cond>),
    /// Disjunction; empty means false.
    Or(Vec<Cond>),
    /// Quantifier over rules with the given head.
    Rules {
        quant: Quant,
        var: char,
        scope: RuleScope,
        head: LitTerm,
        body: Box<Cond>,
    },
    /// Quantifier over the body literals of a bound rule.
    Body {
        quant: Quant,
        var: char,
        rule: char,
        body: Box<Cond>,
    },
    /// `±tag lit` occurs in the proof so far.
    Proved { sign: Sign, tag: Tag, lit: LitTerm },
    /// `+tag lit` is (or is not) in a completed closure.
    Closure {
        tag: Tag,
        lit: LitTerm,
        member: bool,
    },
    /// `lit ∈ F` (or `∉`).
    Fact { lit: LitTerm, member: bool },
    /// `winner > loser` holds (or does not).
    Superior {
        winner: char,
        loser: char,
        holds: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConditionError {
    #[error("variable `{0}` is not bound")]
    Unbound(char),
    #[error("variable `{0}` is bound twice")]
    Shadowed(char),
    #[error("variable `{var}` is used as a {expected} but bound to a {found}")]
    Kind {
        var: char,
        expected: &'static str,
        found: &'static str,
    },
    #[error("no conclusions available for {0}")]
    Unavailable(Tag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarKind {
    Rule,
    Lit,
}

impl VarKind {
    fn name(self) -> &'static str {
        match self {
            VarKind::Rule => "rule",
            VarKind::Lit => "literal",
        }
    }
}

fn expect(scope: &[(char, VarKind)], var: char, kind: VarKind) -> Result<(), ConditionError> {
    match scope.iter().rev().find(|(v, _)| *v == var) {
        None => Err(ConditionError::Unbound(var)),
        Some((_, k)) if *k != kind => Err(ConditionError::Kind {
            var,
            expected: kind.name(),
            found: k.name(),
        }),
        Some(_) => Ok(()),
    }
}

fn check_term(scope: &[(char, VarKind)], lit: LitTerm) -> Result<(), ConditionError> {
    match lit {
        LitTerm::Var(v) => expect(scope, v, VarKind::Lit),
        _ => Ok(()),
    }
}

fn check(cond: &Cond, scope: &mut Vec<(char, VarKind)>) -> Result<(), ConditionError> {
    let bind = |var: char, kind, body: &Cond, scope: &mut Vec<_>| {
        if scope.iter().any(|(v, _)| *v == var) {
            return Err(ConditionError::Shadowed(var));
        }
        scope.push((var, kind));
        let result = check(body, scope);
        scope.pop();
        result
    };
    match cond {
        Cond::And(cs) | Cond::Or(cs) => cs.iter().try_for_each(|c| check(c, scope)),
        Cond::Rules {
            var, head, body, ..
        } => {
            check_term(scope, *head)?;
            bind(*var, VarKind::Rule, body, scope)
        }
        Cond::Body {
            var, rule, body, ..
        } => {
            expect(scope, *rule, VarKind::Rule)?;
            bind(*var, VarKind::Lit, body, scope)
        }
        Cond::Proved { lit, .. } | Cond::Closure { lit, .. } | Cond::Fact { lit, .. } => {
            check_term(scope, *lit)
        }
        Cond::Superior { winner, loser, .. } => {
            expect(scope, *winner, VarKind::Rule)?;
            expect(scope, *loser, VarKind::Rule)
        }
    }
}

/// Reports unbound, shadowed or mis-sorted variables.
pub fn validate(cond: &Cond) -> Result<(), ConditionError> {
    check(cond, &mut Vec::new())
}

fn dual(cond: &Cond) -> Cond {
    match cond {
        Cond::And(cs) => Cond::Or(cs.iter().map(dual).collect()),
        Cond::Or(cs) => Cond::And(cs.iter().map(dual).collect()),
        Cond::Rules {
            quant,
            var,
            scope,
            head,
            body,
        } => Cond::Rules {
            quant: quant.dual(),
            var: *var,
            scope: *scope,
            head: *head,
            body: Box::new(dual(body)),
        },
        Cond::Body {
            quant,
            var,
            rule,
            body,
        } => Cond::Body {
            quant: quant.dual(),
            var: *var,
            rule: *rule,
            body: Box::new(dual(body)),
        },
        Cond::Proved { sign, tag, lit } => Cond::Proved {
            sign: sign.flip(),
            tag: *tag,
            lit: *lit,
        },
        Cond::Closure { tag, lit, member } => Cond::Closure {
            tag: *tag,
            lit: *lit,
            member: !member,
        },
        Cond::Fact { lit, member } => Cond::Fact {
            lit: *lit,
            member: !member,
        },
        Cond::Superior {
            winner,
            loser,
            holds,
        } => Cond::Superior {
            winner: *winner,
            loser: *loser,
            holds: !holds,
        },
    }
}

/// The dual condition: quantifiers and connectives swapped, `+x` and `-x`
/// exchanged, memberships and superiority atoms negated.
pub fn strong_negation(cond: &Cond) -> Result<Cond, ConditionError> {
    validate(cond)?;
    Ok(dual(cond))
}

fn and(cs: impl IntoIterator<Item = Cond>) -> Cond {
    Cond::And(cs.into_iter().collect())
}

fn or(cs: impl IntoIterator<Item = Cond>) -> Cond {
    Cond::Or(cs.into_iter().collect())
}

fn rules(quant: Quant, var: char, scope: RuleScope, head: LitTerm, body: Cond) -> Cond {
    Cond::Rules {
        quant,
        var,
        scope,
        head,
        body: Box::new(body),
    }
}

fn body(quant: Quant, var: char, rule: char, cond: Cond) -> Cond {
    Cond::Body {
        quant,
        var,
        rule,
        body: Box::new(cond),
    }
}

fn proved(sign: Sign, tag: Tag, lit: LitTerm) -> Cond {
    Cond::Proved { sign, tag, lit }
}

/// `∀a ∈ A(rule): +tag a ∈ P`
fn applicable(tag: Tag, rule: char) -> Cond {
    body(
        Quant::Forall,
        'a',
        rule,
        proved(Sign::Plus, tag, LitTerm::Var('a')),
    )
}

/// `∃a ∈ A(rule): -tag a ∈ P`
fn discarded(tag: Tag, rule: char) -> Cond {
    body(
        Quant::Exists,
        'a',
        rule,
        proved(Sign::Minus, tag, LitTerm::Var('a')),
    )
}

fn superior(winner: char, loser: char) -> Cond {
    Cond::Superior {
        winner,
        loser,
        holds: true,
    }
}

/// Shared shape of the defeasible rules. `staged` switches clause (1) and
/// (2.2) to completed Δ-closure membership; `attack` is clause (2.3.1) for
/// attacker `s`.
fn defeasible(tag: Tag, staged: bool, team: bool, attack: Cond) -> Cond {
    use LitTerm::{Complement, Query};
    let (definite, blocked) = if staged {
        (
            Cond::Closure {
                tag: Tag::Delta,
                lit: Query,
                member: true,
            },
            Cond::Closure {
                tag: Tag::Delta,
                lit: Complement,
                member: false,
            },
        )
    } else {
        (
            proved(Sign::Plus, Tag::Delta, Query),
            proved(Sign::Minus, Tag::Delta, Complement),
        )
    };
    let overridden = if team {
        rules(
            Quant::Exists,
            't',
            RuleScope::Firing,
            Query,
            and([applicable(tag, 't'), superior('t', 's')]),
        )
    } else {
        superior('r', 's')
    };
    let attackers = rules(
        Quant::Forall,
        's',
        RuleScope::All,
        Complement,
        or([attack, overridden]),
    );
    let second = if team {
        and([
            rules(
                Quant::Exists,
                'r',
                RuleScope::Firing,
                Query,
                applicable(tag, 'r'),
            ),
            blocked,
            attackers,
        ])
    } else {
        and([
            rules(
                Quant::Exists,
                'r',
                RuleScope::Firing,
                Query,
                and([applicable(tag, 'r'), attackers]),
            ),
            blocked,
        ])
    };
    or([definite, second])
}

fn support(tag: Tag, principal: Tag) -> Cond {
    use LitTerm::{Complement, Query};
    let unbeaten = rules(
        Quant::Forall,
        's',
        RuleScope::All,
        Complement,
        or([
            Cond::Superior {
                winner: 's',
                loser: 'r',
                holds: false,
            },
            discarded(principal, 's'),
        ]),
    );
    or([
        proved(Sign::Plus, Tag::Delta, Query),
        rules(
            Quant::Exists,
            'r',
            RuleScope::Firing,
            Query,
            and([applicable(tag, 'r'), unbeaten]),
        ),
    ])
}

/// Condition under which `+tag q` may be added to a proof.
pub fn positive_condition(tag: Tag) -> Cond {
    use LitTerm::{Complement, Query};
    let outside_lambda = body(
        Quant::Exists,
        'a',
        's',
        Cond::Closure {
            tag: Tag::Lambda,
            lit: LitTerm::Var('a'),
            member: false,
        },
    );
    match tag {
        Tag::Delta => or([
            Cond::Fact {
                lit: Query,
                member: true,
            },
            rules(
                Quant::Exists,
                'r',
                RuleScope::Strict,
                Query,
                applicable(Tag::Delta, 'r'),
            ),
        ]),
        Tag::Lambda => or([
            Cond::Closure {
                tag: Tag::Delta,
                lit: Query,
                member: true,
            },
            and([
                rules(
                    Quant::Exists,
                    'r',
                    RuleScope::Firing,
                    Query,
                    applicable(Tag::Lambda, 'r'),
                ),
                Cond::Closure {
                    tag: Tag::Delta,
                    lit: Complement,
                    member: false,
                },
            ]),
        ]),
        Tag::PartialPar => defeasible(tag, true, true, outside_lambda),
        Tag::PartialParStar => defeasible(tag, true, false, outside_lambda),
        Tag::Partial => defeasible(tag, false, true, discarded(tag, 's')),
        Tag::PartialStar => defeasible(tag, false, false, discarded(tag, 's')),
        Tag::DeltaAp => defeasible(tag, false, true, discarded(Tag::Supp, 's')),
        Tag::DeltaApStar => defeasible(tag, false, false, discarded(Tag::SuppStar, 's')),
        Tag::Supp => support(tag, Tag::DeltaAp),
        Tag::SuppStar => support(tag, Tag::DeltaApStar),
    }
}

/// Condition for `±tag q`; the negative one is derived by strong negation.
pub fn proof_condition(tag: Tag, sign: Sign) -> Cond {
    let plus = positive_condition(tag);
    match sign {
        Sign::Plus => plus,
        Sign::Minus => strong_negation(&plus).expect("built-in conditions are well formed"),
    }
}

/// Conclusions a condition may consult.
pub trait ProofState {
    /// Whether `±tag lit` has been derived; `None` if `tag` is not tracked.
    fn proved(&self, sign: Sign, tag: Tag, lit: Literal) -> Option<bool>;
    /// Whether `+tag lit` is in the completed closure; `None` if unavailable.
    fn in_closure(&self, tag: Tag, lit: Literal) -> Option<bool>;
}

#[derive(Clone, Copy)]
enum Binding {
    Rule(RuleId),
    Lit(Literal),
}

struct Env<'a> {
    theory: &'a Theory,
    q: Literal,
    vars: Vec<(char, Binding)>,
}

impl Env<'_> {
    fn lookup(&self, var: char) -> Result<Binding, ConditionError> {
        self.vars
            .iter()
            .rev()
            .find(|(v, _)| *v == var)
            .map(|(_, b)| *b)
            .ok_or(ConditionError::Unbound(var))
    }

    fn rule(&self, var: char) -> Result<RuleId, ConditionError> {
        match self.lookup(var)? {
            Binding::Rule(r) => Ok(r),
            Binding::Lit(_) => Err(ConditionError::Kind {
                var,
                expected: "rule",
                found: "literal",
            }),
        }
    }

    fn literal(&self, term: LitTerm) -> Result<Literal, ConditionError> {
        match term {
            LitTerm::Query => Ok(self.q),
            LitTerm::Complement => Ok(self.q.complement()),
            LitTerm::Var(var) => match self.lookup(var)? {
                Binding::Lit(l) => Ok(l),
                Binding::Rule(_) => Err(ConditionError::Kind {
                    var,
                    expected: "literal",
                    found: "rule",
                }),
            },
        }
    }
}

fn quantify<T>(
    quant: Quant,
    items: impl IntoIterator<Item = T>,
    mut f: impl FnMut(T) -> Result<bool, ConditionError>,
) -> Result<bool, ConditionError> {
    for item in items {
        let v = f(item)?;
        match quant {
            Quant::Exists if v => return Ok(true),
            Quant::Forall if !v => return Ok(false),
            _ => {}
        }
    }
    Ok(quant == Quant::Forall)
}

fn eval(cond: &Cond, env: &mut Env<'_>, state: &dyn ProofState) -> Result<bool, ConditionError> {
    match cond {
        Cond::And(cs) => quantify(Quant::Forall, cs, |c| eval(c, env, state)),
        Cond::Or(cs) => quantify(Quant::Exists, cs, |c| eval(c, env, state)),
        Cond::Rules {
            quant,
            var,
            scope,
            head,
            body,
        } => {
            let head = env.literal(*head)?;
            let theory = env.theory;
            let candidates = theory.rules_with_head(head).iter().copied().filter(|&r| {
                let kind = theory.rule(r).kind;
                match scope {
                    RuleScope::All => true,
                    RuleScope::Strict => kind == RuleKind::Strict,
                    RuleScope::Firing => kind.can_fire(),
                }
            });
            quantify(*quant, candidates, |r| {
                env.vars.push((*var, Binding::Rule(r)));
                let v = eval(body, env, state);
                env.vars.pop();
                v
            })
        }
        Cond::Body {
            quant,
            var,
            rule,
            body,
        } => {
            let rule = env.rule(*rule)?;
            let lits = env.theory.rule(rule).body.clone();
            quantify(*quant, lits, |a| {
                env.vars.push((*var, Binding::Lit(a)));
                let v = eval(body, env, state);
                env.vars.pop();
                v
            })
        }
        Cond::Proved { sign, tag, lit } => state
            .proved(*sign, *tag, env.literal(*lit)?)
            .ok_or(ConditionError::Unavailable(*tag)),
        Cond::Closure { tag, lit, member } => state
            .in_closure(*tag, env.literal(*lit)?)
            .map(|m| m == *member)
            .ok_or(ConditionError::Unavailable(*tag)),
        Cond::Fact { lit, member } => Ok(env.theory.is_fact(env.literal(*lit)?) == *member),
        Cond::Superior {
            winner,
            loser,
            holds,
        } => Ok(env
            .theory
            .is_superior(env.rule(*winner)?, env.rule(*loser)?)
            == *holds),
    }
}

/// Evaluates `cond` for the query literal `q`.
pub fn evaluate(
    cond: &Cond,
    theory: &Theory,
    q: Literal,
    state: &dyn ProofState,
) -> Result<bool, ConditionError> {
    eval(
        cond,
        &mut Env {
            theory,
            q,
            vars: Vec::new(),
        },
        state,
    )
}

impl fmt::Display for LitTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LitTerm::Query => f.write_str("q"),
            LitTerm::Complement => f.write_str("∼q"),
            LitTerm::Var(v) => write!(f, "{v}"),
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, cs: &[Cond], op: &str, empty: &str) -> fmt::Result {
    if cs.is_empty() {
        return f.write_str(empty);
    }
    for (i, c) in cs.iter().enumerate() {
        if i > 0 {
            write!(f, " {op} ")?;
        }
        match c {
            Cond::And(_) | Cond::Or(_) | Cond::Rules { .. } | Cond::Body { .. } => {
                write!(f, "({c})")?
            }
            _ => write!(f, "{c}")?,
        }
    }
    Ok(())
}

impl fmt::Display for Cond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = |quant: &Quant| match quant {
            Quant::Exists => "∃",
            Quant::Forall => "∀",
        };
        match self {
            Cond::And(cs) => write_list(f, cs, "∧", "⊤"),
            Cond::Or(cs) => write_list(f, cs, "∨", "⊥"),
            Cond::Rules {
                quant,
                var,
                scope,
                head,
                body,
            } => {
                let set = match scope {
                    RuleScope::All => "R",
                    RuleScope::Strict => "R_s",
                    RuleScope::Firing => "R_sd",
                };
                write!(f, "{}{var}∈{set}[{head}]: ({body})", q(quant))
            }
            Cond::Body {
                quant,
                var,
                rule,
                body,
            } => {
                write!(f, "{}{var}∈A({rule}): {body}", q(quant))
            }
            Cond::Proved { sign, tag, lit } => {
                write!(f, "{}{}{lit}∈P", sign.symbol(), tag.symbol())
            }
            Cond::Closure { tag, lit, member } => {
                let rel = if *member { "∈" } else { "∉" };
                write!(f, "+{}{lit}{rel}P_{}", tag.symbol(), tag.symbol())
            }
            Cond::Fact { lit, member } => {
                write!(f, "{lit}{}F", if *member { "∈" } else { "∉" })
            }
            Cond::Superior {
                winner,
                loser,
                holds,
            } => {
                if *holds {
                    write!(f, "{winner}>{loser}")
                } else {
                    write!(f, "¬({winner}>{loser})")
                }
            }
        }
    }
}
