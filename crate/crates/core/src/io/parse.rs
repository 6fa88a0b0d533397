//! Lexer and parser for the textual theory format.
//!
//! ```text
//! % comment
//! fact penguin(tweety).
//! r1: bird(X) => fly(X).
//! r3: penguin(X) -> bird(X).
//! r4: injured(X) ~> ~fly(X).
//! r2 > r1.
//! ```

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::model::RuleKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    Lexical,
    Syntax,
    DuplicateLabel,
    Grounding,
    Validation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    fn from_ident(s: &str) -> Term {
        let first = s.chars().next().unwrap_or('a');
        if first.is_ascii_uppercase() || first == '_' {
            Term::Var(s.to_string())
        } else {
            Term::Const(s.to_string())
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Var(s) | Term::Const(s) => s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceLiteral {
    pub positive: bool,
    pub predicate: String,
    pub args: Vec<Term>,
    pub pos: Pos,
}

impl SourceLiteral {
    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| matches!(t, Term::Const(_)))
    }

    /// Atom name under a substitution for its variables.
    pub fn atom_name(&self, subst: &dyn Fn(&str) -> String) -> String {
        if self.args.is_empty() {
            return self.predicate.clone();
        }
        let args: Vec<String> = self
            .args
            .iter()
            .map(|t| match t {
                Term::Var(v) => subst(v),
                Term::Const(c) => c.clone(),
            })
            .collect();
        format!("{}({})", self.predicate, args.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceRule {
    pub label: String,
    pub kind: RuleKind,
    pub body: Vec<SourceLiteral>,
    pub head: SourceLiteral,
    pub pos: Pos,
}

impl SourceRule {
    /// Distinct variables, in order of first appearance (body, then head).
    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> = Vec::new();
        for lit in self.body.iter().chain(std::iter::once(&self.head)) {
            for t in &lit.args {
                if let Term::Var(v) = t {
                    if !vars.contains(v) {
                        vars.push(v.clone());
                    }
                }
            }
        }
        vars
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceSuperiority {
    pub winner: String,
    pub loser: String,
    pub pos: Pos,
}

/// A parsed theory, possibly with variables, with source positions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SourceTheory {
    pub facts: Vec<SourceLiteral>,
    pub rules: Vec<SourceRule>,
    pub superiority: Vec<SourceSuperiority>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Colon,
    Gt,
    Tilde,
    Arrow(RuleKind),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Gt => f.write_str("`>`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Arrow(k) => write!(f, "`{}`", k.arrow()),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '#' | '\'')
}

fn lex(text: &str) -> (Vec<(Tok, Pos)>, Vec<Diagnostic>) {
    let mut toks = Vec::new();
    let mut diags = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos {
                line: lineno + 1,
                column: i + 1,
            };
            let next = chars.get(i + 1).copied();
            let (tok, width) = match c {
                '%' => break,
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                c if is_ident_start(c) => {
                    let start = i;
                    while i < chars.len() && is_ident_char(chars[i]) {
                        i += 1;
                    }
                    toks.push((Tok::Ident(chars[start..i].iter().collect()), pos));
                    continue;
                }
                '~' if next == Some('>') => (Tok::Arrow(RuleKind::Defeater), 2),
                '-' if next == Some('>') => (Tok::Arrow(RuleKind::Strict), 2),
                '=' if next == Some('>') => (Tok::Arrow(RuleKind::Defeasible), 2),
                '~' => (Tok::Tilde, 1),
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                ',' => (Tok::Comma, 1),
                '.' => (Tok::Dot, 1),
                ':' => (Tok::Colon, 1),
                '>' => (Tok::Gt, 1),
                other => {
                    diags.push(Diagnostic {
                        kind: DiagnosticKind::Lexical,
                        pos,
                        message: format!("unexpected character `{other}`"),
                    });
                    i += 1;
                    continue;
                }
            };
            toks.push((tok, pos));
            i += width;
        }
    }
    (toks, diags)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.at + 1).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn error(&self, expected: &str) -> Diagnostic {
        let found = match self.peek() {
            Some(t) => t.to_string(),
            None => "end of input".to_string(),
        };
        Diagnostic {
            kind: DiagnosticKind::Syntax,
            pos: self.pos(),
            message: format!("expected {expected}, found {found}"),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn ident(&mut self, expected: &str) -> PResult<(String, Pos)> {
        match self.toks.get(self.at) {
            Some((Tok::Ident(s), p)) => {
                let out = (s.clone(), *p);
                self.at += 1;
                Ok(out)
            }
            _ => Err(self.error(expected)),
        }
    }

    /// Skips past the next `.` so parsing can resume at a statement boundary.
    fn recover(&mut self) {
        while let Some(t) = self.peek() {
            let dot = *t == Tok::Dot;
            self.at += 1;
            if dot {
                break;
            }
        }
    }

    fn literal(&mut self) -> PResult<SourceLiteral> {
        let pos = self.pos();
        let positive = !self.eat(&Tok::Tilde);
        let (predicate, _) = self.ident("an atom")?;
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                let (name, _) = self.ident("a term")?;
                args.push(Term::from_ident(&name));
                if self.eat(&Tok::RParen) {
                    break;
                }
                self.expect(Tok::Comma, "`,` or `)`")?;
            }
        }
        Ok(SourceLiteral {
            positive,
            predicate,
            args,
            pos,
        })
    }

    fn statement(&mut self, out: &mut SourceTheory) -> PResult<()> {
        let pos = self.pos();
        let is_fact = matches!(self.peek(), Some(Tok::Ident(s)) if s == "fact")
            && !matches!(self.peek2(), Some(Tok::Colon | Tok::Gt));
        if is_fact {
            self.at += 1;
            let lit = self.literal()?;
            self.expect(Tok::Dot, "`.`")?;
            out.facts.push(lit);
            return Ok(());
        }
        let (label, _) = self.ident("`fact`, a rule label or a superiority pair")?;
        if self.eat(&Tok::Gt) {
            let (loser, _) = self.ident("a rule label")?;
            self.expect(Tok::Dot, "`.`")?;
            out.superiority.push(SourceSuperiority {
                winner: label,
                loser,
                pos,
            });
            return Ok(());
        }
        self.expect(Tok::Colon, "`:` or `>`")?;
        let mut body = Vec::new();
        let kind = loop {
            if let (true, Some(Tok::Arrow(kind))) = (body.is_empty(), self.peek()) {
                let kind = *kind;
                self.at += 1;
                break kind;
            }
            body.push(self.literal()?);
            match self.peek() {
                Some(Tok::Comma) => self.at += 1,
                Some(Tok::Arrow(kind)) => {
                    let kind = *kind;
                    self.at += 1;
                    break kind;
                }
                _ => return Err(self.error("`,` or an arrow")),
            }
        };
        let head = self.literal()?;
        self.expect(Tok::Dot, "`.`")?;
        out.rules.push(SourceRule {
            label,
            kind,
            body,
            head,
            pos,
        });
        Ok(())
    }
}

/// Parses a theory. All diagnostics found are returned, in source order.
pub fn parse(text: &str) -> Result<SourceTheory, Vec<Diagnostic>> {
    let (toks, mut diags) = lex(text);
    let end = Pos {
        line: text.lines().count().max(1),
        column: text.lines().last().map_or(1, |l| l.chars().count() + 1),
    };
    let mut parser = Parser { toks, at: 0, end };
    let mut out = SourceTheory::default();
    while parser.peek().is_some() {
        if let Err(d) = parser.statement(&mut out) {
            diags.push(d);
            parser.recover();
        }
    }
    let mut seen: HashMap<&str, Pos> = HashMap::new();
    for rule in &out.rules {
        if let Some(first) = seen.insert(&rule.label, rule.pos) {
            diags.push(Diagnostic {
                kind: DiagnosticKind::DuplicateLabel,
                pos: rule.pos,
                message: format!("rule label `{}` already defined at {first}", rule.label),
            });
            seen.insert(&rule.label, first);
        }
    }
    if diags.is_empty() {
        Ok(out)
    } else {
        diags.sort_by_key(|d| d.pos);
        Err(diags)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_body_rule() {
        let src = parse("r: => q.").unwrap();
        assert_eq!(src.rules.len(), 1);
        assert!(src.rules[0].body.is_empty());
        assert_eq!(src.rules[0].kind, RuleKind::Defeasible);
        assert_eq!(src.rules[0].head.predicate, "q");
    }

    #[test]
    fn superiority_between_labels_only() {
        let err = parse("r1: p > r2.").unwrap_err();
        assert_eq!(err[0].kind, DiagnosticKind::Syntax);
        assert_eq!(err[0].pos, Pos { line: 1, column: 7 });
    }

    #[test]
    fn defeater_arrow_and_negation() {
        let src = parse("r4: injured(X) ~> ~fly(X).").unwrap();
        let r = &src.rules[0];
        assert_eq!(r.kind, RuleKind::Defeater);
        assert!(!r.head.positive);
        assert_eq!(r.head.args, vec![Term::Var("X".into())]);
    }

    #[test]
    fn fact_can_be_a_label() {
        let src = parse("fact: p -> q.\nfact > r.\nr: => ~q.").unwrap();
        assert_eq!(src.rules[0].label, "fact");
        assert_eq!(src.superiority[0].winner, "fact");
    }

    #[test]
    fn lexical_errors_carry_positions() {
        let err = parse("fact p.\n  r: p & q => s.").unwrap_err();
        assert_eq!(err[0].kind, DiagnosticKind::Lexical);
        assert_eq!(err[0].pos, Pos { line: 2, column: 8 });
    }

    #[test]
    fn duplicate_labels_are_diagnosed() {
        let err = parse("r: => q.\nr: => p.").unwrap_err();
        assert_eq!(err.len(), 1);
        assert_eq!(err[0].kind, DiagnosticKind::DuplicateLabel);
        assert_eq!(err[0].pos.line, 2);
    }

    #[test]
    fn parsing_resumes_after_an_error() {
        let err = parse("r: p q => s.\nt: => .\nfact ok.").unwrap_err();
        assert_eq!(err.len(), 2);
    }
}
