use crate::model::{Literal, RuleId, RuleKind, Theory};

/// Deletes rules that cannot matter, repeating until nothing changes:
///
/// - for a fact `p`, every rule for `p` and every non-strict rule for `~p`;
/// - for a literal `p` that is neither a fact nor the head of a remaining
///   rule, every rule with `p` in its body.
///
/// Superiority pairs naming a deleted rule are dropped. Atom ids are kept.
pub fn simplify(theory: &Theory) -> Theory {
    let n = theory.rules().len();
    let mut alive = vec![true; n];
    for &p in theory.facts() {
        for &r in theory.rules_with_head(p) {
            alive[r.index()] = false;
        }
        for &r in theory.rules_with_head(p.complement()) {
            if theory.rule(r).kind != RuleKind::Strict {
                alive[r.index()] = false;
            }
        }
    }
    loop {
        let unsupported: Vec<Literal> = theory
            .literals()
            .filter(|&p| {
                !theory.is_fact(p) && theory.rules_with_head(p).iter().all(|r| !alive[r.index()])
            })
            .collect();
        let mut changed = false;
        for p in unsupported {
            for &r in theory.rules_with_body_literal(p) {
                if alive[r.index()] {
                    alive[r.index()] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut new_id = vec![None; n];
    let mut rules = Vec::new();
    for (i, rule) in theory.rules().iter().enumerate() {
        if alive[i] {
            new_id[i] = Some(RuleId(rules.len() as u32));
            rules.push(rule.clone());
        }
    }
    let superiority = theory
        .superiority()
        .iter()
        .filter_map(|&(w, l)| Some((new_id[w.index()]?, new_id[l.index()]?)))
        .collect();
    theory.with_parts(theory.facts().to_vec(), rules, superiority)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{read_theory, serialize_theory};

    #[test]
    fn fact_removes_both_sides() {
        let t = read_theory("fact q.\nr: => q.\ns: => ~q.").unwrap();
        assert_eq!(serialize_theory(&simplify(&t)), "fact q.\n");
    }

    #[test]
    fn strict_rule_against_a_fact_stays() {
        let t = read_theory("fact q.\nr: p -> ~q.\ns: => p.").unwrap();
        assert_eq!(simplify(&t), t);
    }

    #[test]
    fn unsupported_body_removes_rule() {
        let t = read_theory("r: false => ~p.\ns: => p.").unwrap();
        assert_eq!(serialize_theory(&simplify(&t)), "s: => p.\n");
    }

    #[test]
    fn deletions_cascade() {
        let t = read_theory("a: x => y.\nb: y => z.\nc: => w.\nb > c.").unwrap();
        assert_eq!(serialize_theory(&simplify(&t)), "c: => w.\n");
    }
}
