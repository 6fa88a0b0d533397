//! Dependency graphs, loops, layer maps and conflicts.

use petgraph::algo::{tarjan_scc, toposort};
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::{Bfs, EdgeRef};
use petgraph::Direction;

use crate::model::{Literal, RuleKind, Theory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    All,
    StrictOnly,
    StrictDefeasible,
}

impl Scope {
    fn admits(self, kind: RuleKind) -> bool {
        match self {
            Scope::All => true,
            Scope::StrictOnly => kind == RuleKind::Strict,
            Scope::StrictDefeasible => kind.can_fire(),
        }
    }
}

/// Edges run from a rule head to each of its body elements. Nodes are
/// literal ids, or atom ids in merged mode, so node `i` is element `i`.
#[derive(Debug, Clone)]
pub struct DependencyGraph {
    pub scope: Scope,
    pub merged: bool,
    graph: DiGraph<(), ()>,
}

pub fn dependency_graph(theory: &Theory, scope: Scope, merged: bool) -> DependencyGraph {
    let n = if merged {
        theory.atom_count()
    } else {
        theory.literal_count()
    };
    let node = |l: Literal| {
        if merged {
            l.atom().0 as usize
        } else {
            l.index()
        }
    };
    let mut graph = DiGraph::with_capacity(n, theory.rules().len());
    for _ in 0..n {
        graph.add_node(());
    }
    for rule in theory.rules().iter().filter(|r| scope.admits(r.kind)) {
        let h = NodeIndex::new(node(rule.head));
        for &b in &rule.body {
            let b = NodeIndex::new(node(b));
            if graph.find_edge(h, b).is_none() {
                graph.add_edge(h, b, ());
            }
        }
    }
    DependencyGraph {
        scope,
        merged,
        graph,
    }
}

impl DependencyGraph {
    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.graph
            .contains_edge(NodeIndex::new(from), NodeIndex::new(to))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.graph
            .edge_references()
            .map(|e| (e.source().index(), e.target().index()))
    }

    /// Nodes reachable from `from` in one or more steps.
    pub fn dependencies(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        let start = NodeIndex::new(from);
        for next in self.graph.neighbors_directed(start, Direction::Outgoing) {
            if seen[next.index()] {
                continue;
            }
            let mut bfs = Bfs::new(&self.graph, next);
            while let Some(v) = bfs.next(&self.graph) {
                seen[v.index()] = true;
            }
        }
        seen
    }

    /// Nodes on a cycle: members of a non-trivial strongly connected
    /// component, or nodes with a self-edge.
    pub fn cyclic_nodes(&self) -> Vec<bool> {
        let mut out = vec![false; self.node_count()];
        for scc in tarjan_scc(&self.graph) {
            if scc.len() > 1 || self.graph.contains_edge(scc[0], scc[0]) {
                for v in scc {
                    out[v.index()] = true;
                }
            }
        }
        out
    }

    /// Longest-path layering: nodes without dependencies at 0, every node one
    /// above its highest dependency. `None` when the graph has a cycle.
    pub fn layer_map(&self) -> Option<Vec<usize>> {
        let order = toposort(&self.graph, None).ok()?;
        let mut layer = vec![0usize; self.node_count()];
        // Heads come first in topological order; visit bodies first.
        for v in order.into_iter().rev() {
            layer[v.index()] = self
                .graph
                .neighbors_directed(v, Direction::Outgoing)
                .map(|b| layer[b.index()] + 1)
                .max()
                .unwrap_or(0);
        }
        Some(layer)
    }
}

/// Checks that `map` puts every in-scope rule head strictly above its body
/// elements.
pub fn layer_map_admissible(theory: &Theory, scope: Scope, merged: bool, map: &[usize]) -> bool {
    let node = |l: Literal| {
        if merged {
            l.atom().0 as usize
        } else {
            l.index()
        }
    };
    theory
        .rules()
        .iter()
        .filter(|r| scope.admits(r.kind))
        .all(|r| r.body.iter().all(|&b| map[node(r.head)] > map[node(b)]))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub hierarchical: bool,
    pub semi_hierarchical: bool,
    pub strict_semi_hierarchical: bool,
    /// The strict and defeasible rules alone are semi-hierarchical.
    pub sd_semi_hierarchical: bool,
    pub looping_literals: Vec<Literal>,
    pub self_loops: Vec<Literal>,
    pub strict_loops: Vec<Literal>,
    pub sd_loops: Vec<Literal>,
    pub conflicted_literals: Vec<Literal>,
    /// Atom layers witnessing hierarchy.
    pub atom_layers: Option<Vec<usize>>,
    /// Literal layers witnessing semi-hierarchy.
    pub literal_layers: Option<Vec<usize>>,
    pub fact_deficient: bool,
    pub empty_superiority: bool,
    pub no_strict_rules: bool,
}

fn cyclic_literals(theory: &Theory, scope: Scope) -> Vec<Literal> {
    let cyclic = dependency_graph(theory, scope, false).cyclic_nodes();
    theory.literals().filter(|l| cyclic[l.index()]).collect()
}

/// The loop fields: looping literals, self loops, strict loops, and loops
/// through strict and defeasible rules.
pub struct Loops {
    pub looping: Vec<Literal>,
    pub self_loops: Vec<Literal>,
    pub strict_loops: Vec<Literal>,
    pub sd_loops: Vec<Literal>,
}

pub fn detect_loops(theory: &Theory) -> Loops {
    let merged = dependency_graph(theory, Scope::All, true).cyclic_nodes();
    Loops {
        looping: theory
            .literals()
            .filter(|l| merged[l.atom().0 as usize])
            .collect(),
        self_loops: cyclic_literals(theory, Scope::All),
        strict_loops: cyclic_literals(theory, Scope::StrictOnly),
        sd_loops: cyclic_literals(theory, Scope::StrictDefeasible),
    }
}

/// Literals with a rule for themselves and a rule for their complement.
pub fn conflicted_literals(theory: &Theory) -> Vec<Literal> {
    theory
        .literals()
        .filter(|&q| {
            !theory.rules_with_head(q).is_empty()
                && !theory.rules_with_head(q.complement()).is_empty()
        })
        .collect()
}

/// No facts, and every strict rule has a body.
pub fn is_fact_deficient(theory: &Theory) -> bool {
    theory.facts().is_empty()
        && theory
            .rules()
            .iter()
            .all(|r| r.kind != RuleKind::Strict || !r.body.is_empty())
}

pub fn classify_structure(theory: &Theory) -> StructureReport {
    let loops = detect_loops(theory);
    let atom_layers = dependency_graph(theory, Scope::All, true).layer_map();
    let literal_layers = dependency_graph(theory, Scope::All, false).layer_map();
    StructureReport {
        hierarchical: loops.looping.is_empty(),
        semi_hierarchical: loops.self_loops.is_empty(),
        strict_semi_hierarchical: loops.strict_loops.is_empty(),
        sd_semi_hierarchical: loops.sd_loops.is_empty(),
        looping_literals: loops.looping,
        self_loops: loops.self_loops,
        strict_loops: loops.strict_loops,
        sd_loops: loops.sd_loops,
        conflicted_literals: conflicted_literals(theory),
        atom_layers,
        literal_layers,
        fact_deficient: is_fact_deficient(theory),
        empty_superiority: theory.superiority().is_empty(),
        no_strict_rules: !theory.has_strict_rules(),
    }
}

/// Whether some conflicted literal depends on a conflicted literal, and
/// whether some conflicted literal depends on a looping literal, over all
/// rule kinds with `q` and `~q` merged.
pub fn conflict_dependencies(theory: &Theory) -> (bool, bool) {
    let graph = dependency_graph(theory, Scope::All, true);
    let looping = graph.cyclic_nodes();
    let mut conflicted = vec![false; theory.atom_count()];
    for q in conflicted_literals(theory) {
        conflicted[q.atom().0 as usize] = true;
    }
    let mut on_conflict = false;
    let mut on_loop = false;
    for a in (0..theory.atom_count()).filter(|&a| conflicted[a]) {
        let deps = graph.dependencies(a);
        on_conflict |= deps.iter().zip(&conflicted).any(|(&d, &c)| d && c);
        on_loop |= deps.iter().zip(&looping).any(|(&d, &l)| d && l);
    }
    (on_conflict, on_loop)
}

/// Some fact `~q` while a rule has head `q`.
pub fn fact_contradicts_rule_head(theory: &Theory) -> bool {
    theory
        .facts()
        .iter()
        .any(|f| !theory.rules_with_head(f.complement()).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::read_theory;

    const TWEETY: &str = "\
fact penguin(tweety).
fact bird(freddie).
fact injured(freddie).
r1: bird(X) => fly(X).
r2: penguin(X) => ~fly(X).
r3: penguin(X) -> bird(X).
r4: injured(X) ~> ~fly(X).
r2 > r1.
";

    fn names(t: &Theory, lits: &[Literal]) -> Vec<String> {
        lits.iter().map(|&l| t.literal_name(l)).collect()
    }

    #[test]
    fn tweety_is_hierarchical_with_expected_layers() {
        let t = read_theory(TWEETY).unwrap();
        let g = dependency_graph(&t, Scope::All, true);
        let fly = t.atom_id("fly(tweety)").unwrap().0 as usize;
        let penguin = t.atom_id("penguin(tweety)").unwrap().0 as usize;
        assert!(g.dependencies(fly)[penguin]);
        let s = classify_structure(&t);
        assert!(s.hierarchical && s.semi_hierarchical && s.strict_semi_hierarchical);
        assert!(s.looping_literals.is_empty() && s.self_loops.is_empty());
        let layers = s.atom_layers.unwrap();
        let layer = |n: &str| layers[t.atom_id(n).unwrap().0 as usize];
        assert_eq!(layer("injured(freddie)"), 0);
        assert_eq!(layer("penguin(tweety)"), 0);
        assert_eq!(layer("bird(tweety)"), 1);
        assert_eq!(layer("fly(tweety)"), 2);
        assert!(layer_map_admissible(&t, Scope::All, true, &layers));
        assert_eq!(
            names(&t, &s.conflicted_literals),
            [
                "fly(tweety)",
                "~fly(tweety)",
                "fly(freddie)",
                "~fly(freddie)"
            ]
        );
        assert!(!s.fact_deficient);
    }

    #[test]
    fn selfloop_shape() {
        let t = read_theory("r: q -> q.\ns: => q.").unwrap();
        let g = dependency_graph(&t, Scope::StrictOnly, false);
        let q = t.find_literal("q").unwrap().index();
        assert!(g.has_edge(q, q));
        let s = classify_structure(&t);
        assert!(!s.semi_hierarchical && !s.strict_semi_hierarchical && !s.hierarchical);
        assert!(s.literal_layers.is_none());
    }

    #[test]
    fn negated_strict_loop() {
        let t = read_theory("r: => ~q.\ns: ~p -> q.\nt: ~p -> ~p.").unwrap();
        let s = classify_structure(&t);
        assert_eq!(names(&t, &s.self_loops), ["~p"]);
        assert_eq!(names(&t, &s.strict_loops), ["~p"]);
        assert_eq!(names(&t, &s.looping_literals), ["p", "~p"]);
        assert_eq!(conflict_dependencies(&t), (false, true));
    }

    #[test]
    fn empty_theory_has_empty_graph() {
        let t = read_theory("").unwrap();
        let g = dependency_graph(&t, Scope::All, false);
        assert_eq!((g.node_count(), g.edge_count()), (0, 0));
        let s = classify_structure(&t);
        assert!(s.hierarchical && s.fact_deficient && s.empty_superiority);
    }

    #[test]
    fn semi_hierarchical_but_not_hierarchical() {
        let t = read_theory("r: p => ~p.").unwrap();
        let s = classify_structure(&t);
        assert!(s.semi_hierarchical && !s.hierarchical);
        let layers = s.literal_layers.unwrap();
        assert!(layer_map_admissible(&t, Scope::All, false, &layers));
    }
}
