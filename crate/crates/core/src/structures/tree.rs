use std::fmt::Write as _;

use super::{
    render_word, Calculus, Grammar, GroundRule, MealyAutomaton, Production, TmRule, TuringMachine,
};
use crate::kernel::{Atom, AtomSet, NamedSet, Pair};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Leaf {
    Named(NamedSet),
    Atoms(AtomSet),
    /// A component the machine description does not materialize as data.
    Placeholder(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Leaf(Leaf),
    Tree(Box<TriadTree>),
}

/// A labeled node with exactly three role-tagged children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriadTree {
    pub label: String,
    pub children: [(String, Node); 3],
}

impl TriadTree {
    fn new(label: impl Into<String>, children: [(&str, Node); 3]) -> Self {
        TriadTree {
            label: label.into(),
            children: children.map(|(role, node)| (role.to_string(), node)),
        }
    }

    pub fn roles(&self) -> [&str; 3] {
        [
            self.children[0].0.as_str(),
            self.children[1].0.as_str(),
            self.children[2].0.as_str(),
        ]
    }

    pub fn child(&self, role: &str) -> Option<&Node> {
        self.children
            .iter()
            .find(|(r, _)| r == role)
            .map(|(_, n)| n)
    }

    /// Number of internal-node levels; a tree of leaves has depth 1.
    pub fn depth(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(|(_, n)| match n {
                Node::Tree(t) => t.depth(),
                Node::Leaf(_) => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// Count of role-labeled positions across the whole tree.
    pub fn positions(&self) -> usize {
        self.children
            .iter()
            .map(|(_, n)| match n {
                Node::Tree(t) => 1 + t.positions(),
                Node::Leaf(_) => 1,
            })
            .sum()
    }

    /// Visits every internal node, root first.
    pub fn internal_nodes(&self) -> Vec<&TriadTree> {
        let mut out = vec![self];
        for (_, n) in &self.children {
            if let Node::Tree(t) = n {
                out.extend(t.internal_nodes());
            }
        }
        out
    }

    /// Indented outline, one role per line.
    pub fn outline(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.label);
        out.push('\n');
        self.write_children(&mut out, 1);
        out
    }

    fn write_children(&self, out: &mut String, indent: usize) {
        let pad = "  ".repeat(indent);
        for (role, node) in &self.children {
            match node {
                Node::Tree(t) => {
                    let _ = writeln!(out, "{pad}{role}: {}", t.label);
                    t.write_children(out, indent + 1);
                }
                Node::Leaf(leaf) => {
                    let _ = writeln!(out, "{pad}{role}: {}", render_leaf(leaf));
                }
            }
        }
    }
}

fn render_leaf(leaf: &Leaf) -> String {
    match leaf {
        Leaf::Atoms(set) => format!(
            "{{{}}}",
            set.iter().map(Atom::as_str).collect::<Vec<_>>().join(", ")
        ),
        Leaf::Placeholder(text) => format!("<{text}>"),
        Leaf::Named(ns) => format!(
            "{{{}}}",
            ns.relation()
                .iter()
                .map(|(x, a)| format!("{x} -> {a}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    }
}

/// Anything [`decompose`] knows how to split into triads.
#[derive(Debug, Clone, Copy)]
pub enum Structure<'a> {
    Turing(&'a TuringMachine),
    Automaton(&'a MealyAutomaton),
    Grammar(&'a Grammar),
    Calculus(&'a Calculus),
}

/// A single rule of any of the structures.
#[derive(Debug, Clone, Copy)]
pub enum Rule<'a> {
    Production(&'a Production),
    Turing(&'a TmRule),
    Ground(&'a GroundRule),
}

fn atoms<'a>(set: impl IntoIterator<Item = &'a Atom>) -> Node {
    Node::Leaf(Leaf::Atoms(set.into_iter().cloned().collect()))
}

fn placeholder(text: &str) -> Node {
    Node::Leaf(Leaf::Placeholder(text.into()))
}

fn tree(label: &str, children: [(&str, Node); 3]) -> Node {
    Node::Tree(Box::new(TriadTree::new(label, children)))
}

fn graph(id: &Atom, pairs: impl IntoIterator<Item = (String, String)>) -> Node {
    let pairs: Vec<Pair> = pairs
        .into_iter()
        .map(|(x, a)| (Atom::lit(&x), Atom::lit(&a)))
        .collect();
    let named = NamedSet::new(
        id.clone(),
        pairs.iter().map(|(x, _)| x.clone()),
        pairs.iter().map(|(_, a)| a.clone()),
        pairs.iter().cloned(),
    )
    .expect("graph built from its own ends");
    Node::Leaf(Leaf::Named(named))
}

fn production_text(word: &[Atom]) -> String {
    render_word(word)
}

pub fn decompose(structure: Structure<'_>) -> TriadTree {
    match structure {
        Structure::Turing(tm) => {
            let inputs = tm.input_alphabet();
            TriadTree::new(
                tm.id().as_str(),
                [
                    (
                        "L",
                        tree(
                            "language",
                            [
                                ("L_I", atoms(&inputs)),
                                ("L_W", atoms(tm.alphabet())),
                                ("L_O", atoms(&inputs)),
                            ],
                        ),
                    ),
                    (
                        "D",
                        tree(
                            "device",
                            [
                                ("H", placeholder("head")),
                                (
                                    "P",
                                    graph(
                                        tm.id(),
                                        tm.rules()
                                            .iter()
                                            .map(|r| (r.render_left(), r.render_right())),
                                    ),
                                ),
                                ("M", placeholder("tape")),
                            ],
                        ),
                    ),
                    (
                        "Q",
                        tree(
                            "state configuration",
                            [
                                ("q0", atoms([tm.start()])),
                                ("Q", atoms(tm.states())),
                                ("F", atoms(tm.finals())),
                            ],
                        ),
                    ),
                ],
            )
        }
        Structure::Automaton(fa) => TriadTree::new(
            fa.id().as_str(),
            [
                (
                    "L",
                    tree(
                        "linguistic structure",
                        [
                            ("Σ", atoms(fa.inputs())),
                            ("Q", atoms(fa.states())),
                            ("Ω", atoms(fa.outputs())),
                        ],
                    ),
                ),
                (
                    "S",
                    tree(
                        "state structure",
                        [
                            ("Q", atoms(fa.states())),
                            ("q0", atoms([fa.start()])),
                            ("F", atoms(fa.finals())),
                        ],
                    ),
                ),
                (
                    "δ",
                    graph(
                        fa.id(),
                        fa.delta()
                            .iter()
                            .map(|((s, q), (n, o))| (format!("({s},{q})"), format!("({n},{o})"))),
                    ),
                ),
            ],
        ),
        Structure::Grammar(g) => TriadTree::new(
            g.id().as_str(),
            [
                (
                    "L",
                    tree(
                        "lexical structure",
                        [
                            ("V", atoms(g.variables())),
                            ("Σ", atoms(g.terminals())),
                            ("·", placeholder("unused")),
                        ],
                    ),
                ),
                ("S", atoms([g.start()])),
                (
                    "P",
                    graph(
                        g.id(),
                        g.productions()
                            .iter()
                            .map(|p| (production_text(&p.lhs), production_text(&p.rhs))),
                    ),
                ),
            ],
        ),
        Structure::Calculus(c) => TriadTree::new(
            c.id().as_str(),
            [
                ("A", atoms(c.axioms())),
                (
                    "R",
                    graph(
                        c.id(),
                        c.rules().iter().flat_map(|r| {
                            r.premises()
                                .iter()
                                .map(|p| (p.to_string(), r.conclusion().to_string()))
                        }),
                    ),
                ),
                ("T", placeholder("theorems, depth-dependent")),
            ],
        ),
    }
}

/// A rule as the named set linking its left part to its right part.
///
/// A ground rule with several premises links each premise to the conclusion.
pub fn rule_as_named_set(id: Atom, rule: Rule<'_>) -> NamedSet {
    let pairs: Vec<Pair> = match rule {
        Rule::Production(p) => vec![(
            Atom::lit(&production_text(&p.lhs)),
            Atom::lit(&production_text(&p.rhs)),
        )],
        Rule::Turing(r) => vec![(Atom::lit(&r.render_left()), Atom::lit(&r.render_right()))],
        Rule::Ground(r) => r
            .premises()
            .iter()
            .map(|p| (p.clone(), r.conclusion().clone()))
            .collect(),
    };
    NamedSet::new(
        id,
        pairs.iter().map(|(x, _)| x.clone()),
        pairs.iter().map(|(_, a)| a.clone()),
        pairs.iter().cloned(),
    )
    .expect("pairs drawn from their own ends")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{parse_word, TmAction};

    fn a(s: &str) -> Atom {
        Atom::lit(s)
    }

    fn tm() -> TuringMachine {
        TuringMachine::new(
            a("T"),
            [a("1"), a("_")],
            a("_"),
            [a("q0"), a("qh")],
            a("q0"),
            [a("qh")],
            [
                TmRule::new(a("q0"), a("1"), TmAction::Right, a("q0")),
                TmRule::new(a("q0"), a("_"), TmAction::Write(a("1")), a("qh")),
            ],
        )
        .unwrap()
    }

    fn grammar() -> Grammar {
        Grammar::new(
            a("G"),
            [a("S")],
            [a("a"), a("b")],
            a("S"),
            [
                Production::new(parse_word("S").unwrap(), parse_word("aSb").unwrap()),
                Production::new(parse_word("S").unwrap(), vec![]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn turing_machine_tree_shape() {
        let t = decompose(Structure::Turing(&tm()));
        assert_eq!(t.roles(), ["L", "D", "Q"]);
        assert_eq!(t.depth(), 2);
        assert_eq!(t.positions(), 12);
        let Some(Node::Tree(lang)) = t.child("L") else {
            panic!()
        };
        assert_eq!(lang.roles(), ["L_I", "L_W", "L_O"]);
        let Some(Node::Tree(dev)) = t.child("D") else {
            panic!()
        };
        assert_eq!(dev.roles(), ["H", "P", "M"]);
        let Some(Node::Tree(q)) = t.child("Q") else {
            panic!()
        };
        assert_eq!(q.roles(), ["q0", "Q", "F"]);
        assert!(t.outline().contains("P: {q0 1 -> R q0, q0 _ -> 1 qh}"));
    }

    #[test]
    fn grammar_and_calculus_trees() {
        let g = decompose(Structure::Grammar(&grammar()));
        assert_eq!(g.roles(), ["L", "S", "P"]);
        let c = Calculus::new(
            a("C"),
            [a("p")],
            [GroundRule::new([a("p")], a("q")).unwrap()],
        );
        let t = decompose(Structure::Calculus(&c));
        assert_eq!(t.roles(), ["A", "R", "T"]);
        assert_eq!(t.internal_nodes().len(), 1);
    }

    #[test]
    fn rules_as_named_sets() {
        let r = TmRule::new(a("q0"), a("1"), TmAction::Right, a("q0"));
        let ns = rule_as_named_set(a("r"), Rule::Turing(&r));
        assert!(ns.relation().contains(&(a("q0 1"), a("R q0"))));
        assert!(ns.classify().individually_named);

        let g = grammar();
        let p = g.productions().iter().find(|p| !p.rhs.is_empty()).unwrap();
        let ns = rule_as_named_set(a("r"), Rule::Production(p));
        assert!(ns.relation().contains(&(a("S"), a("aSb"))));
        let empty = g.productions().iter().find(|p| p.rhs.is_empty()).unwrap();
        assert!(rule_as_named_set(a("r"), Rule::Production(empty))
            .relation()
            .contains(&(a("S"), a("ε"))));

        let ground = GroundRule::new([a("p"), a("q")], a("r")).unwrap();
        let ns = rule_as_named_set(a("r"), Rule::Ground(&ground));
        assert_eq!(ns.support().len(), 2);
        assert_eq!(ns.reflector().len(), 1);
        assert_eq!(ns.relation().len(), 2);
        let single = GroundRule::new([a("p")], a("r")).unwrap();
        assert!(
            rule_as_named_set(a("r"), Rule::Ground(&single))
                .classify()
                .individually_named
        );
    }
}
