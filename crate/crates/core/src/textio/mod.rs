//! The `.triad` workspace format.
//!
//! A workspace file is UTF-8 text made of blocks `kind Id { key: items; ... }`
//! with `#` line comments. Atoms are bare (`[A-Za-z0-9_.+-]+`) or double-quoted
//! with `\"` and `\\` escapes.
//!
//! ```text
//! namedset X { support: a b; names: n; rel: a->n b->n; }
//! multiset M { entries: a:2 b:3; }
//! lattice D { carrier: 0 x y 1; order: 0<=x 0<=y x<=1 y<=1; }
//! fuzzy F { universe: a b; scale: lattice:D; mu: a:x b:1; }
//! automaton A { inputs: 0 1; states: e o; outputs: x; start: e; final: e;
//!               delta: (0,e)->(e,x) (1,e)->(o,x) (0,o)->(o,x) (1,o)->(e,x); }
//! grammar G { variables: S; terminals: a b; start: S; prod: S -> a S b; prod: S -> ; }
//! tm T { alphabet: 1 _; blank: _; states: q0 qh; start: q0; final: qh;
//!        rule: q0 1 -> R q0; rule: q0 _ -> 1 qh; }
//! calculus C { axioms: p; rule: p => q; rule: p q => r; }
//! ```
//!
//! Parsing is all-or-nothing: any error yields diagnostics and no workspace.

mod lexer;
mod parser;
mod writer;

use std::collections::BTreeMap;
use std::fmt;

pub use parser::{parse_workspace, parse_workspace_with_warnings};
pub use writer::{serialize_block, serialize_workspace, write_atom};

use crate::kernel::{Atom, Morphism, NamedSet};
use crate::properties::Property;
use crate::structures::{Calculus, Grammar, MealyAutomaton, TuringMachine, Valuation};
use crate::views::{FiniteLattice, FuzzySet, MultisetM, PlainSet};

/// Every object of a file, keyed by id within its kind.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Workspace {
    pub sets: BTreeMap<Atom, PlainSet>,
    pub named_sets: BTreeMap<Atom, NamedSet>,
    pub morphisms: BTreeMap<Atom, Morphism>,
    pub multisets: BTreeMap<Atom, MultisetM>,
    pub lattices: BTreeMap<Atom, FiniteLattice>,
    pub fuzzy_sets: BTreeMap<Atom, FuzzySet>,
    pub properties: BTreeMap<Atom, Property>,
    pub valuations: BTreeMap<Atom, Valuation>,
    pub calculi: BTreeMap<Atom, Calculus>,
    pub automata: BTreeMap<Atom, MealyAutomaton>,
    pub grammars: BTreeMap<Atom, Grammar>,
    pub machines: BTreeMap<Atom, TuringMachine>,
}

impl Workspace {
    pub fn is_empty(&self) -> bool {
        self.counts().iter().all(|(_, n)| *n == 0)
    }

    /// Object counts per block kind, in canonical kind order.
    pub fn counts(&self) -> [(&'static str, usize); 12] {
        [
            ("set", self.sets.len()),
            ("namedset", self.named_sets.len()),
            ("morphism", self.morphisms.len()),
            ("multiset", self.multisets.len()),
            ("lattice", self.lattices.len()),
            ("fuzzy", self.fuzzy_sets.len()),
            ("property", self.properties.len()),
            ("valuation", self.valuations.len()),
            ("calculus", self.calculi.len()),
            ("automaton", self.automata.len()),
            ("grammar", self.grammars.len()),
            ("tm", self.machines.len()),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Loc {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticKind {
    Syntax,
    UnknownReference,
    InvariantViolation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub kind: DiagnosticKind,
    pub loc: Loc,
    pub message: String,
}

impl Diagnostic {
    pub(crate) fn error(kind: DiagnosticKind, loc: Loc, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            kind,
            loc,
            message: message.into(),
        }
    }

    pub(crate) fn warning(loc: Loc, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            kind: DiagnosticKind::InvariantViolation,
            loc,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let severity = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        let kind = match self.kind {
            DiagnosticKind::Syntax => "syntax",
            DiagnosticKind::UnknownReference => "unknown-reference",
            DiagnosticKind::InvariantViolation => "invariant",
        };
        write!(f, "{severity}[{kind}] {}: {}", self.loc, self.message)
    }
}
