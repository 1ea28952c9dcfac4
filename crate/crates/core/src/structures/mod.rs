//! Calculi, truth valuations, Mealy automata, unrestricted grammars and
//! Turing machines, with their decomposition into hierarchies of triads.

mod automaton;
mod calculus;
mod grammar;
mod tree;
mod turing;

pub use automaton::{AutomatonRun, MealyAutomaton};
pub use calculus::{
    deduce, deduction_named_set, validate_valuation, Calculus, GroundRule, TruthKind, Valuation,
    ValuationReport,
};
pub use grammar::{derive_grammar, Derivation, Grammar, Production};
pub use tree::{decompose, rule_as_named_set, Leaf, Node, Rule, Structure, TriadTree};
pub use turing::{
    check_deterministic, run_tm, DeterminismCheck, TmAction, TmRule, TmRun, TuringMachine,
};

use crate::error::Result;
use crate::kernel::Atom;

/// A word is a finite sequence of symbols.
pub type Word = Vec<Atom>;

/// Renders a word as plain concatenation when every symbol is a single
/// character, and space-separated otherwise. The empty word renders as `ε`.
pub fn render_word(word: &[Atom]) -> String {
    if word.is_empty() {
        return "ε".into();
    }
    let sep = if word.iter().all(|s| s.as_str().chars().count() == 1) {
        ""
    } else {
        " "
    };
    word.iter().map(Atom::as_str).collect::<Vec<_>>().join(sep)
}

/// Splits command-line style text into symbols: on whitespace when any is
/// present, otherwise one symbol per character.
pub fn parse_word(text: &str) -> Result<Word> {
    if text.chars().any(char::is_whitespace) {
        text.split_whitespace().map(Atom::new).collect()
    } else {
        text.chars().map(|c| Atom::new(c.to_string())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_render_and_split() {
        let w = parse_word("aab").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(render_word(&w), "aab");
        let w = parse_word("q0 q1").unwrap();
        assert_eq!(render_word(&w), "q0 q1");
        assert!(parse_word("").unwrap().is_empty());
        assert!(parse_word("a\u{0}").is_err());
        assert_eq!(render_word(&[]), "ε");
    }
}
