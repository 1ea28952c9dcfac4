use std::collections::{BTreeMap, BTreeSet};

use super::{render_word, Word};
use crate::error::{Error, Result};
use crate::kernel::{Atom, AtomSet};

/// A production `α → β`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Production {
    pub lhs: Word,
    pub rhs: Word,
}

impl Production {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Production { lhs, rhs }
    }
}

/// An unrestricted (phrase-structure) grammar `(L, S, P)` with `L = (V, Σ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    id: Atom,
    variables: AtomSet,
    terminals: AtomSet,
    start: Atom,
    productions: BTreeSet<Production>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation {
    /// Sentential forms from the start symbol to the target, inclusive.
    Found(Vec<Word>),
    NotFoundWithinBounds,
}

impl Grammar {
    pub fn new(
        id: Atom,
        variables: impl IntoIterator<Item = Atom>,
        terminals: impl IntoIterator<Item = Atom>,
        start: Atom,
        productions: impl IntoIterator<Item = Production>,
    ) -> Result<Self> {
        let variables: AtomSet = variables.into_iter().collect();
        let terminals: AtomSet = terminals.into_iter().collect();
        if let Some(both) = variables.intersection(&terminals).next() {
            return Err(Error::Invalid(format!(
                "`{both}` is both a variable and a terminal"
            )));
        }
        if !variables.contains(&start) {
            return Err(Error::UnknownSymbol(start));
        }
        let productions: BTreeSet<Production> = productions.into_iter().collect();
        for p in &productions {
            if let Some(s) = p
                .lhs
                .iter()
                .chain(&p.rhs)
                .find(|s| !variables.contains(*s) && !terminals.contains(*s))
            {
                return Err(Error::UnknownSymbol(s.clone()));
            }
            if !p.lhs.iter().any(|s| variables.contains(s)) {
                return Err(Error::Invalid(format!(
                    "left side `{}` of a production has no variable",
                    render_word(&p.lhs)
                )));
            }
        }
        Ok(Grammar {
            id,
            variables,
            terminals,
            start,
            productions,
        })
    }

    pub fn id(&self) -> &Atom {
        &self.id
    }

    pub fn variables(&self) -> &AtomSet {
        &self.variables
    }

    pub fn terminals(&self) -> &AtomSet {
        &self.terminals
    }

    pub fn start(&self) -> &Atom {
        &self.start
    }

    pub fn productions(&self) -> &BTreeSet<Production> {
        &self.productions
    }

    /// Every form reachable by rewriting one occurrence of one left side.
    pub fn rewrites<'a>(&'a self, form: &'a [Atom]) -> impl Iterator<Item = Word> + 'a {
        self.productions.iter().flat_map(move |p| {
            let n = p.lhs.len();
            (0..=form.len().saturating_sub(n))
                .filter(move |&i| form.len() >= n && form[i..i + n] == p.lhs[..])
                .map(move |i| {
                    let mut out = Vec::with_capacity(form.len() - n + p.rhs.len());
                    out.extend_from_slice(&form[..i]);
                    out.extend_from_slice(&p.rhs);
                    out.extend_from_slice(&form[i + n..]);
                    out
                })
        })
    }
}

/// Breadth-first search for a derivation of `target` from the start symbol.
///
/// At most `max_steps` rewrites are applied and forms longer than `max_len`
/// are pruned. The result is a shortest derivation and, among those, the
/// lexicographically least sequence of forms.
pub fn derive_grammar(
    grammar: &Grammar,
    target: &[Atom],
    max_steps: usize,
    max_len: usize,
) -> Result<Derivation> {
    if let Some(s) = target.iter().find(|s| !grammar.terminals.contains(*s)) {
        return Err(Error::UnknownSymbol(s.clone()));
    }
    let start = vec![grammar.start.clone()];
    let mut visited: BTreeSet<Word> = BTreeSet::from([start.clone()]);
    let mut level: BTreeMap<Word, Vec<Word>> = BTreeMap::from([(start.clone(), vec![start])]);
    for _ in 0..max_steps {
        let mut next: BTreeMap<Word, Vec<Word>> = BTreeMap::new();
        for (form, path) in &level {
            for succ in grammar.rewrites(form) {
                if succ.len() > max_len || visited.contains(&succ) {
                    continue;
                }
                let better = next
                    .get(&succ)
                    .is_none_or(|known| known[..known.len() - 1] > path[..]);
                if better {
                    let mut candidate = path.clone();
                    candidate.push(succ.clone());
                    next.insert(succ, candidate);
                }
            }
        }
        if let Some(path) = next.get(target) {
            return Ok(Derivation::Found(path.clone()));
        }
        if next.is_empty() {
            break;
        }
        visited.extend(next.keys().cloned());
        level = next;
    }
    Ok(Derivation::NotFoundWithinBounds)
}
