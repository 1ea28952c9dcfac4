use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::Word;
use crate::error::{Error, Result};
use crate::kernel::{Atom, AtomSet};

/// Right-hand side of a rule: write a symbol in place, or move the head.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum TmAction {
    Write(Atom),
    Right,
    Left,
}

impl fmt::Display for TmAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TmAction::Write(s) => write!(f, "{s}"),
            TmAction::Right => f.write_str("R"),
            TmAction::Left => f.write_str("L"),
        }
    }
}

/// `q r → action q'`
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TmRule {
    pub state: Atom,
    pub read: Atom,
    pub action: TmAction,
    pub next: Atom,
}

impl TmRule {
    pub fn new(state: Atom, read: Atom, action: TmAction, next: Atom) -> Self {
        TmRule {
            state,
            read,
            action,
            next,
        }
    }

    pub fn left_part(&self) -> (Atom, Atom) {
        (self.state.clone(), self.read.clone())
    }

    pub fn render_left(&self) -> String {
        format!("{} {}", self.state, self.read)
    }

    pub fn render_right(&self) -> String {
        format!("{} {}", self.action, self.next)
    }
}

/// A one-tape Turing machine. Rules are kept as a set so nondeterministic
/// machines can be described and checked, though only deterministic ones run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachine {
    id: Atom,
    alphabet: AtomSet,
    blank: Atom,
    states: AtomSet,
    start: Atom,
    finals: AtomSet,
    rules: BTreeSet<TmRule>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmRun {
    pub tape: Word,
    pub halted: bool,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminismCheck {
    pub deterministic: bool,
    /// The first duplicated left part.
    pub witness: Option<(Atom, Atom)>,
    /// Every left part shared by two or more rules, sorted.
    pub duplicates: Vec<(Atom, Atom)>,
}

impl TuringMachine {
    /// `R` and `L` are reserved for head moves and cannot be tape symbols.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        id: Atom,
        alphabet: impl IntoIterator<Item = Atom>,
        blank: Atom,
        states: impl IntoIterator<Item = Atom>,
        start: Atom,
        finals: impl IntoIterator<Item = Atom>,
        rules: impl IntoIterator<Item = TmRule>,
    ) -> Result<Self> {
        let alphabet: AtomSet = alphabet.into_iter().collect();
        let states: AtomSet = states.into_iter().collect();
        let finals: AtomSet = finals.into_iter().collect();
        if !alphabet.contains(&blank) {
            return Err(Error::UnknownSymbol(blank));
        }
        if let Some(reserved) = alphabet.iter().find(|s| matches!(s.as_str(), "R" | "L")) {
            return Err(Error::Invalid(format!(
                "`{reserved}` is reserved for head moves"
            )));
        }
        if !states.contains(&start) {
            return Err(Error::UnknownElement(start));
        }
        if let Some(f) = finals.difference(&states).next() {
            return Err(Error::UnknownElement(f.clone()));
        }
        let rules: BTreeSet<TmRule> = rules.into_iter().collect();
        for r in &rules {
            for q in [&r.state, &r.next] {
                if !states.contains(q) {
                    return Err(Error::UnknownElement(q.clone()));
                }
            }
            let written = match &r.action {
                TmAction::Write(s) => Some(s),
                _ => None,
            };
            for s in std::iter::once(&r.read).chain(written) {
                if !alphabet.contains(s) {
                    return Err(Error::UnknownSymbol(s.clone()));
                }
            }
        }
        Ok(TuringMachine {
            id,
            alphabet,
            blank,
            states,
            start,
            finals,
            rules,
        })
    }

    pub fn id(&self) -> &Atom {
        &self.id
    }

    pub fn alphabet(&self) -> &AtomSet {
        &self.alphabet
    }

    pub fn blank(&self) -> &Atom {
        &self.blank
    }

    pub fn states(&self) -> &AtomSet {
        &self.states
    }

    pub fn start(&self) -> &Atom {
        &self.start
    }

    pub fn finals(&self) -> &AtomSet {
        &self.finals
    }

    pub fn rules(&self) -> &BTreeSet<TmRule> {
        &self.rules
    }

    /// Input symbols: the alphabet without the blank.
    pub fn input_alphabet(&self) -> AtomSet {
        self.alphabet
            .iter()
            .filter(|s| **s != self.blank)
            .cloned()
            .collect()
    }
}

pub fn check_deterministic(machine: &TuringMachine) -> DeterminismCheck {
    let mut counts: BTreeMap<(Atom, Atom), usize> = BTreeMap::new();
    for r in &machine.rules {
        *counts.entry(r.left_part()).or_default() += 1;
    }
    let duplicates: Vec<_> = counts
        .into_iter()
        .filter(|(_, n)| *n > 1)
        .map(|(lp, _)| lp)
        .collect();
    DeterminismCheck {
        deterministic: duplicates.is_empty(),
        witness: duplicates.first().cloned(),
        duplicates,
    }
}

/// Runs a deterministic machine on a two-way tape, head at cell 0.
///
/// The machine halts on reaching a final state or when no rule applies;
/// running out of `max_steps` leaves it not halted. The returned tape has
/// leading and trailing blanks trimmed.
pub fn run_tm(machine: &TuringMachine, input: &[Atom], max_steps: usize) -> Result<TmRun> {
    let check = check_deterministic(machine);
    if let Some((state, symbol)) = check.witness {
        return Err(Error::NotDeterministic {
            id: machine.id.clone(),
            state,
            symbol,
        });
    }
    if let Some(s) = input.iter().find(|s| !machine.alphabet.contains(*s)) {
        return Err(Error::UnknownSymbol(s.clone()));
    }
    let table: BTreeMap<(&Atom, &Atom), &TmRule> = machine
        .rules
        .iter()
        .map(|r| ((&r.state, &r.read), r))
        .collect();

    let mut tape: BTreeMap<i64, Atom> = input
        .iter()
        .enumerate()
        .map(|(i, s)| (i as i64, s.clone()))
        .collect();
    let mut head: i64 = 0;
    let mut state = &machine.start;
    let mut steps = 0;
    let halted = loop {
        if machine.finals.contains(state) {
            break true;
        }
        if steps == max_steps {
            break false;
        }
        let scanned = tape.get(&head).unwrap_or(&machine.blank);
        let Some(&rule) = table.get(&(state, scanned)) else {
            break true;
        };
        match &rule.action {
            TmAction::Write(s) => {
                tape.insert(head, s.clone());
            }
            TmAction::Right => head += 1,
            TmAction::Left => head -= 1,
        }
        state = &rule.next;
        steps += 1;
    };

    let cells: Vec<&Atom> = match (tape.keys().next(), tape.keys().next_back()) {
        (Some(&lo), Some(&hi)) => (lo..=hi)
            .map(|i| tape.get(&i).unwrap_or(&machine.blank))
            .collect(),
        _ => Vec::new(),
    };
    let is_blank = |s: &&Atom| **s == machine.blank;
    let first = cells.iter().position(|s| !is_blank(s));
    let last = cells.iter().rposition(|s| !is_blank(s));
    let tape = match (first, last) {
        (Some(i), Some(j)) => cells[i..=j].iter().map(|s| (*s).clone()).collect(),
        _ => Vec::new(),
    };
    Ok(TmRun {
        tape,
        halted,
        steps,
    })
}
