use std::collections::BTreeMap;

use super::Word;
use crate::error::{Error, Result};
use crate::kernel::{Atom, AtomSet};

/// A Mealy-style finite automaton with `δ: Σ × Q → Q × Ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealyAutomaton {
    id: Atom,
    inputs: AtomSet,
    states: AtomSet,
    outputs: AtomSet,
    start: Atom,
    finals: AtomSet,
    // (symbol, state) -> (next state, output)
    delta: BTreeMap<(Atom, Atom), (Atom, Atom)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomatonRun {
    pub output: Word,
    pub end: Atom,
    pub accepted: bool,
}

impl MealyAutomaton {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        id: Atom,
        inputs: impl IntoIterator<Item = Atom>,
        states: impl IntoIterator<Item = Atom>,
        outputs: impl IntoIterator<Item = Atom>,
        start: Atom,
        finals: impl IntoIterator<Item = Atom>,
        transitions: impl IntoIterator<Item = ((Atom, Atom), (Atom, Atom))>,
    ) -> Result<Self> {
        let inputs: AtomSet = inputs.into_iter().collect();
        let states: AtomSet = states.into_iter().collect();
        let outputs: AtomSet = outputs.into_iter().collect();
        let finals: AtomSet = finals.into_iter().collect();
        if !states.contains(&start) {
            return Err(Error::UnknownElement(start));
        }
        if let Some(f) = finals.difference(&states).next() {
            return Err(Error::UnknownElement(f.clone()));
        }
        let mut delta = BTreeMap::new();
        for ((symbol, state), (next, out)) in transitions {
            if !inputs.contains(&symbol) {
                return Err(Error::UnknownSymbol(symbol));
            }
            if !outputs.contains(&out) {
                return Err(Error::UnknownSymbol(out));
            }
            for q in [&state, &next] {
                if !states.contains(q) {
                    return Err(Error::UnknownElement(q.clone()));
                }
            }
            let key = (symbol, state);
            let value = (next, out);
            if let Some(prev) = delta.insert(key.clone(), value.clone()) {
                if prev != value {
                    return Err(Error::Invalid(format!(
                        "transition on ({}, {}) is given twice",
                        key.0, key.1
                    )));
                }
            }
        }
        for s in &inputs {
            for q in &states {
                if !delta.contains_key(&(s.clone(), q.clone())) {
                    return Err(Error::PartialMap {
                        map: "delta",
                        detail: format!("no transition on ({s}, {q})"),
                    });
                }
            }
        }
        Ok(MealyAutomaton {
            id,
            inputs,
            states,
            outputs,
            start,
            finals,
            delta,
        })
    }

    pub fn id(&self) -> &Atom {
        &self.id
    }

    pub fn inputs(&self) -> &AtomSet {
        &self.inputs
    }

    pub fn states(&self) -> &AtomSet {
        &self.states
    }

    pub fn outputs(&self) -> &AtomSet {
        &self.outputs
    }

    pub fn start(&self) -> &Atom {
        &self.start
    }

    pub fn finals(&self) -> &AtomSet {
        &self.finals
    }

    pub fn delta(&self) -> &BTreeMap<(Atom, Atom), (Atom, Atom)> {
        &self.delta
    }

    /// Folds `δ` over the input from the start state.
    pub fn run(&self, input: &[Atom]) -> Result<AutomatonRun> {
        let mut state = &self.start;
        let mut output = Vec::with_capacity(input.len());
        for symbol in input {
            let (next, out) = self
                .delta
                .get(&(symbol.clone(), state.clone()))
                .ok_or_else(|| Error::UnknownSymbol(symbol.clone()))?;
            output.push(out.clone());
            state = next;
        }
        Ok(AutomatonRun {
            output,
            end: state.clone(),
            accepted: self.finals.contains(state),
        })
    }
}
