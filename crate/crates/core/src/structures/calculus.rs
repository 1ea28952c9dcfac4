use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::kernel::{Atom, AtomSet, NamedSet};

/// A variable-free deduction rule `premises ⇒ conclusion`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroundRule {
    premises: AtomSet,
    conclusion: Atom,
}

impl GroundRule {
    /// Rules need at least one premise; premise-free sentences belong to the axioms.
    pub fn new(premises: impl IntoIterator<Item = Atom>, conclusion: Atom) -> Result<Self> {
        let premises: AtomSet = premises.into_iter().collect();
        if premises.is_empty() {
            return Err(Error::Invalid(format!(
                "rule concluding `{conclusion}` has no premises"
            )));
        }
        Ok(GroundRule {
            premises,
            conclusion,
        })
    }

    pub fn premises(&self) -> &AtomSet {
        &self.premises
    }

    pub fn conclusion(&self) -> &Atom {
        &self.conclusion
    }
}

/// A calculus `(A, R, T)`; the theorem set is only available through
/// depth-bounded [`deduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Calculus {
    id: Atom,
    axioms: AtomSet,
    rules: BTreeSet<GroundRule>,
}

impl Calculus {
    pub fn new(
        id: Atom,
        axioms: impl IntoIterator<Item = Atom>,
        rules: impl IntoIterator<Item = GroundRule>,
    ) -> Self {
        Calculus {
            id,
            axioms: axioms.into_iter().collect(),
            rules: rules.into_iter().collect(),
        }
    }

    pub fn id(&self) -> &Atom {
        &self.id
    }

    pub fn axioms(&self) -> &AtomSet {
        &self.axioms
    }

    pub fn rules(&self) -> &BTreeSet<GroundRule> {
        &self.rules
    }
}

/// Theorems derivable with derivation trees of height at most `depth`.
pub fn deduce(calculus: &Calculus, depth: usize) -> AtomSet {
    let mut theorems = calculus.axioms.clone();
    for _ in 0..depth {
        let fresh: Vec<Atom> = calculus
            .rules
            .iter()
            .filter(|r| !theorems.contains(&r.conclusion) && r.premises.is_subset(&theorems))
            .map(|r| r.conclusion.clone())
            .collect();
        if fresh.is_empty() {
            break;
        }
        theorems.extend(fresh);
    }
    theorems
}

/// The deduction named set `(A, d, T)`: axiom `a` names theorem `t` when `a`
/// occurs as a leaf of some derivation tree of `t` of height at most `depth`.
pub fn deduction_named_set(calculus: &Calculus, depth: usize) -> NamedSet {
    // uses[t] = axioms occurring in some derivation of t found so far
    let mut uses: BTreeMap<Atom, AtomSet> = calculus
        .axioms
        .iter()
        .map(|a| (a.clone(), AtomSet::from([a.clone()])))
        .collect();
    for _ in 0..depth {
        let mut next = uses.clone();
        for rule in &calculus.rules {
            if rule.premises.iter().all(|p| uses.contains_key(p)) {
                let gathered: AtomSet = rule
                    .premises
                    .iter()
                    .flat_map(|p| uses[p].iter().cloned())
                    .collect();
                next.entry(rule.conclusion.clone())
                    .or_default()
                    .extend(gathered);
            }
        }
        if next == uses {
            break;
        }
        uses = next;
    }
    let relation: Vec<_> = uses
        .iter()
        .flat_map(|(t, axioms)| axioms.iter().map(move |a| (a.clone(), t.clone())))
        .collect();
    NamedSet::new(
        calculus.id.clone(),
        calculus.axioms.iter().cloned(),
        uses.keys().cloned(),
        relation,
    )
    .expect("axioms and theorems are drawn from the relation's own ends")
}

/// Truth values: the classical pair `1`/`0`, or rationals in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruthKind {
    Classical,
    UnitRational,
}

impl TruthKind {
    pub fn label(self) -> &'static str {
        match self {
            TruthKind::Classical => "classical",
            TruthKind::UnitRational => "unit",
        }
    }

    pub fn admits(self, value: &str) -> bool {
        match self {
            TruthKind::Classical => value == "1" || value == "0",
            TruthKind::UnitRational => value
                .parse::<Ratio<i64>>()
                .map(|r| r >= Ratio::from_integer(0) && r <= Ratio::from_integer(1))
                .unwrap_or(false),
        }
    }
}

/// A semantic valuation from sentences into truth values, kept as a sorted
/// set of assignments so that non-functional input can be reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    id: Atom,
    truth: TruthKind,
    assignments: Vec<(Atom, Atom)>,
}

impl Valuation {
    pub fn new(
        id: Atom,
        truth: TruthKind,
        assignments: impl IntoIterator<Item = (Atom, Atom)>,
    ) -> Self {
        let mut assignments: Vec<_> = assignments.into_iter().collect();
        assignments.sort();
        assignments.dedup();
        Valuation {
            id,
            truth,
            assignments,
        }
    }

    pub fn id(&self) -> &Atom {
        &self.id
    }

    pub fn truth(&self) -> TruthKind {
        self.truth
    }

    pub fn assignments(&self) -> &[(Atom, Atom)] {
        &self.assignments
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationReport {
    pub offending: Option<Atom>,
    pub reason: Option<String>,
}

impl ValuationReport {
    pub fn is_valid(&self) -> bool {
        self.offending.is_none()
    }
}

pub fn validate_valuation(valuation: &Valuation) -> ValuationReport {
    let mut seen: BTreeMap<&Atom, &Atom> = BTreeMap::new();
    for (sentence, value) in &valuation.assignments {
        let reason = if !valuation.truth.admits(value.as_str()) {
            Some(format!(
                "value `{value}` is not a {} truth value",
                valuation.truth.label()
            ))
        } else {
            match seen.insert(sentence, value) {
                Some(prev) if prev != value => {
                    Some(format!("assigned both `{prev}` and `{value}`"))
                }
                _ => None,
            }
        };
        if reason.is_some() {
            return ValuationReport {
                offending: Some(sentence.clone()),
                reason,
            };
        }
    }
    ValuationReport {
        offending: None,
        reason: None,
    }
}
