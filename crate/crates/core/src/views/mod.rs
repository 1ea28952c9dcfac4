//! Classical structures seen as named sets: plain sets, functions,
//! multisets, finite lattices and fuzzy sets.

mod fuzzy;
mod lattice;
mod multiset;

pub use fuzzy::{fuzzy_as_named_set, named_set_as_fuzzy, Degree, FuzzySet, Scale};
pub use lattice::{FiniteLattice, LatticeFailure, LatticeReport};
pub use multiset::{
    multiplicity_from_tokens, multiset_as_named_set, named_set_as_multiset, tokenize, MultisetM,
    TOKEN_SEPARATOR,
};

use crate::error::{Error, Result};
use crate::kernel::{Atom, AtomSet, NamedSet};

/// An ordinary finite set carrying a name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainSet {
    name: Atom,
    elements: AtomSet,
}

impl PlainSet {
    pub fn new(name: Atom, elements: impl IntoIterator<Item = Atom>) -> Self {
        PlainSet {
            name,
            elements: elements.into_iter().collect(),
        }
    }

    pub fn name(&self) -> &Atom {
        &self.name
    }

    pub fn elements(&self) -> &AtomSet {
        &self.elements
    }
}

/// Every element receives the same name; the named set takes the set's name as id.
pub fn embed_set(set: &PlainSet, element_name: &Atom) -> NamedSet {
    NamedSet::new(
        set.name.clone(),
        set.elements.iter().cloned(),
        [element_name.clone()],
        set.elements
            .iter()
            .map(|x| (x.clone(), element_name.clone())),
    )
    .expect("all pairs point at the single reflector name")
}

/// Recovers `(common name, set)` from a singlenamed named set.
pub fn project_set(named: &NamedSet) -> Result<(Atom, PlainSet)> {
    let mut factual = named.factual_names().into_iter();
    match (factual.next(), factual.next()) {
        (Some(name), None) => Ok((
            name,
            PlainSet::new(named.id().clone(), named.support().iter().cloned()),
        )),
        _ => Err(Error::NotSinglenamed(named.id().clone())),
    }
}

/// Whether the naming relation is a function in the strict sense: exactly one
/// name per element. Anything else is a mere correspondence.
pub fn is_function(named: &NamedSet) -> bool {
    let c = named.classify();
    c.functional && c.total
}

pub(crate) fn require_function(named: &NamedSet) -> Result<()> {
    if is_function(named) {
        Ok(())
    } else {
        Err(Error::NotFunctional(named.id().clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Atom {
        Atom::lit(s)
    }

    fn ns(support: &[&str], names: &[&str], rel: &[(&str, &str)]) -> NamedSet {
        NamedSet::new(
            a("X"),
            support.iter().map(|s| a(s)),
            names.iter().map(|s| a(s)),
            rel.iter().map(|(x, n)| (a(x), a(n))),
        )
        .unwrap()
    }

    #[test]
    fn embedding_examples() {
        let s = PlainSet::new(a("S"), [a("a"), a("b")]);
        let x = embed_set(&s, &a("e"));
        assert_eq!(x.reflector().len(), 1);
        assert_eq!(x.relation().len(), 2);
        let c = x.classify();
        assert!(c.singlenamed && c.normalized && !c.individually_named);

        let empty = embed_set(&PlainSet::new(a("S"), []), &a("e"));
        assert_eq!(empty.reflector().len(), 1);
        assert!(empty.relation().is_empty());
        assert!(!empty.classify().singlenamed);

        let single = embed_set(&PlainSet::new(a("S"), [a("a")]), &a("e"));
        assert!(single.classify().individually_named);
    }

    #[test]
    fn projection_examples() {
        let s = PlainSet::new(a("S"), [a("a"), a("b")]);
        assert_eq!(project_set(&embed_set(&s, &a("e"))).unwrap(), (a("e"), s));
        let one = PlainSet::new(a("S"), [a("a")]);
        assert_eq!(project_set(&embed_set(&one, &a("e"))).unwrap().1, one);
        let two_names = ns(&["a", "b"], &["p", "q"], &[("a", "p"), ("b", "q")]);
        assert_eq!(project_set(&two_names), Err(Error::NotSinglenamed(a("X"))));
    }

    #[test]
    fn functions_versus_correspondences() {
        assert!(is_function(&ns(
            &["a", "b"],
            &["1", "2"],
            &[("a", "1"), ("b", "2")]
        )));
        assert!(!is_function(&ns(
            &["a"],
            &["1", "2"],
            &[("a", "1"), ("a", "2")]
        )));
        assert!(!is_function(&ns(&["a", "b"], &["1"], &[("a", "1")])));
    }
}
