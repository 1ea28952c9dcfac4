use std::collections::BTreeMap;

use super::require_function;
use crate::error::{Error, Result};
use crate::kernel::{Atom, NamedSet};
use crate::properties::NumeralScale;

pub const TOKEN_SEPARATOR: char = '#';

/// A multiset in multiplicity form. Zero multiplicities are dropped on
/// construction, so every stored multiplicity is at least one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultisetM {
    name: Atom,
    multiplicity: BTreeMap<Atom, u64>,
}

impl MultisetM {
    /// Repeated entries for the same element add up.
    pub fn new(name: Atom, entries: impl IntoIterator<Item = (Atom, u64)>) -> Self {
        let mut multiplicity = BTreeMap::new();
        for (e, k) in entries {
            *multiplicity.entry(e).or_insert(0) += k;
        }
        multiplicity.retain(|_, k| *k > 0);
        MultisetM { name, multiplicity }
    }

    pub fn name(&self) -> &Atom {
        &self.name
    }

    pub fn multiplicity(&self) -> &BTreeMap<Atom, u64> {
        &self.multiplicity
    }

    pub fn count(&self, element: &Atom) -> u64 {
        self.multiplicity.get(element).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.multiplicity.values().sum()
    }
}

/// Names each element by the numeral of its multiplicity.
pub fn multiset_as_named_set(multiset: &MultisetM, scale: &NumeralScale) -> NamedSet {
    let relation: Vec<_> = multiset
        .multiplicity
        .iter()
        .map(|(e, &k)| (e.clone(), scale.render(k)))
        .collect();
    NamedSet::new(
        multiset.name.clone(),
        multiset.multiplicity.keys().cloned(),
        relation.iter().map(|(_, n)| n.clone()),
        relation.iter().cloned(),
    )
    .expect("relation built from its own support and reflector")
}

pub fn named_set_as_multiset(named: &NamedSet, scale: &NumeralScale) -> Result<MultisetM> {
    require_function(named)?;
    let entries = named
        .relation()
        .iter()
        .map(|(e, n)| Ok((e.clone(), scale.value(n.as_str())?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MultisetM::new(named.id().clone(), entries))
}

/// Token form: `k` indistinguishable tokens `e#1 … e#k`, all named `e`.
pub fn tokenize(multiset: &MultisetM) -> Result<NamedSet> {
    if let Some(e) = multiset
        .multiplicity
        .keys()
        .find(|e| e.as_str().contains(TOKEN_SEPARATOR))
    {
        return Err(Error::TokenClash(e.clone()));
    }
    let relation: Vec<_> = multiset
        .multiplicity
        .iter()
        .flat_map(|(e, &k)| {
            (1..=k).map(move |i| (Atom::lit(&format!("{e}{TOKEN_SEPARATOR}{i}")), e.clone()))
        })
        .collect();
    NamedSet::new(
        multiset.name.clone(),
        relation.iter().map(|(t, _)| t.clone()).collect::<Vec<_>>(),
        multiset.multiplicity.keys().cloned(),
        relation,
    )
}

/// Counts the tokens carrying each name.
pub fn multiplicity_from_tokens(tokens: &NamedSet) -> Result<MultisetM> {
    require_function(tokens)?;
    Ok(MultisetM::new(
        tokens.id().clone(),
        tokens.relation().iter().map(|(_, e)| (e.clone(), 1)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::views::{embed_set, PlainSet};
    use proptest::prelude::*;

    fn a(s: &str) -> Atom {
        Atom::lit(s)
    }

    fn ab23() -> MultisetM {
        MultisetM::new(a("M"), [(a("a"), 2), (a("b"), 3)])
    }

    fn rel(x: &NamedSet) -> Vec<(&str, &str)> {
        x.relation()
            .iter()
            .map(|(e, n)| (e.as_str(), n.as_str()))
            .collect()
    }

    #[test]
    fn multiplicity_naming() {
        let dec = multiset_as_named_set(&ab23(), &NumeralScale::decimal());
        assert_eq!(rel(&dec), [("a", "2"), ("b", "3")]);
        let bin = multiset_as_named_set(&ab23(), &NumeralScale::binary());
        assert_eq!(rel(&bin), [("a", "10"), ("b", "11")]);
        let empty = multiset_as_named_set(&MultisetM::new(a("M"), []), &NumeralScale::decimal());
        assert_eq!(empty, NamedSet::empty(a("M")));
        let c = dec.classify();
        assert!(c.functional && c.total);
    }

    #[test]
    fn zero_multiplicities_are_dropped() {
        let m = MultisetM::new(a("M"), [(a("a"), 0), (a("b"), 1)]);
        assert_eq!(m.multiplicity().len(), 1);
        assert_eq!(m.count(&a("a")), 0);
    }

    #[test]
    fn back_to_multiplicities() {
        let dec = NumeralScale::decimal();
        let x = multiset_as_named_set(&ab23(), &dec);
        assert_eq!(named_set_as_multiset(&x, &dec).unwrap(), ab23());

        let bad = NamedSet::new(a("X"), [a("a")], [a("x7")], [(a("a"), a("x7"))]).unwrap();
        assert!(matches!(
            named_set_as_multiset(&bad, &dec),
            Err(Error::BadNumeral { .. })
        ));
        let multi = NamedSet::new(
            a("X"),
            [a("a")],
            [a("1"), a("2")],
            [(a("a"), a("1")), (a("a"), a("2"))],
        )
        .unwrap();
        assert_eq!(
            named_set_as_multiset(&multi, &dec),
            Err(Error::NotFunctional(a("X")))
        );
    }

    #[test]
    fn token_form() {
        let t = tokenize(&ab23()).unwrap();
        let support: Vec<_> = t.support().iter().map(Atom::as_str).collect();
        assert_eq!(support, ["a#1", "a#2", "b#1", "b#2", "b#3"]);
        assert_eq!(t.reflector().len(), 2);
        let c = t.classify();
        assert!(c.functional && c.total && c.normalized);

        let one = tokenize(&MultisetM::new(a("M"), [(a("a"), 1)])).unwrap();
        assert_eq!(one.support().iter().next().unwrap().as_str(), "a#1");

        let clash = MultisetM::new(a("M"), [(a("a#b"), 1)]);
        assert_eq!(tokenize(&clash), Err(Error::TokenClash(a("a#b"))));
    }

    #[test]
    fn counting_tokens() {
        assert_eq!(
            multiplicity_from_tokens(&tokenize(&ab23()).unwrap()).unwrap(),
            ab23()
        );
        let xy = embed_set(&PlainSet::new(a("S"), [a("x"), a("y")]), &a("e"));
        assert_eq!(
            multiplicity_from_tokens(&xy).unwrap(),
            MultisetM::new(a("S"), [(a("e"), 2)])
        );
        let empty = multiplicity_from_tokens(&NamedSet::empty(a("T"))).unwrap();
        assert!(empty.multiplicity().is_empty());
    }

    fn arb_multiset() -> impl Strategy<Value = MultisetM> {
        proptest::collection::btree_map("[a-z]{1,3}", 1u64..20, 0..6)
            .prop_map(|m| MultisetM::new(a("M"), m.into_iter().map(|(k, v)| (a(&k), v))))
    }

    proptest! {
        #[test]
        fn both_forms_round_trip(m in arb_multiset(), base in 2usize..=16) {
            let scale = NumeralScale::with_base(base).unwrap();
            let named = multiset_as_named_set(&m, &scale);
            prop_assert_eq!(named_set_as_multiset(&named, &scale).unwrap(), m.clone());
            let tokens = tokenize(&m).unwrap();
            prop_assert_eq!(tokens.support().len() as u64, m.total());
            prop_assert_eq!(multiplicity_from_tokens(&tokens).unwrap(), m);
        }
    }
}
