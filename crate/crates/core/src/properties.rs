//! Abstract properties `(U, p, L)` with a partial valuation, positional
//! numeral scales, and the natural-number property that names every finite
//! set by the numeral of its cardinality.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::kernel::{Atom, NamedSet, Pair};
use crate::views::{MultisetM, PlainSet};

/// A positional numeral system: digit `i` of the alphabet has value `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumeralScale {
    digits: Vec<char>,
}

impl NumeralScale {
    pub fn new(digits: impl IntoIterator<Item = char>) -> Result<Self> {
        let digits: Vec<char> = digits.into_iter().collect();
        if digits.len() < 2 {
            return Err(Error::BadScale("at least two digits are required".into()));
        }
        if let Some(c) = digits.iter().find(|c| c.is_whitespace() || c.is_control()) {
            return Err(Error::BadScale(format!("digit {c:?} is not printable")));
        }
        for (i, c) in digits.iter().enumerate() {
            if digits[..i].contains(c) {
                return Err(Error::BadScale(format!("digit {c:?} repeats")));
            }
        }
        Ok(NumeralScale { digits })
    }

    pub fn decimal() -> Self {
        NumeralScale {
            digits: "0123456789".chars().collect(),
        }
    }

    pub fn binary() -> Self {
        NumeralScale {
            digits: vec!['0', '1'],
        }
    }

    /// Bases 2 through 36 with the digits `0-9a-z`.
    pub fn with_base(base: usize) -> Result<Self> {
        if !(2..=36).contains(&base) {
            return Err(Error::BadScale(format!("base {base} is outside 2..=36")));
        }
        NumeralScale::new("0123456789abcdefghijklmnopqrstuvwxyz".chars().take(base))
    }

    pub fn base(&self) -> usize {
        self.digits.len()
    }

    fn digit_value(&self, c: char) -> Option<usize> {
        self.digits.iter().position(|&d| d == c)
    }

    fn bad(&self, numeral: &str) -> Error {
        Error::BadNumeral {
            numeral: numeral.to_string(),
            base: self.base(),
        }
    }

    /// Leading-zero-free word over the digit alphabet; a lone zero digit is canonical.
    pub fn is_canonical(&self, numeral: &str) -> bool {
        let mut chars = numeral.chars();
        match chars.next() {
            None => false,
            Some(first) if first == self.digits[0] => chars.next().is_none(),
            Some(first) => {
                self.digit_value(first).is_some() && chars.all(|c| self.digit_value(c).is_some())
            }
        }
    }

    pub fn render(&self, mut n: u64) -> Atom {
        let base = self.base() as u64;
        let mut out = Vec::new();
        loop {
            out.push(self.digits[(n % base) as usize]);
            n /= base;
            if n == 0 {
                break;
            }
        }
        Atom::lit(&out.iter().rev().collect::<String>())
    }

    pub fn value(&self, numeral: &str) -> Result<u64> {
        if !self.is_canonical(numeral) {
            return Err(self.bad(numeral));
        }
        numeral.chars().try_fold(0u64, |acc, c| {
            let d = self
                .digit_value(c)
                .expect("canonical numerals use known digits") as u64;
            acc.checked_mul(self.base() as u64)
                .and_then(|v| v.checked_add(d))
                .ok_or_else(|| self.bad(numeral))
        })
    }

    /// Digit-wise increment with carry; works on numerals of any length.
    pub fn successor(&self, numeral: &str) -> Result<Atom> {
        if !self.is_canonical(numeral) {
            return Err(self.bad(numeral));
        }
        let last = self.base() - 1;
        let mut digits: Vec<usize> = numeral
            .chars()
            .map(|c| self.digit_value(c).expect("canonical"))
            .collect();
        let mut carry = true;
        for d in digits.iter_mut().rev() {
            if *d == last {
                *d = 0;
            } else {
                *d += 1;
                carry = false;
                break;
            }
        }
        if carry {
            digits.insert(0, 1);
        }
        let text: String = digits.into_iter().map(|d| self.digits[d]).collect();
        Atom::new(text)
    }
}

pub fn count_set(set: &PlainSet, scale: &NumeralScale) -> Atom {
    scale.render(set.elements().len() as u64)
}

/// Total number of tokens, i.e. the sum of all multiplicities.
pub fn count_multiset(multiset: &MultisetM, scale: &NumeralScale) -> Atom {
    scale.render(multiset.total())
}

/// An abstract property `(U, p, L)` whose valuation `p` is a partial function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Property {
    id: Atom,
    universe: Atom,
    scale: Atom,
    valuation: BTreeMap<Atom, Atom>,
}

impl Property {
    pub fn new(
        id: Atom,
        universe: Atom,
        scale: Atom,
        valuation: impl IntoIterator<Item = Pair>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (u, v) in valuation {
            if let Some(prev) = map.insert(u.clone(), v.clone()) {
                if prev != v {
                    return Err(Error::NotFunctional(id));
                }
            }
        }
        Ok(Property {
            id,
            universe,
            scale,
            valuation: map,
        })
    }

    pub fn id(&self) -> &Atom {
        &self.id
    }

    pub fn universe_label(&self) -> &Atom {
        &self.universe
    }

    pub fn scale_label(&self) -> &Atom {
        &self.scale
    }

    pub fn valuation(&self) -> &BTreeMap<Atom, Atom> {
        &self.valuation
    }

    /// `None` is the undefined outcome of a partial valuation.
    pub fn apply(&self, object: &Atom) -> Option<&Atom> {
        self.valuation.get(object)
    }

    /// The property viewed as the named set `(dom p, p, values of p)`.
    pub fn as_named_set(&self) -> NamedSet {
        NamedSet::new(
            self.id.clone(),
            self.valuation.keys().cloned(),
            self.valuation.values().cloned(),
            self.valuation.iter().map(|(u, v)| (u.clone(), v.clone())),
        )
        .expect("graph of a function lies inside its domain x range")
    }
}

/// The natural-number property over a declared family of sets: each set id is
/// valued by the numeral of its cardinality.
pub fn natural_number_property(sets: &[PlainSet], scale: &NumeralScale) -> Result<Property> {
    let mut valuation = BTreeMap::new();
    for set in sets {
        if valuation
            .insert(set.name().clone(), count_set(set, scale))
            .is_some()
        {
            return Err(Error::DuplicateId(set.name().clone()));
        }
    }
    Ok(Property {
        id: Atom::lit(&format!("N{}", scale.base())),
        universe: Atom::lit("W"),
        scale: Atom::lit(&format!("numerals{}", scale.base())),
        valuation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(s: &str) -> Atom {
        Atom::lit(s)
    }

    fn set(name: &str, n: usize) -> PlainSet {
        PlainSet::new(a(name), (0..n).map(|i| a(&format!("e{i}"))))
    }

    #[test]
    fn counting_sets() {
        let abc = PlainSet::new(a("s"), ["a", "b", "c"].map(a));
        assert_eq!(count_set(&abc, &NumeralScale::decimal()).as_str(), "3");
        assert_eq!(
            count_set(&set("t", 10), &NumeralScale::binary()).as_str(),
            "1010"
        );
        assert_eq!(
            count_set(&set("e", 0), &NumeralScale::decimal()).as_str(),
            "0"
        );
    }

    #[test]
    fn counting_multisets() {
        let bb = MultisetM::new(a("m"), [(a("b"), 2)]);
        assert_eq!(count_multiset(&bb, &NumeralScale::decimal()).as_str(), "2");
        let m = MultisetM::new(a("m"), [(a("a"), 2), (a("b"), 3)]);
        assert_eq!(count_multiset(&m, &NumeralScale::decimal()).as_str(), "5");
        let empty = MultisetM::new(a("m"), []);
        assert_eq!(
            count_multiset(&empty, &NumeralScale::decimal()).as_str(),
            "0"
        );
    }

    #[test]
    fn successor_examples() {
        let dec = NumeralScale::decimal();
        let bin = NumeralScale::binary();
        assert_eq!(dec.successor("0").unwrap().as_str(), "1");
        assert_eq!(bin.successor("1010").unwrap().as_str(), "1011");
        assert_eq!(dec.successor("999").unwrap().as_str(), "1000");
        assert_eq!(bin.successor("1").unwrap().as_str(), "10");
        for bad in ["", "007", "12a", "2"] {
            assert!(bin.successor(bad).is_err(), "{bad}");
        }
        assert!(dec.successor("007").is_err());
        // beyond u64
        assert_eq!(
            dec.successor("99999999999999999999999").unwrap().as_str(),
            "100000000000000000000000"
        );
    }

    #[test]
    fn scales_are_validated() {
        assert!(NumeralScale::new("0".chars()).is_err());
        assert!(NumeralScale::new("00".chars()).is_err());
        assert!(NumeralScale::with_base(1).is_err());
        let hex = NumeralScale::with_base(16).unwrap();
        assert_eq!(hex.render(255).as_str(), "ff");
        assert_eq!(hex.value("ff").unwrap(), 255);
    }

    #[test]
    fn partial_valuation() {
        let p = Property::new(a("P"), a("U"), a("L"), [(a("p"), a("1"))]).unwrap();
        assert_eq!(p.apply(&a("p")), Some(&a("1")));
        assert_eq!(p.apply(&a("q")), None);

        let truth = Property::new(
            a("truth"),
            a("statements"),
            a("TF"),
            [(a("snow-is-white"), a("T")), (a("2+2=5"), a("F"))],
        )
        .unwrap();
        assert_eq!(truth.apply(&a("2+2=5")), Some(&a("F")));

        let clash = Property::new(a("P"), a("U"), a("L"), [(a("p"), a("1")), (a("p"), a("0"))]);
        assert!(clash.is_err());
    }

    #[test]
    fn natural_number_property_examples() {
        let s1 = PlainSet::new(a("s1"), ["a", "b", "c"].map(a));
        let dec =
            natural_number_property(std::slice::from_ref(&s1), &NumeralScale::decimal()).unwrap();
        assert_eq!(dec.apply(&a("s1")), Some(&a("3")));
        let bin =
            natural_number_property(std::slice::from_ref(&s1), &NumeralScale::binary()).unwrap();
        assert_ne!(dec, bin);
        assert_eq!(bin.apply(&a("s1")), Some(&a("11")));
        let empty = natural_number_property(&[], &NumeralScale::decimal()).unwrap();
        assert!(empty.valuation().is_empty());
        let dup = natural_number_property(&[s1.clone(), s1], &NumeralScale::decimal());
        assert_eq!(dup.unwrap_err(), Error::DuplicateId(a("s1")));
    }

    proptest! {
        #[test]
        fn render_and_value_round_trip(n in any::<u64>(), base in 2usize..=36) {
            let scale = NumeralScale::with_base(base).unwrap();
            let numeral = scale.render(n);
            prop_assert!(scale.is_canonical(numeral.as_str()));
            prop_assert_eq!(scale.value(numeral.as_str()).unwrap(), n);
        }

        #[test]
        fn successor_matches_integer_increment(n in 0u64..u64::MAX, base in 2usize..=36) {
            let scale = NumeralScale::with_base(base).unwrap();
            let next = scale.successor(scale.render(n).as_str()).unwrap();
            prop_assert!(scale.is_canonical(next.as_str()));
            prop_assert_eq!(next, scale.render(n + 1));
        }
    }
}
