use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;

use super::{require_function, FiniteLattice};
use crate::error::{Error, Result};
use crate::kernel::{Atom, AtomSet, NamedSet};

/// A membership degree: an exact rational, or an element of a finite lattice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    Rational(Ratio<i64>),
    Element(Atom),
}

impl Degree {
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Degree::Rational(Ratio::new(numer, denom))
    }

    /// Canonical text: `p/q` in lowest terms with positive denominator, or
    /// just `p` for integers; lattice elements verbatim.
    pub fn to_atom(&self) -> Atom {
        match self {
            Degree::Rational(r) => Atom::lit(&r.to_string()),
            Degree::Element(e) => e.clone(),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Rational(r) => write!(f, "{r}"),
            Degree::Element(e) => write!(f, "{e}"),
        }
    }
}

/// The membership space of a fuzzy set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scale {
    /// `[0, 1]`
    Unit,
    /// `[-1, 1]`
    Symmetric,
    /// every rational
    RealLine,
    Lattice(FiniteLattice),
}

impl Scale {
    pub fn label(&self) -> String {
        match self {
            Scale::Unit => "unit".into(),
            Scale::Symmetric => "sym".into(),
            Scale::RealLine => "real".into(),
            Scale::Lattice(l) => format!("lattice:{}", l.id()),
        }
    }

    pub fn admits(&self, degree: &Degree) -> bool {
        let one = Ratio::from_integer(1);
        match (self, degree) {
            (Scale::Unit, Degree::Rational(r)) => *r >= Ratio::from_integer(0) && *r <= one,
            (Scale::Symmetric, Degree::Rational(r)) => *r >= -one && *r <= one,
            (Scale::RealLine, Degree::Rational(_)) => true,
            (Scale::Lattice(l), Degree::Element(e)) => l.contains(e),
            _ => false,
        }
    }

    fn out_of_scale(&self, degree: impl fmt::Display) -> Error {
        Error::DegreeOutOfScale {
            degree: degree.to_string(),
            scale: self.label(),
        }
    }

    /// Reads a degree from its textual form and checks admissibility.
    pub fn parse_degree(&self, text: &str) -> Result<Degree> {
        let degree = match self {
            Scale::Lattice(_) => Degree::Element(Atom::new(text)?),
            _ => text
                .parse::<Ratio<i64>>()
                .map(Degree::Rational)
                .map_err(|_| self.out_of_scale(text))?,
        };
        if self.admits(&degree) {
            Ok(degree)
        } else {
            Err(self.out_of_scale(text))
        }
    }
}

/// A fuzzy set `(U, μ, M)` with a total membership function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzySet {
    id: Atom,
    universe: AtomSet,
    scale: Scale,
    membership: BTreeMap<Atom, Degree>,
}

impl FuzzySet {
    pub fn new(
        id: Atom,
        universe: impl IntoIterator<Item = Atom>,
        scale: Scale,
        membership: impl IntoIterator<Item = (Atom, Degree)>,
    ) -> Result<Self> {
        if let Scale::Lattice(l) = &scale {
            l.require_valid()?;
        }
        let universe: AtomSet = universe.into_iter().collect();
        let mut map = BTreeMap::new();
        for (x, d) in membership {
            if !universe.contains(&x) {
                return Err(Error::UnknownElement(x));
            }
            if !scale.admits(&d) {
                return Err(scale.out_of_scale(&d));
            }
            if let Some(prev) = map.insert(x, d.clone()) {
                if prev != d {
                    return Err(Error::NotFunctional(id));
                }
            }
        }
        if let Some(x) = universe.iter().find(|x| !map.contains_key(*x)) {
            return Err(Error::PartialMap {
                map: "membership",
                detail: format!("no degree for `{x}`"),
            });
        }
        Ok(FuzzySet {
            id,
            universe,
            scale,
            membership: map,
        })
    }

    pub fn id(&self) -> &Atom {
        &self.id
    }

    pub fn universe(&self) -> &AtomSet {
        &self.universe
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    pub fn membership(&self) -> &BTreeMap<Atom, Degree> {
        &self.membership
    }

    pub fn degree(&self, x: &Atom) -> Option<&Degree> {
        self.membership.get(x)
    }
}

/// The membership graph as a naming relation from the universe to degree atoms.
pub fn fuzzy_as_named_set(fuzzy: &FuzzySet) -> NamedSet {
    let relation: Vec<_> = fuzzy
        .membership
        .iter()
        .map(|(x, d)| (x.clone(), d.to_atom()))
        .collect();
    NamedSet::new(
        fuzzy.id.clone(),
        fuzzy.universe.iter().cloned(),
        relation.iter().map(|(_, n)| n.clone()),
        relation.iter().cloned(),
    )
    .expect("relation built from its own support and reflector")
}

pub fn named_set_as_fuzzy(named: &NamedSet, scale: &Scale) -> Result<FuzzySet> {
    require_function(named)?;
    let membership = named
        .relation()
        .iter()
        .map(|(x, n)| Ok((x.clone(), scale.parse_degree(n.as_str())?)))
        .collect::<Result<Vec<_>>>()?;
    FuzzySet::new(
        named.id().clone(),
        named.support().iter().cloned(),
        scale.clone(),
        membership,
    )
}
