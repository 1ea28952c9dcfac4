use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::{Atom, AtomSet, Pair};

/// A finite carrier with the reflexive-transitive closure of a set of
/// generating `x <= y` pairs.
///
/// Construction only closes the order; whether it is actually a lattice is
/// answered by [`FiniteLattice::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    id: Atom,
    carrier: Vec<Atom>,
    // leq[i][j] <=> carrier[i] <= carrier[j]
    leq: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeFailure {
    Empty,
    NotAntisymmetric(Atom, Atom),
    NoJoin(Atom, Atom),
    NoMeet(Atom, Atom),
}

impl fmt::Display for LatticeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeFailure::Empty => write!(f, "empty carrier has no top or bottom"),
            LatticeFailure::NotAntisymmetric(a, b) => {
                write!(f, "{a} <= {b} and {b} <= {a} but they differ")
            }
            LatticeFailure::NoJoin(a, b) => write!(f, "{a} and {b} have no least upper bound"),
            LatticeFailure::NoMeet(a, b) => write!(f, "{a} and {b} have no greatest lower bound"),
        }
    }
}

impl LatticeFailure {
    pub fn pair(&self) -> Option<(&Atom, &Atom)> {
        match self {
            LatticeFailure::Empty => None,
            LatticeFailure::NotAntisymmetric(a, b)
            | LatticeFailure::NoJoin(a, b)
            | LatticeFailure::NoMeet(a, b) => Some((a, b)),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LatticeFailure::Empty => "empty",
            LatticeFailure::NotAntisymmetric(..) => "not-antisymmetric",
            LatticeFailure::NoJoin(..) => "no-join",
            LatticeFailure::NoMeet(..) => "no-meet",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeReport {
    pub failure: Option<LatticeFailure>,
    pub top: Option<Atom>,
    pub bottom: Option<Atom>,
}

impl LatticeReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

impl FiniteLattice {
    pub fn new(
        id: Atom,
        carrier: impl IntoIterator<Item = Atom>,
        generators: impl IntoIterator<Item = Pair>,
    ) -> Result<Self> {
        let carrier: Vec<Atom> = carrier
            .into_iter()
            .collect::<AtomSet>()
            .into_iter()
            .collect();
        let n = carrier.len();
        let index = |x: &Atom| {
            carrier
                .binary_search(x)
                .map_err(|_| Error::UnknownElement(x.clone()))
        };
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (x, y) in generators {
            leq[index(&x)?][index(&y)?] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    let via = leq[k].clone();
                    for (cell, reach) in leq[i].iter_mut().zip(via) {
                        *cell |= reach;
                    }
                }
            }
        }
        Ok(FiniteLattice { id, carrier, leq })
    }

    pub fn id(&self) -> &Atom {
        &self.id
    }

    pub fn carrier(&self) -> impl Iterator<Item = &Atom> {
        self.carrier.iter()
    }

    pub fn contains(&self, x: &Atom) -> bool {
        self.carrier.binary_search(x).is_ok()
    }

    fn index(&self, x: &Atom) -> Result<usize> {
        self.carrier
            .binary_search(x)
            .map_err(|_| Error::UnknownElement(x.clone()))
    }

    pub fn leq(&self, x: &Atom, y: &Atom) -> Result<bool> {
        Ok(self.leq[self.index(x)?][self.index(y)?])
    }

    /// The closed order without its reflexive part, sorted.
    pub fn strict_order(&self) -> BTreeSet<Pair> {
        let mut out = BTreeSet::new();
        for (i, x) in self.carrier.iter().enumerate() {
            for (j, y) in self.carrier.iter().enumerate() {
                if i != j && self.leq[i][j] {
                    out.insert((x.clone(), y.clone()));
                }
            }
        }
        out
    }

    fn least_of(&self, candidates: &[usize]) -> Option<usize> {
        let mut least = candidates
            .iter()
            .copied()
            .filter(|&c| candidates.iter().all(|&d| self.leq[c][d]));
        match (least.next(), least.next()) {
            (Some(c), None) => Some(c),
            _ => None,
        }
    }

    fn greatest_of(&self, candidates: &[usize]) -> Option<usize> {
        let mut greatest = candidates
            .iter()
            .copied()
            .filter(|&c| candidates.iter().all(|&d| self.leq[d][c]));
        match (greatest.next(), greatest.next()) {
            (Some(c), None) => Some(c),
            _ => None,
        }
    }

    fn lub(&self, i: usize, j: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.carrier.len())
            .filter(|&k| self.leq[i][k] && self.leq[j][k])
            .collect();
        self.least_of(&upper)
    }

    fn glb(&self, i: usize, j: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.carrier.len())
            .filter(|&k| self.leq[k][i] && self.leq[k][j])
            .collect();
        self.greatest_of(&lower)
    }

    fn invalid(&self, failure: LatticeFailure) -> Error {
        Error::InvalidLattice {
            id: self.id.clone(),
            reason: failure.to_string(),
        }
    }

    pub fn join(&self, x: &Atom, y: &Atom) -> Result<Atom> {
        let (i, j) = (self.index(x)?, self.index(y)?);
        self.lub(i, j)
            .map(|k| self.carrier[k].clone())
            .ok_or_else(|| self.invalid(LatticeFailure::NoJoin(x.clone(), y.clone())))
    }

    pub fn meet(&self, x: &Atom, y: &Atom) -> Result<Atom> {
        let (i, j) = (self.index(x)?, self.index(y)?);
        self.glb(i, j)
            .map(|k| self.carrier[k].clone())
            .ok_or_else(|| self.invalid(LatticeFailure::NoMeet(x.clone(), y.clone())))
    }

    pub fn join_meet(&self, x: &Atom, y: &Atom) -> Result<(Atom, Atom)> {
        Ok((self.join(x, y)?, self.meet(x, y)?))
    }

    /// Checks the partial-order axioms, existence of every binary join and
    /// meet, and top/bottom. Pairs are visited in carrier order; the first
    /// failure is reported.
    pub fn validate(&self) -> LatticeReport {
        let n = self.carrier.len();
        let fail = |failure| LatticeReport {
            failure: Some(failure),
            top: None,
            bottom: None,
        };
        if n == 0 {
            return fail(LatticeFailure::Empty);
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.leq[i][j] && self.leq[j][i] {
                    return fail(LatticeFailure::NotAntisymmetric(
                        self.carrier[i].clone(),
                        self.carrier[j].clone(),
                    ));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let pair = || (self.carrier[i].clone(), self.carrier[j].clone());
                if self.lub(i, j).is_none() {
                    let (a, b) = pair();
                    return fail(LatticeFailure::NoJoin(a, b));
                }
                if self.glb(i, j).is_none() {
                    let (a, b) = pair();
                    return fail(LatticeFailure::NoMeet(a, b));
                }
            }
        }
        let all: Vec<usize> = (0..n).collect();
        let top = self.greatest_of(&all).map(|k| self.carrier[k].clone());
        let bottom = self.least_of(&all).map(|k| self.carrier[k].clone());
        LatticeReport {
            failure: None,
            top,
            bottom,
        }
    }

    pub fn require_valid(&self) -> Result<()> {
        match self.validate().failure {
            None => Ok(()),
            Some(f) => Err(self.invalid(f)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Atom {
        Atom::lit(s)
    }

    fn lattice(carrier: &[&str], order: &[(&str, &str)]) -> FiniteLattice {
        FiniteLattice::new(
            a("L"),
            carrier.iter().map(|s| a(s)),
            order.iter().map(|(x, y)| (a(x), a(y))),
        )
        .unwrap()
    }

    fn diamond() -> FiniteLattice {
        lattice(
            &["0", "x", "y", "1"],
            &[("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")],
        )
    }

    #[test]
    fn chain_is_a_lattice() {
        let chain = lattice(&["0", "x", "1"], &[("0", "x"), ("x", "1")]);
        let report = chain.validate();
        assert!(report.is_valid());
        assert_eq!(report.top, Some(a("1")));
        assert_eq!(report.bottom, Some(a("0")));
        assert_eq!(chain.join(&a("0"), &a("x")).unwrap(), a("x"));
        // closure adds 0 <= 1
        assert!(chain.leq(&a("0"), &a("1")).unwrap());
    }

    #[test]
    fn diamond_joins_and_meets() {
        let d = diamond();
        assert!(d.validate().is_valid());
        assert_eq!(d.join_meet(&a("x"), &a("y")).unwrap(), (a("1"), a("0")));
        assert_eq!(d.join_meet(&a("x"), &a("x")).unwrap(), (a("x"), a("x")));
        assert_eq!(d.join(&a("x"), &a("z")), Err(Error::UnknownElement(a("z"))));
    }

    #[test]
    fn two_maximal_elements_fail() {
        let v = lattice(&["0", "p", "q"], &[("0", "p"), ("0", "q")]);
        let report = v.validate();
        assert_eq!(report.failure, Some(LatticeFailure::NoJoin(a("p"), a("q"))));
        assert!(v.join(&a("p"), &a("q")).is_err());
        assert_eq!(v.meet(&a("p"), &a("q")).unwrap(), a("0"));
    }

    #[test]
    fn cycles_and_empty_carriers_fail() {
        let cyc = lattice(&["x", "y"], &[("x", "y"), ("y", "x")]);
        assert_eq!(
            cyc.validate().failure,
            Some(LatticeFailure::NotAntisymmetric(a("x"), a("y")))
        );
        assert_eq!(
            lattice(&[], &[]).validate().failure,
            Some(LatticeFailure::Empty)
        );
    }

    #[test]
    fn generators_must_stay_in_carrier() {
        let err = FiniteLattice::new(a("L"), [a("0")], [(a("0"), a("9"))]);
        assert_eq!(err.unwrap_err(), Error::UnknownElement(a("9")));
    }

    #[test]
    fn strict_order_is_closed() {
        let chain = lattice(&["0", "x", "1"], &[("0", "x"), ("x", "1")]);
        assert_eq!(chain.strict_order().len(), 3);
    }
}
