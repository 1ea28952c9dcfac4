//! Finite named sets `(X, r, I)`, their morphisms, and extensional checks of
//! the category laws.
//!
//! A named set here is always set-theoretical: the support `X` and reflector
//! `I` are finite sets of [`Atom`]s and the naming relation `r` is a finite
//! set of pairs inside `X × I`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// An opaque, nonempty, printable identifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    pub fn new(text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        if text.is_empty() || text.chars().any(char::is_control) {
            return Err(Error::InvalidAtom(text));
        }
        Ok(Atom(text))
    }

    /// Builds an atom from a literal known to be valid.
    ///
    /// Panics on an empty or non-printable literal.
    pub fn lit(text: &str) -> Self {
        Atom::new(text).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Atom {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

pub type AtomSet = BTreeSet<Atom>;
pub type Pair = (Atom, Atom);

/// A finite set-theoretical named set `(support, relation, reflector)`.
///
/// Equality ignores the id: two named sets are equal when their support,
/// reflector and naming relation coincide.
#[derive(Debug, Clone)]
pub struct NamedSet {
    id: Atom,
    support: AtomSet,
    reflector: AtomSet,
    relation: BTreeSet<Pair>,
}

impl PartialEq for NamedSet {
    fn eq(&self, other: &Self) -> bool {
        self.support == other.support
            && self.reflector == other.reflector
            && self.relation == other.relation
    }
}

impl Eq for NamedSet {}

impl NamedSet {
    pub fn new(
        id: Atom,
        support: impl IntoIterator<Item = Atom>,
        reflector: impl IntoIterator<Item = Atom>,
        relation: impl IntoIterator<Item = Pair>,
    ) -> Result<Self> {
        let support: AtomSet = support.into_iter().collect();
        let reflector: AtomSet = reflector.into_iter().collect();
        let relation: BTreeSet<Pair> = relation.into_iter().collect();
        if let Some((element, name)) = relation
            .iter()
            .find(|(x, a)| !support.contains(x) || !reflector.contains(a))
        {
            return Err(Error::DanglingPair {
                element: element.clone(),
                name: name.clone(),
            });
        }
        Ok(NamedSet {
            id,
            support,
            reflector,
            relation,
        })
    }

    pub fn empty(id: Atom) -> Self {
        NamedSet {
            id,
            support: AtomSet::new(),
            reflector: AtomSet::new(),
            relation: BTreeSet::new(),
        }
    }

    pub fn id(&self) -> &Atom {
        &self.id
    }

    pub fn with_id(mut self, id: Atom) -> Self {
        self.id = id;
        self
    }

    pub fn support(&self) -> &AtomSet {
        &self.support
    }

    pub fn reflector(&self) -> &AtomSet {
        &self.reflector
    }

    pub fn relation(&self) -> &BTreeSet<Pair> {
        &self.relation
    }

    /// Names that are actually assigned to at least one element.
    pub fn factual_names(&self) -> AtomSet {
        self.relation.iter().map(|(_, a)| a.clone()).collect()
    }

    /// The complete name `r(x)` of a support element.
    pub fn names_of(&self, x: &Atom) -> Result<AtomSet> {
        if !self.support.contains(x) {
            return Err(Error::UnknownElement(x.clone()));
        }
        Ok(self.names_of_unchecked(x).cloned().collect())
    }

    fn names_of_unchecked<'a>(&'a self, x: &'a Atom) -> impl Iterator<Item = &'a Atom> + 'a {
        self.relation
            .iter()
            .filter(move |(y, _)| y == x)
            .map(|(_, a)| a)
    }

    pub fn classify(&self) -> Classification {
        let mut name_counts: BTreeMap<&Atom, usize> = self.support.iter().map(|x| (x, 0)).collect();
        for (x, _) in &self.relation {
            *name_counts.entry(x).or_default() += 1;
        }
        let functional = name_counts.values().all(|&n| n <= 1);
        let total = name_counts.values().all(|&n| n >= 1);
        let factual = self.factual_names();
        let normalized = factual == self.reflector;
        let singlenamed = factual.len() == 1;
        // bijection onto the whole reflector
        let injective = {
            let mut seen = BTreeSet::new();
            self.relation.iter().all(|(_, a)| seen.insert(a))
        };
        let individually_named = functional && total && normalized && injective;
        Classification {
            functional,
            total,
            normalized,
            singlenamed,
            individually_named,
        }
    }

    /// Strict (`weak == false`) or weak named-subset test of `self` inside `of`.
    pub fn is_named_subset(&self, of: &NamedSet, weak: bool) -> bool {
        if !self.support.is_subset(&of.support) || !self.reflector.is_subset(&of.reflector) {
            return false;
        }
        let restriction: BTreeSet<&Pair> = of
            .relation
            .iter()
            .filter(|(x, a)| self.support.contains(x) && self.reflector.contains(a))
            .collect();
        let mine: BTreeSet<&Pair> = self.relation.iter().collect();
        if weak {
            mine.is_subset(&restriction)
        } else {
            mine == restriction
        }
    }
}

/// The five naming-shape flags of a named set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Classification {
    /// Every element has at most one name.
    pub functional: bool,
    /// Every element has at least one name.
    pub total: bool,
    /// Factual names exhaust the reflector.
    pub normalized: bool,
    /// Exactly one factual name.
    pub singlenamed: bool,
    /// The naming relation is a bijection from the support onto the reflector.
    pub individually_named: bool,
}

impl Classification {
    pub fn entries(&self) -> [(&'static str, bool); 5] {
        [
            ("functional", self.functional),
            ("individually_named", self.individually_named),
            ("normalized", self.normalized),
            ("singlenamed", self.singlenamed),
            ("total", self.total),
        ]
    }
}

/// A pair of total maps `(f, g)` between the supports and the reflectors of
/// two named sets.
///
/// Totality and codomain membership are enforced at construction; whether the
/// naming square commutes is a separate question answered by
/// [`Morphism::check`], so that broken morphisms can still be represented and
/// reported.
#[derive(Debug, Clone)]
pub struct Morphism {
    id: Atom,
    source: NamedSet,
    target: NamedSet,
    f: BTreeMap<Atom, Atom>,
    g: BTreeMap<Atom, Atom>,
}

/// Equality compares endpoints (including their ids) and both maps, but not
/// the morphism's own id.
impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        same_object(&self.source, &other.source)
            && same_object(&self.target, &other.target)
            && self.f == other.f
            && self.g == other.g
    }
}

impl Eq for Morphism {}

/// Objects in a workspace are identified by id and content together.
pub fn same_object(a: &NamedSet, b: &NamedSet) -> bool {
    a.id == b.id && a == b
}

fn check_total(
    map_name: &'static str,
    map: &BTreeMap<Atom, Atom>,
    domain: &AtomSet,
    codomain: &AtomSet,
) -> Result<()> {
    if let Some(x) = domain.iter().find(|x| !map.contains_key(*x)) {
        return Err(Error::PartialMap {
            map: map_name,
            detail: format!("undefined at `{x}`"),
        });
    }
    for (x, y) in map {
        if !domain.contains(x) {
            return Err(Error::PartialMap {
                map: map_name,
                detail: format!("defined outside its domain at `{x}`"),
            });
        }
        if !codomain.contains(y) {
            return Err(Error::PartialMap {
                map: map_name,
                detail: format!("sends `{x}` to `{y}` outside its codomain"),
            });
        }
    }
    Ok(())
}

/// Outcome of comparing the two composite relations `fq` and `rg`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Commutation {
    pub commutes: bool,
    /// A pair present in exactly one of the two composites.
    pub witness: Option<Pair>,
}

impl Morphism {
    pub fn new(
        id: Atom,
        source: NamedSet,
        target: NamedSet,
        f: BTreeMap<Atom, Atom>,
        g: BTreeMap<Atom, Atom>,
    ) -> Result<Self> {
        check_total("f", &f, &source.support, &target.support)?;
        check_total("g", &g, &source.reflector, &target.reflector)?;
        Ok(Morphism {
            id,
            source,
            target,
            f,
            g,
        })
    }

    pub fn identity(object: &NamedSet) -> Self {
        let diagonal = |s: &AtomSet| s.iter().map(|a| (a.clone(), a.clone())).collect();
        Morphism {
            id: Atom(format!("id.{}", object.id)),
            source: object.clone(),
            target: object.clone(),
            f: diagonal(&object.support),
            g: diagonal(&object.reflector),
        }
    }

    pub fn id(&self) -> &Atom {
        &self.id
    }

    pub fn with_id(mut self, id: Atom) -> Self {
        self.id = id;
        self
    }

    pub fn source(&self) -> &NamedSet {
        &self.source
    }

    pub fn target(&self) -> &NamedSet {
        &self.target
    }

    pub fn support_map(&self) -> &BTreeMap<Atom, Atom> {
        &self.f
    }

    pub fn name_map(&self) -> &BTreeMap<Atom, Atom> {
        &self.g
    }

    /// `fq`: first move along `f`, then name in the target.
    pub fn support_then_name(&self) -> BTreeSet<Pair> {
        self.f
            .iter()
            .flat_map(|(x, y)| {
                self.target
                    .names_of_unchecked(y)
                    .map(move |b| (x.clone(), b.clone()))
            })
            .collect()
    }

    /// `rg`: first name in the source, then move along `g`.
    pub fn name_then_rename(&self) -> BTreeSet<Pair> {
        self.source
            .relation
            .iter()
            .map(|(x, a)| (x.clone(), self.g[a].clone()))
            .collect()
    }

    pub fn check(&self) -> Commutation {
        let fq = self.support_then_name();
        let rg = self.name_then_rename();
        let witness = fq.symmetric_difference(&rg).next().cloned();
        Commutation {
            commutes: witness.is_none(),
            witness,
        }
    }

    /// Left-to-right composite: `self` first, then `next`.
    pub fn then(&self, next: &Morphism) -> Result<Morphism> {
        if !same_object(&self.target, &next.source) {
            return Err(Error::NonComposable {
                first: self.id.clone(),
                second: next.id.clone(),
            });
        }
        let f = self
            .f
            .iter()
            .map(|(x, y)| (x.clone(), next.f[y].clone()))
            .collect();
        let g = self
            .g
            .iter()
            .map(|(a, b)| (a.clone(), next.g[b].clone()))
            .collect();
        Ok(Morphism {
            id: Atom(format!("{}.{}", self.id, next.id)),
            source: self.source.clone(),
            target: next.target.clone(),
            f,
            g,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeCheck {
    pub first: Atom,
    pub second: Atom,
    pub commutes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityCheck {
    pub chain: [Atom; 3],
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub morphism: Atom,
    /// `id ∘ F = F`
    pub left: bool,
    /// `F ∘ id = F`
    pub right: bool,
}

/// Extensional verification of the category laws over a finite workspace.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CategoryReport {
    pub commutativity: Vec<(Atom, Commutation)>,
    pub composites: Vec<CompositeCheck>,
    pub associativity: Vec<AssociativityCheck>,
    pub identities: Vec<IdentityCheck>,
}

impl CategoryReport {
    pub fn non_commuting(&self) -> Vec<&Atom> {
        self.commutativity
            .iter()
            .filter(|(_, c)| !c.commutes)
            .map(|(id, _)| id)
            .collect()
    }

    pub fn failed_composites(&self) -> usize {
        self.composites.iter().filter(|c| !c.commutes).count()
    }

    pub fn failed_associativity(&self) -> usize {
        self.associativity.iter().filter(|c| !c.holds).count()
    }

    pub fn failed_identities(&self) -> usize {
        self.identities
            .iter()
            .filter(|c| !(c.left && c.right))
            .count()
    }

    pub fn all_pass(&self) -> bool {
        self.non_commuting().is_empty()
            && self.failed_composites() == 0
            && self.failed_associativity() == 0
            && self.failed_identities() == 0
    }
}

pub fn verify_category(objects: &[NamedSet], morphisms: &[Morphism]) -> Result<CategoryReport> {
    for m in morphisms {
        for end in [&m.source, &m.target] {
            if !objects.iter().any(|o| same_object(o, end)) {
                return Err(Error::UnknownObject {
                    morphism: m.id.clone(),
                    object: end.id.clone(),
                });
            }
        }
    }

    let mut report = CategoryReport {
        commutativity: morphisms
            .iter()
            .map(|m| (m.id.clone(), m.check()))
            .collect(),
        ..Default::default()
    };

    let composable = |a: &Morphism, b: &Morphism| same_object(&a.target, &b.source);

    for a in morphisms {
        for b in morphisms.iter().filter(|b| composable(a, b)) {
            let ab = a.then(b)?;
            report.composites.push(CompositeCheck {
                first: a.id.clone(),
                second: b.id.clone(),
                commutes: ab.check().commutes,
            });
            for c in morphisms.iter().filter(|c| composable(b, c)) {
                let left = ab.then(c)?;
                let right = a.then(&b.then(c)?)?;
                report.associativity.push(AssociativityCheck {
                    chain: [a.id.clone(), b.id.clone(), c.id.clone()],
                    holds: left == right,
                });
            }
        }
    }

    for m in morphisms {
        let left = Morphism::identity(&m.source).then(m)? == *m;
        let right = m.then(&Morphism::identity(&m.target))? == *m;
        report.identities.push(IdentityCheck {
            morphism: m.id.clone(),
            left,
            right,
        });
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Atom {
        Atom::lit(s)
    }

    fn atoms(list: &[&str]) -> Vec<Atom> {
        list.iter().map(|s| a(s)).collect()
    }

    fn pairs(list: &[(&str, &str)]) -> Vec<Pair> {
        list.iter().map(|(x, n)| (a(x), a(n))).collect()
    }

    fn ns(id: &str, support: &[&str], names: &[&str], rel: &[(&str, &str)]) -> NamedSet {
        NamedSet::new(a(id), atoms(support), atoms(names), pairs(rel)).unwrap()
    }

    fn map(list: &[(&str, &str)]) -> BTreeMap<Atom, Atom> {
        pairs(list).into_iter().collect()
    }

    #[test]
    fn atoms_reject_empty_and_control_text() {
        assert!(Atom::new("").is_err());
        assert!(Atom::new("a\nb").is_err());
        assert!(Atom::new("q0 1").is_ok());
        assert_ne!(a("a"), a("A"));
    }

    #[test]
    fn construction_validates_pairs() {
        let x = ns("X", &["a", "b"], &["n"], &[("a", "n"), ("b", "n")]);
        assert_eq!(x.relation().len(), 2);
        let empty = ns("E", &[], &[], &[]);
        assert!(empty.support().is_empty());
        let err = NamedSet::new(a("X"), atoms(&["a"]), atoms(&["n"]), pairs(&[("b", "n")]));
        assert_eq!(
            err.unwrap_err(),
            Error::DanglingPair {
                element: a("b"),
                name: a("n")
            }
        );
    }

    #[test]
    fn factual_names_and_complete_names() {
        let x = ns("X", &["a"], &["p", "q"], &[("a", "p")]);
        assert_eq!(x.factual_names(), atoms(&["p"]).into_iter().collect());
        assert!(ns("X", &["a"], &["p"], &[]).factual_names().is_empty());
        let y = ns("Y", &["a", "b"], &["p", "q"], &[("a", "p"), ("b", "q")]);
        assert_eq!(y.factual_names().len(), 2);

        let z = ns("Z", &["a", "b"], &["p", "q"], &[("a", "p"), ("a", "q")]);
        assert_eq!(z.names_of(&a("a")).unwrap().len(), 2);
        assert!(z.names_of(&a("b")).unwrap().is_empty());
        assert_eq!(z.names_of(&a("c")), Err(Error::UnknownElement(a("c"))));
    }

    #[test]
    fn classification_examples() {
        let c = ns("X", &["a", "b"], &["n"], &[("a", "n"), ("b", "n")]).classify();
        assert!(c.singlenamed && c.normalized && c.functional && c.total);
        assert!(!c.individually_named);

        let c = ns("X", &["a", "b"], &["1", "2"], &[("a", "1"), ("b", "2")]).classify();
        assert!(c.individually_named && c.functional && c.total && c.normalized);

        let c = ns("X", &["a"], &["1", "2"], &[("a", "1")]).classify();
        assert!(!c.normalized && !c.individually_named);
    }

    #[test]
    fn named_subsets() {
        let x = ns(
            "X",
            &["a", "b"],
            &["n", "m"],
            &[("a", "n"), ("b", "m"), ("a", "m")],
        );
        let restricted = ns("Y", &["a"], &["n"], &[("a", "n")]);
        assert!(restricted.is_named_subset(&x, false));
        assert!(restricted.is_named_subset(&x, true));

        // X ∩ ({a} × {n, m}) = {(a,n), (a,m)}; Y keeps only one of them.
        let thinner = ns("Y", &["a"], &["n", "m"], &[("a", "n")]);
        assert!(thinner.is_named_subset(&x, true));
        assert!(!thinner.is_named_subset(&x, false));

        let foreign = ns("Y", &["b"], &["n"], &[("b", "n")]);
        assert!(!foreign.is_named_subset(&x, true));
        assert!(!foreign.is_named_subset(&x, false));
    }

    #[test]
    fn morphism_commutation() {
        let x = ns("X", &["x"], &["i"], &[("x", "i")]);
        let y = ns("Y", &["y"], &["j", "j2"], &[("y", "j")]);
        let good = Morphism::new(
            a("F"),
            x.clone(),
            y.clone(),
            map(&[("x", "y")]),
            map(&[("i", "j")]),
        )
        .unwrap();
        assert!(good.check().commutes);

        let bad = Morphism::new(a("G"), x, y, map(&[("x", "y")]), map(&[("i", "j2")])).unwrap();
        let c = bad.check();
        assert!(!c.commutes);
        // fq = {(x,j)}, rg = {(x,j2)}; the lexicographically first difference is (x,j)
        assert_eq!(c.witness, Some((a("x"), a("j"))));
    }

    #[test]
    fn partial_maps_are_rejected() {
        let x = ns("X", &["x1", "x2"], &["i"], &[]);
        let y = ns("Y", &["y"], &["j"], &[]);
        let err = Morphism::new(
            a("F"),
            x.clone(),
            y.clone(),
            map(&[("x1", "y")]),
            map(&[("i", "j")]),
        );
        assert!(matches!(err, Err(Error::PartialMap { map: "f", .. })));
        let err = Morphism::new(a("F"), x, y, map(&[("x1", "y"), ("x2", "y")]), map(&[]));
        assert!(matches!(err, Err(Error::PartialMap { map: "g", .. })));
    }

    #[test]
    fn identity_and_composition() {
        let x = ns("X", &["a", "b"], &["n"], &[("a", "n"), ("b", "n")]);
        let id = Morphism::identity(&x);
        assert!(id.check().commutes);
        assert_eq!(id.then(&id).unwrap(), id);

        let e = NamedSet::empty(a("E"));
        let ide = Morphism::identity(&e);
        assert!(ide.support_map().is_empty() && ide.name_map().is_empty());
        assert!(ide.check().commutes);

        let y = ns("Y", &["c"], &["m"], &[("c", "m")]);
        let f = Morphism::new(
            a("F"),
            x.clone(),
            y.clone(),
            map(&[("a", "c"), ("b", "c")]),
            map(&[("n", "m")]),
        )
        .unwrap();
        assert_eq!(Morphism::identity(&x).then(&f).unwrap(), f);
        assert_eq!(f.then(&Morphism::identity(&y)).unwrap(), f);

        let y_prime = y.clone().with_id(a("Y2"));
        let g = Morphism::new(a("G"), y_prime, x, map(&[("c", "a")]), map(&[("m", "n")])).unwrap();
        assert_eq!(
            f.then(&g).unwrap_err(),
            Error::NonComposable {
                first: a("F"),
                second: a("G")
            }
        );
    }

    #[test]
    fn single_identity_workspace_passes() {
        let x = ns("X", &["a"], &["n"], &[("a", "n")]);
        let report = verify_category(std::slice::from_ref(&x), &[Morphism::identity(&x)]).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.composites.len(), 1);
        assert_eq!(report.associativity.len(), 1);
    }

    #[test]
    fn unknown_endpoint_is_an_error() {
        let x = ns("X", &["a"], &["n"], &[("a", "n")]);
        let y = ns("Y", &["a"], &["n"], &[("a", "n")]);
        let err = verify_category(&[x], &[Morphism::identity(&y)]).unwrap_err();
        assert!(matches!(err, Error::UnknownObject { .. }));
    }
}
