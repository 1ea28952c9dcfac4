use thiserror::Error;

use crate::kernel::Atom;

/// Everything that can go wrong while building or querying triads.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid atom {0:?}: atoms must be nonempty and printable")]
    InvalidAtom(String),

    #[error("pair ({element}, {name}) lies outside support x reflector")]
    DanglingPair { element: Atom, name: Atom },

    #[error("unknown element `{0}`")]
    UnknownElement(Atom),

    #[error("map `{map}` is not total: {detail}")]
    PartialMap { map: &'static str, detail: String },

    #[error("morphisms `{first}` and `{second}` are not composable")]
    NonComposable { first: Atom, second: Atom },

    #[error("morphism `{morphism}` references undeclared object `{object}`")]
    UnknownObject { morphism: Atom, object: Atom },

    #[error("named set `{0}` is not singlenamed")]
    NotSinglenamed(Atom),

    #[error("named set `{0}` is not a total function")]
    NotFunctional(Atom),

    #[error("`{numeral}` is not a canonical numeral in base {base}")]
    BadNumeral { numeral: String, base: usize },

    #[error("invalid numeral scale: {0}")]
    BadScale(String),

    #[error("atom `{0}` contains the token separator `#`")]
    TokenClash(Atom),

    #[error("degree `{degree}` is not admitted by the {scale} scale")]
    DegreeOutOfScale { degree: String, scale: String },

    #[error("lattice `{id}` is invalid: {reason}")]
    InvalidLattice { id: Atom, reason: String },

    #[error("duplicate id `{0}`")]
    DuplicateId(Atom),

    #[error(
        "machine `{id}` is not deterministic: left part ({state}, {symbol}) has several rules"
    )]
    NotDeterministic { id: Atom, state: Atom, symbol: Atom },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(Atom),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
