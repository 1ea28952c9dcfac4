//! Finite named sets (fundamental triads) as a concrete data structure.
//!
//! * [`kernel`]: named sets, classification, named subsets, morphisms and
//!   extensional category-law checks.
//! * [`views`]: plain sets, functions, multisets, finite lattices and fuzzy
//!   sets expressed as named sets and back.
//! * [`properties`]: abstract properties, numeral scales and the
//!   natural-number property.
//! * [`structures`]: calculi, valuations, Mealy automata, grammars and
//!   Turing machines, plus their decomposition into triad trees.
//! * [`textio`]: the `.triad` workspace format.
//! * [`cli`]: the `triad` command-line front end.

pub mod cli;
pub mod error;
pub mod kernel;
pub mod properties;
pub mod structures;
pub mod textio;
pub mod views;

pub use error::{Error, Result};
pub use kernel::{verify_category, Atom, Classification, Morphism, NamedSet};
