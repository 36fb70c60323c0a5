//! Generalized torsion certificates.
//!
//! A non-trivial element `g` of a group is a generalized torsion element
//! when some product of its conjugates `x_1 g x_1⁻¹ · x_2 g x_2⁻¹ ⋯ x_n g x_n⁻¹`
//! is the identity. This crate builds, checks, searches for and refutes such
//! certificates over a fixed zoo of groups with solvable word problem.

pub mod classify;
pub mod morphism;
pub mod scl;
pub mod search;
pub mod witness;
pub mod word;
pub mod zoo;

mod util;

pub use morphism::{Morphism, MorphismError, MorphismFile, Section};
pub use search::{SearchBudget, SearchOutcome};
pub use witness::{Witness, WitnessError, WitnessFile};
pub use word::{Alphabet, Generator, Word};
pub use zoo::{Element, Group, GroupSpec, Order};
