//! The Grassmannian `Gr(d, n)`: the lattice `I(d, n)`, Pluecker relations,
//! straightening, governedness and the lifted chain valuations.

pub mod governed;
pub mod idn;
pub mod mu;
pub mod plucker;
pub mod straighten;

pub use idn::{classify_irreducible, Grassmannian, IrreducibleKind, PluckerIndex, RootCell};
