pub mod bits;
pub mod error;
pub mod grassmann;
pub mod hibi;
pub mod lattice;
pub mod linalg;
pub mod polytope;
pub mod poset;
pub mod qpoly;
pub mod valuation;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{DistributiveLattice, Elem, Enumeration, MaximalChain, OrderIdeal};
pub use poset::Poset;
