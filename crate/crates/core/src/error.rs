use thiserror::Error;

/// Errors raised by the lattice, valuation, straightening and polytope routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("cover ({0}, {1}) refers to an element outside the poset")]
    CoverOutOfRange(usize, usize),
    #[error("cover relation contains a cycle through `{0}`")]
    CyclicCovers(String),
    #[error("cover ({lower}, {upper}) is implied by transitivity")]
    RedundantCover { lower: String, upper: String },
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("poset has {0} elements; at most {max} are supported", max = crate::bits::IdealSet::CAPACITY)]
    TooManyElements(usize),
    #[error("the order is not a lattice: {0}")]
    NotALattice(String),
    #[error("the lattice is not distributive: {0}")]
    NotDistributive(String),
    #[error("chain is not maximal: {0}")]
    NotMaximalChain(String),
    #[error("enumeration is not order preserving: {0}")]
    NotOrderPreserving(String),
    #[error("value vectors are not comparable: {0}")]
    IncomparableValues(String),
    #[error("valuation of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("valuation matrix is singular for chain {0}")]
    SingularValuation(String),
    #[error("invalid Grassmannian parameters d = {d}, n = {n}")]
    InvalidDimensions { d: usize, n: usize },
    #[error("invalid Pluecker index {0:?}")]
    InvalidIndex(Vec<usize>),
    #[error("elements {0} and {1} are comparable")]
    ComparablePair(String, String),
    #[error("straightening system for {0} has no unique solution")]
    SingularStraightening(String),
    #[error("the bottom element has no image under the pairing map")]
    PairingOfBottom,
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("polytope is not full dimensional (affine rank {rank} in dimension {dim})")]
    NotFullDimensional { rank: usize, dim: usize },
    #[error("point lies outside the polytope")]
    OutsidePolytope,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dilation factor must be at least 1")]
    BadDilation,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
