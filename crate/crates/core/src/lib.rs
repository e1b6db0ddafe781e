//! Exact computations with monomial ideals: decompositions, depth, prime
//! filtrations and Stanley decompositions of multigraded modules `J/I`.

pub mod decomposition;
pub mod depth;
pub mod error;
pub mod filtration;
pub mod linalg;
pub mod monomial;
pub mod polarize;
pub mod random;
pub mod ring;
pub mod stanley;
pub mod syntax;

pub use decomposition::{MonomialPrime, PrimaryComponent, PrimaryDecomposition};
pub use depth::{DepthReport, QuotientModule};
pub use error::{Error, Result};
pub use monomial::{DegreeProfile, Monomial, MonomialIdeal};
pub use polarize::IdealPair;
pub use ring::{RingContext, VarSet};
