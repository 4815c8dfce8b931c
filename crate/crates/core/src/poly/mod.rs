//! Polynomials, monomial orderings, free modules and matrices.

pub mod module;
pub mod monomial;
pub mod ordering;
#[allow(clippy::module_inception)]
pub mod poly;
pub mod ring;

pub use module::{FreeModElem, PolyMatrix};
pub use monomial::Monomial;
pub use ordering::{ModuleOrdering, MonomialOrdering, OrderingBlock, SchreyerOrdering};
pub use poly::Poly;
pub use ring::{PolyRing, Ring};
