//! Groebner bases, syzygies, free resolutions, local standard bases and
//! plane-curve invariants over `QQ` and prime fields.

pub mod error;
pub mod field;
pub mod gbasis;
pub mod idealops;
pub mod localstd;
pub mod modsyz;
pub mod planecurves;
pub mod poly;
pub mod resolutions;
pub mod session;

pub use error::{Error, Result};
pub use field::{Coeff, Field};
pub use gbasis::{DivisionResult, GroebnerBasis, Ideal, ModuleGroebnerBasis};
pub use localstd::{LocalDimension, LocalQuotientResult};
pub use planecurves::{Divisor, PlaneCurve, ProjPoint};
pub use poly::{FreeModElem, ModuleOrdering, Monomial, MonomialOrdering, Poly, PolyMatrix, PolyRing, Ring};
pub use resolutions::{BettiTable, GradedFreeResolution, HilbertData};
pub use session::{parse_session, run_session, EvalOptions, ResultDocument, ResultEntry, ResultValue};
