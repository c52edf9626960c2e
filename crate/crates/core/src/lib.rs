//! Exact computations on plane line arrangements: weak combinatorics,
//! Jacobian syzygies, and the numerical census of candidate arrangements.

pub mod arrangement;
pub mod census;
pub mod field;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod report;
pub mod syzygy;

pub use arrangement::{Arrangement, ArrangementError, DynArrangement, WeakCombinatorics};
pub use field::{Field, FieldDescriptor, FieldError, FieldScalar, Rational};
pub use poly::HomPoly;
pub use syzygy::{CurveClass, SyzygyError, SyzygyProfile};
