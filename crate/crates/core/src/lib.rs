pub mod cache;
pub mod composition;
pub mod error;
pub mod expansion;
pub mod jack;
pub mod linalg;
pub mod macdonald;
pub mod pieri;
pub mod poly;
pub mod qt;
pub mod serial;
pub mod subsets;
pub mod verify;

pub use composition::{ColengthConvention, Composition, DiagramCell};
pub use error::{CoreError, Result};
pub use expansion::{Basis, Expansion, ParamsKind};
pub use macdonald::{Macdonald, PolyStore};
pub use pieri::PieriTerm;
pub use poly::LaurentPoly;
pub use qt::{Params, QTScalar, SParamScalar, Scalar};
pub use subsets::{maximal_subsets, IndexSet};
