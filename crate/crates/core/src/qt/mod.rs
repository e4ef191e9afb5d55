//! The coefficient field `Q(q, t)` and its specializations.

mod bpoly;
mod parse;
mod qtscalar;
mod scalar;
mod sparam;
mod upoly;

pub use bpoly::BPoly;
pub use qtscalar::QTScalar;
pub use scalar::{Params, Scalar};
pub use sparam::SParamScalar;
pub use upoly::UPoly;
