//! Extended-precision numerics used on the L-function path.

pub mod bernoulli;
pub mod complex;
pub mod dd;
pub mod gamma;

pub use complex::ComplexValue;
pub use dd::Dd;
