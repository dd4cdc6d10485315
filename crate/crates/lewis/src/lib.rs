//! Exact computations with Mackey functors, Green functors and their modules
//! for cyclic groups of prime power order.

pub mod cyclic;
pub mod error;
pub mod exactalg;
pub mod functors;
pub mod green;
pub mod kzero;
pub mod mackey;
pub mod report;

pub use error::{Error, Result};
pub use exactalg::{BasedRing, Coeff, FpModule, GaloisField, Integers, Matrix, SmithForm};
pub use report::CheckReport;
