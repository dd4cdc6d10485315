//! Exact arithmetic: coefficient rings, matrices and their normal forms,
//! finitely presented modules, and based rings.

pub mod based_ring;
pub mod coeff;
pub mod fpmodule;
pub mod gf;
pub mod linalg;
pub mod matrix;
pub mod snf;

pub use based_ring::{based_ring_check, BasedRing};
pub use coeff::{Coeff, Integers};
pub use fpmodule::{from_relations, map_kernel, module_subquotient, quotient, submodule, FpModule, Presented, Sub};
pub use gf::{default_modulus, galois_trace, gf_make, is_prime, GaloisField};
pub use matrix::Matrix;
pub use snf::{smith_normal_form, SmithForm};
