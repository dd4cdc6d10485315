//! Mackey functors for `C_{p^n}`: data, axioms, constructions, morphisms and isomorphism tests.

mod constructions;
mod functor;
mod iso;
mod morphism;

pub use constructions::{
    burnside_mackey, burnside_mackey_over, constant_mackey, fixed_point_mackey, fixed_point_with_bases,
    twisted_burnside_c5,
};
pub use functor::{check_axioms, check_cohomological, evaluate_at_gset, MackeyFunctor};
pub use iso::{is_isomorphic, lll, IsoOptions, IsoVerdict, NonIsoCertificate};
pub use morphism::{
    check_morphism, cokernel_functor, hom_basis, image_functor, invert, kernel_functor, quotient_functor, saturate,
    subfunctor, HomSystem, MackeyMorphism,
};
