//! Green functors, their modules, twisted group rings, box products and base change.

mod boxprod;
mod constructions;
mod functor;
mod twisted;

pub use boxprod::{
    base_change, base_change_cp, base_change_map, box_product, box_product_cp, box_product_general, BoxProduct,
};
pub use constructions::{
    burnside_green, burnside_green_over, char_example, check_ring_automorphism, constant_green, fixed_point_green,
    fixed_point_module, fp_galois, galois_based_ring,
};
pub use functor::{
    check_green, check_green_map, check_green_module, green_submodule, module_hom_basis, restrict_scalars,
    GreenFunctor, GreenMap, GreenModule,
};
pub use twisted::{level_twisted_ring, twisted_group_ring, TwistedGroupRing};
