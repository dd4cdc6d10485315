//! Restriction, induction, free modules, truncations, geometric fixed points
//! and the E₁-page ring data.

mod e1;
mod induction;
mod truncation;

pub use e1::{e1_page, find_section, transfers_surjective, transfers_zero, E1Entry, E1PageDescriptor};
pub use induction::{free_generator, free_module, induce_mackey, restrict_green, restrict_mackey, yoneda_map};
pub use truncation::{
    brutal_green, brutal_truncation, geometric_fixed_points, geometric_fixed_points_green,
    geometric_fixed_points_green_iter, geometric_fixed_points_green_with_proj, geometric_fixed_points_iter,
    geometric_fixed_points_with_proj, phi_ring, quotient_ring, ring_name, tau_geq_1, tau_green, tau_module, PhiRing,
};
