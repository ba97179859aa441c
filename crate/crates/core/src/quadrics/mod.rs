//! Symmetric quadric matrices, pencils and the sphere/focus constructions.

mod config;
mod constructions;
mod pencil;
mod quadric;

pub use config::{Regime, SphereFocusConfig};
pub use constructions::{
    build_r3_pencil_matrices, build_r4_pencil, cone_lift, default_root_interval, distance_cone_r4,
    inverse_point, r4_charpoly_closed_form, r4_singular_quadrics, ray_hits, sphere_cylinder_r4,
    sphere_quadric, R3PencilMatrices, R4SingularQuadrics,
};
pub use pencil::{Pencil, PencilReport};
pub use quadric::Quadric;
