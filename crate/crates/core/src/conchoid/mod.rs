//! Rational polar representations of spheres and their conchoids.

mod curve;
mod family;
mod profile;
mod surface;
mod universal;

pub use curve::{RationalCurve3, Trig, TrigPoly3};
pub use family::{
    family_axis, family_matrices, family_profile, family_radius, recover_canonical_tau,
    FamilyConfig, FamilyMatrices,
};
pub use profile::{
    concentric_profile, conic_radius_poly, double_point, on_sphere_profile, quartic_profile,
    quartic_profile_trig, radius_origin_on_sphere, reparam_w, viviani_limit,
    viviani_shifted_profile,
};
pub use surface::{
    conchoid_surfaces, implicit_sextic_relative_residual, implicit_sextic_residual,
    rational_circle, surface_polar, ConchoidPair, PolarSurface, SurfaceKind,
};
pub use universal::{
    cone_distance_norm, universal_conchoid_param, SqrtTwoMultiple, UniversalInput, UniversalParam,
};
