//! The concrete quadrics and pencils attached to a sphere and a focus.
//!
//! In R^4 the sphere lifts to the w-parallel cylinder `A` and the distance
//! condition becomes the cone `D: x^2 + y^2 + z^2 = w^2`; points of `A ∩ D`
//! project to points of the sphere whose distance to the origin is `w`.
//! In R^3 the carrier quartic is the base locus of the pencil spanned by the
//! sphere `F` and the projection cone `K` from the curve's double point.

use super::config::SphereFocusConfig;
use super::pencil::Pencil;
use super::quadric::Quadric;
use crate::error::{Error, Result};
use crate::exactalg::{Scalar, FLOAT_EPS};

/// The sphere `F` as a 4x4 matrix on `(1, x, y, z)`.
pub fn sphere_quadric<S: Scalar>(cfg: &SphereFocusConfig<S>) -> Quadric<S> {
    let m = cfg.m().clone();
    let mut f = Quadric::diagonal(vec![cfg.gamma_sq().clone(), S::one(), S::one(), S::one()]);
    f.set_sym(0, 1, -m);
    f
}

/// The cone `D: x^2 + y^2 + z^2 - w^2 = 0` on `(1, x, y, z, w)`.
pub fn distance_cone_r4<S: Scalar>() -> Quadric<S> {
    Quadric::diagonal(vec![S::zero(), S::one(), S::one(), S::one(), -S::one()])
}

/// The cylinder `A` over the sphere with rulings parallel to `w`.
pub fn sphere_cylinder_r4<S: Scalar>(cfg: &SphereFocusConfig<S>) -> Quadric<S> {
    let mut a = Quadric::diagonal(vec![
        cfg.gamma_sq().clone(),
        S::one(),
        S::one(),
        S::one(),
        S::zero(),
    ]);
    a.set_sym(0, 1, -cfg.m().clone());
    a
}

/// The pencil `A + t D` in R^4.
pub fn build_r4_pencil<S: Scalar>(cfg: &SphereFocusConfig<S>) -> Result<Pencil<S>> {
    cfg.require_generic()?;
    Pencil::new(sphere_cylinder_r4(cfg), distance_cone_r4())
}

/// `-(1 + t)^2 t (gamma^2 t - r^2)`, the closed form of `det(A + t D)`.
pub fn r4_charpoly_closed_form<S: Scalar>(cfg: &SphereFocusConfig<S>) -> crate::exactalg::Poly<S> {
    use crate::exactalg::Poly;
    let one_plus_t = Poly::new(vec![S::one(), S::one()]);
    let t = Poly::x();
    let last = Poly::new(vec![-cfg.r().square(), cfg.gamma_sq().clone()]);
    -(one_plus_t.pow(2) * t * last)
}

/// The two further singular members of `A + t D`.
#[derive(Clone, Debug, PartialEq)]
pub struct R4SingularQuadrics<S> {
    /// Parabolic cylinder `w^2 - 2 m x + m^2 - r^2 = 0` at `t = -1`.
    pub r_cyl: Quadric<S>,
    /// Cone at `t = r^2 / gamma^2` with vertex `O'`.
    pub s_cone: Quadric<S>,
    /// `r^2 / gamma^2`.
    pub t2: S,
    /// `((m^2 - r^2) / m, 0, 0, 0)`.
    pub vertex: [S; 4],
}

pub fn r4_singular_quadrics<S: Scalar>(
    cfg: &SphereFocusConfig<S>,
) -> Result<R4SingularQuadrics<S>> {
    let pencil = build_r4_pencil(cfg)?;
    let t2 = cfg.r().square() / cfg.gamma_sq().clone();
    let r_cyl = pencil.member(&-S::one());
    let s_cone = pencil.member(&t2);
    let [o, _, _] = inverse_point(cfg)?;
    Ok(R4SingularQuadrics {
        r_cyl,
        s_cone,
        t2,
        vertex: [o, S::zero(), S::zero(), S::zero()],
    })
}

/// The R^3 pencil matrices: sphere `F`, projection cone `K` from the double
/// point, cone `L` with vertex at the focus, and the y-parallel parabolic
/// cylinder `P`.
#[derive(Clone, Debug, PartialEq)]
pub struct R3PencilMatrices<S> {
    pub f: Quadric<S>,
    pub k: Quadric<S>,
    pub l: Quadric<S>,
    pub p: Quadric<S>,
}

impl<S: Scalar> R3PencilMatrices<S> {
    pub fn pencil_fk(&self) -> Pencil<S> {
        Pencil::new(self.f.clone(), self.k.clone()).expect("4x4 matrices")
    }
}

pub fn build_r3_pencil_matrices<S: Scalar>(
    cfg: &SphereFocusConfig<S>,
) -> Result<R3PencilMatrices<S>> {
    cfg.require_exterior()?;
    let g = cfg.gamma()?;
    let m = cfg.m().clone();
    let r = cfg.r().clone();
    let z = S::zero;
    let mpg = m.clone() + g.clone();
    let g2 = g.square();

    let k = Quadric::new(vec![
        vec![g2.clone() * g.clone(), -(g.clone() * m.clone()), z(), z()],
        vec![-(g.clone() * m.clone()), g.clone(), z(), r.clone()],
        vec![z(), z(), -m.clone(), z()],
        vec![z(), r.clone(), z(), -g.clone()],
    ])?;
    let l = Quadric::new(vec![
        vec![z(), z(), z(), z()],
        vec![z(), z(), z(), -r.clone()],
        vec![z(), z(), mpg.clone(), z()],
        vec![z(), -r.clone(), z(), S::two() * g.clone()],
    ])?;
    let p = Quadric::new(vec![
        vec![g2 * mpg.clone(), -(m.clone() * mpg.clone()), z(), z()],
        vec![-(m.clone() * mpg.clone()), mpg, z(), r.clone()],
        vec![z(), z(), z(), z()],
        vec![z(), r, z(), m - g],
    ])?;
    Ok(R3PencilMatrices {
        f: sphere_quadric(cfg),
        k,
        l,
        p,
    })
}

/// The inverse point `O' = ((m^2 - r^2) / m, 0, 0)` of the focus with
/// respect to the sphere.
pub fn inverse_point<S: Scalar>(cfg: &SphereFocusConfig<S>) -> Result<[S; 3]> {
    if cfg.m().is_zero() {
        return Err(Error::FocusAtCenter);
    }
    Ok([
        cfg.gamma_sq().clone() / cfg.m().clone(),
        S::zero(),
        S::zero(),
    ])
}

/// Lifts the polar point `rho * k` to `rho * (k, 1)` on the cone `D`.
pub fn cone_lift<S: Scalar>(rho: &S, k: &[S; 3]) -> Result<[S; 4]> {
    let norm_sq = k[0].square() + k[1].square() + k[2].square();
    if !(norm_sq.clone() - S::one()).near_zero(1.0) {
        return Err(Error::NonUnitDirection(norm_sq.to_f64().sqrt()));
    }
    Ok([
        rho.clone() * k[0].clone(),
        rho.clone() * k[1].clone(),
        rho.clone() * k[2].clone(),
        rho.clone(),
    ])
}

/// Default root-search window for the pencils of `cfg`; wide enough to
/// contain `t = -1`, `0`, `r^2/gamma^2`, `1/m` and `-1/gamma`.
pub fn default_root_interval<S: Scalar>(cfg: &SphereFocusConfig<S>) -> (f64, f64) {
    let c = cfg.to_f64();
    let (m, r) = (*c.m(), *c.r());
    let g2 = c.gamma_sq().abs();
    let mut scale = 1f64.max(r * r / g2);
    if m > 0.0 {
        scale = scale.max(1.0 / m);
    }
    if g2 > 0.0 {
        scale = scale.max(1.0 / g2.sqrt());
    }
    (-10.0 * scale, 10.0 * scale)
}

/// Distance from the origin to the two intersections of the ray through
/// `dir` with the sphere, if it meets it.
pub fn ray_hits(cfg: &SphereFocusConfig<f64>, dir: &[f64; 3]) -> Option<(f64, f64)> {
    let n = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
    if n <= FLOAT_EPS {
        return None;
    }
    let d = [dir[0] / n, dir[1] / n, dir[2] / n];
    // |s d - c|^2 = r^2  ->  s^2 - 2 m d_x s + gamma^2 = 0
    let (m, g2) = (*cfg.m(), *cfg.gamma_sq());
    let half_b = m * d[0];
    let disc = half_b * half_b - g2;
    if disc < 0.0 {
        return None;
    }
    let root = disc.sqrt();
    Some((half_b - root, half_b + root))
}
