//! Meridian curves of the sphere whose distance to the focus is rational.

use super::curve::{RationalCurve3, Trig, TrigPoly3};
use crate::error::{Error, Result};
use crate::exactalg::{Poly, RatFunc, Scalar};
use crate::quadrics::{Regime, SphereFocusConfig};

fn ratfunc<S: Scalar>(num: Vec<S>, den: Vec<S>) -> RatFunc<S> {
    RatFunc::normalize(Poly::new(num), Poly::new(den)).expect("nonzero denominator")
}

fn exact_sqrt<S: Scalar>(value: &S, name: &str) -> Result<S> {
    value.sqrt().ok_or_else(|| {
        Error::ExactnessUnavailable(format!(
            "{name} = {value} is not a rational square; use float mode"
        ))
    })
}

/// Radius `2 m k_1` of the sphere through the focus in direction `k`.
pub fn radius_origin_on_sphere<S: Scalar>(cfg: &SphereFocusConfig<S>, k: &[S; 3]) -> Result<S> {
    if cfg.regime() != Regime::OnSphere {
        return Err(Error::NotOnSphereCase);
    }
    let norm_sq = k[0].square() + k[1].square() + k[2].square();
    if !(norm_sq.clone() - S::one()).near_zero(1.0) {
        return Err(Error::NonUnitDirection(norm_sq.to_f64().sqrt()));
    }
    Ok(S::two() * cfg.m().clone() * k[0].clone())
}

/// `w(u) = ((m + r) u^2 + (m - r)) / (1 + u^2)`, ranging over `[m - r, m + r)`.
pub fn reparam_w<S: Scalar>(cfg: &SphereFocusConfig<S>) -> Result<RatFunc<S>> {
    cfg.require_exterior()?;
    Ok(ratfunc(
        vec![cfg.b(), S::zero(), cfg.a()],
        vec![S::one(), S::zero(), S::one()],
    ))
}

/// `p(w) = (w^2 - a^2)(w^2 - b^2)`; the circle of points of the sphere at
/// distance `w` from the focus has squared radius `-p(w) / (4 m^2)`.
pub fn conic_radius_poly<S: Scalar>(cfg: &SphereFocusConfig<S>) -> Poly<S> {
    let a2 = cfg.a().square();
    let b2 = cfg.b().square();
    Poly::new(vec![-a2, S::zero(), S::one()]) * Poly::new(vec![-b2, S::zero(), S::one()])
}

/// The rational quartic `c(u)` on the sphere with `||c(u)|| = w(u)`.
///
/// Exact mode needs `m`, `m + r` and `m - r` to be rational squares. An
/// interior focus is handled from the inverse point, which is exterior, and
/// the curve is translated back with its norm rescaled by `m / r`.
pub fn quartic_profile<S: Scalar>(cfg: &SphereFocusConfig<S>) -> Result<RationalCurve3<S>> {
    cfg.require_generic()?;
    if cfg.regime() == Regime::Interior {
        let aux = cfg.exchanged()?;
        let c = quartic_profile(&aux)?;
        let shift = cfg.gamma_sq().clone() / cfg.m().clone();
        let ratio = cfg.m().clone() / cfg.r().clone();
        return Ok(RationalCurve3::new(
            &c.x + &RatFunc::constant(shift),
            c.y,
            c.z,
            c.norm.scale(&ratio),
        ));
    }
    let (m, r) = (cfg.m().clone(), cfg.r().clone());
    let (a, b) = (cfg.a(), cfg.b());
    let sm = exact_sqrt(&m, "m")?;
    let sa = exact_sqrt(&a, "m + r")?;
    let sb = exact_sqrt(&b, "m - r")?;
    let gamma = sa.clone() * sb.clone();
    let z = S::zero;
    let two_r = S::two() * r.clone();

    let den = vec![m.clone(), z(), S::two() * m.clone(), z(), m.clone()];
    let x = ratfunc(
        vec![
            m.clone() * b.clone(),
            z(),
            S::two() * cfg.gamma_sq().clone(),
            z(),
            m.clone() * a.clone(),
        ],
        den.clone(),
    );
    let y = ratfunc(
        vec![
            z(),
            -(two_r.clone() * sm.clone() * sb),
            z(),
            two_r.clone() * sm * sa,
        ],
        den.clone(),
    );
    let zc = ratfunc(vec![z(), z(), two_r * (m + gamma)], den);
    let norm = ratfunc(vec![b, z(), a], vec![S::one(), z(), S::one()]);
    Ok(RationalCurve3::new(x, y, zc, norm))
}

/// The same quartic in trigonometric form, with norm `m + r sin t`.
pub fn quartic_profile_trig<S: Scalar>(cfg: &SphereFocusConfig<S>) -> Result<TrigPoly3> {
    cfg.require_exterior()?;
    let c = cfg.to_f64();
    let (m, r) = (*c.m(), *c.r());
    let g = c.gamma_f64().expect("exterior");
    let k = (2.0 * m * (m + g)).sqrt() / (2.0 * m);
    let mut t = TrigPoly3::zero();
    t.set(0, Trig::One, (m * m + g * g) / (2.0 * m));
    t.set(0, Trig::S, r);
    t.set(0, Trig::S2, r * r / (2.0 * m));
    t.set(1, Trig::C, k * (g - m));
    t.set(1, Trig::CS, -k * r);
    t.set(2, Trig::C2, r * (m + g) / (2.0 * m));
    t.norm = (m, r);
    Ok(t)
}

/// The double point `s = (gamma^2, 0, r gamma) / m` of the quartic.
pub fn double_point<S: Scalar>(cfg: &SphereFocusConfig<S>) -> Result<[S; 3]> {
    cfg.require_exterior()?;
    let g = cfg.gamma()?;
    let m = cfg.m().clone();
    Ok([
        cfg.gamma_sq().clone() / m.clone(),
        S::zero(),
        cfg.r().clone() * g / m,
    ])
}

/// The trigonometric quartic seen from the inverse point `O'`; its norm is
/// the distance to `O'`, `r + (r^2 / m) sin t`.
pub fn viviani_shifted_profile<S: Scalar>(cfg: &SphereFocusConfig<S>) -> Result<TrigPoly3> {
    let mut t = quartic_profile_trig(cfg)?;
    let c = cfg.to_f64();
    let (m, r) = (*c.m(), *c.r());
    t = t.translated([-c.gamma_sq() / m, 0.0, 0.0]);
    t.norm = (r, r * r / m);
    Ok(t)
}

/// Viviani's curve `(r sin t, -r sin t cos t, r cos^2 t)`.
pub fn viviani_limit(r: f64) -> Result<TrigPoly3> {
    if !(r > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "radius must be positive, got r = {r}"
        )));
    }
    let mut t = TrigPoly3::zero();
    t.set(0, Trig::S, r);
    t.set(1, Trig::CS, -r);
    t.set(2, Trig::C2, r);
    t.norm = (r, 0.0);
    Ok(t)
}

/// Meridian through the focus when it lies on the sphere: the unit
/// direction `(2u^2, 0, 1 - u^4) / (1 + u^4)` scaled by `2 m k_1`.
pub fn on_sphere_profile<S: Scalar>(
    cfg: &SphereFocusConfig<S>,
) -> Result<(RationalCurve3<S>, [RatFunc<S>; 3])> {
    if cfg.regime() != Regime::OnSphere {
        return Err(Error::NotOnSphereCase);
    }
    let m = cfg.m().clone();
    let z = S::zero;
    let one = S::one;
    let q = vec![one(), z(), z(), z(), one()];
    let q2 = vec![one(), z(), z(), z(), S::two(), z(), z(), z(), one()];
    let dir = [
        ratfunc(vec![z(), z(), S::two()], q.clone()),
        RatFunc::zero(),
        ratfunc(vec![one(), z(), z(), z(), -one()], q.clone()),
    ];
    let four_m = S::from_i64(4) * m;
    let rho = ratfunc(vec![z(), z(), four_m.clone()], q);
    let curve = RationalCurve3::new(
        ratfunc(
            vec![z(), z(), z(), z(), S::two() * four_m.clone()],
            q2.clone(),
        ),
        RatFunc::zero(),
        ratfunc(vec![z(), z(), four_m.clone(), z(), z(), z(), -four_m], q2),
        rho,
    );
    Ok((curve, dir))
}

/// Meridian half-circle `(r (1 - u^2), 0, 2 r u) / (1 + u^2)` of a sphere
/// centered at the focus.
pub fn concentric_profile<S: Scalar>(r: &S) -> (RationalCurve3<S>, [RatFunc<S>; 3]) {
    let z = S::zero;
    let one = S::one;
    let den = vec![one(), z(), one()];
    let dir = [
        ratfunc(vec![one(), z(), -one()], den.clone()),
        RatFunc::zero(),
        ratfunc(vec![z(), S::two()], den),
    ];
    let curve = RationalCurve3::new(
        dir[0].scale(r),
        RatFunc::zero(),
        dir[2].scale(r),
        RatFunc::constant(r.clone()),
    );
    (curve, dir)
}
