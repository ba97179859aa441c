//! The one-parameter family of quartics through the double point `s`,
//! indexed by the rotation angle `tau` of the cone axis.

use super::curve::{Trig, TrigPoly3};
use crate::error::{Error, Result};
use crate::exactalg::Scalar;
use crate::quadrics::{Quadric, SphereFocusConfig};

const ANGLE_TOL: f64 = 1e-12;

/// Family parameters over an exterior focus; `-r/gamma <= tan tau <= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyConfig {
    base: SphereFocusConfig<f64>,
    gamma: f64,
    tau: f64,
    ct: f64,
    st: f64,
}

impl FamilyConfig {
    pub fn new<S: Scalar>(base: &SphereFocusConfig<S>, tau: f64) -> Result<Self> {
        let (st, ct) = tau.sin_cos();
        Self::build(base, tau, ct, st)
    }

    /// From a direction `(cos tau, sin tau)`, normalized to unit length.
    pub fn from_cos_sin<S: Scalar>(base: &SphereFocusConfig<S>, ct: f64, st: f64) -> Result<Self> {
        let n = ct.hypot(st);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidConfig(
                "(cos tau, sin tau) must be a nonzero vector".into(),
            ));
        }
        Self::build(base, st.atan2(ct), ct / n, st / n)
    }

    fn build<S: Scalar>(base: &SphereFocusConfig<S>, tau: f64, ct: f64, st: f64) -> Result<Self> {
        base.require_exterior()?;
        let base = base.to_f64();
        let gamma = base.gamma_f64().expect("exterior");
        let lower = -base.r() / gamma;
        let tan_tau = st / ct;
        let slack = ANGLE_TOL * lower.abs().max(1.0);
        if !(ct > 0.0) || tan_tau < lower - slack || tan_tau > slack {
            return Err(Error::TauOutOfRange { tan_tau, lower });
        }
        Ok(Self {
            base,
            gamma,
            tau,
            ct,
            st,
        })
    }

    pub fn base(&self) -> &SphereFocusConfig<f64> {
        &self.base
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn cos_tau(&self) -> f64 {
        self.ct
    }

    pub fn sin_tau(&self) -> f64 {
        self.st
    }

    pub fn tan_tau(&self) -> f64 {
        self.st / self.ct
    }

    fn parts(&self) -> (f64, f64, f64, f64, f64) {
        (*self.base.m(), *self.base.r(), self.gamma, self.ct, self.st)
    }

    /// `gamma ct - r st` and `gamma st + r ct`.
    fn rotated(&self) -> (f64, f64) {
        let (_, r, g, ct, st) = self.parts();
        (g * ct - r * st, g * st + r * ct)
    }

    /// Unit axis `(gamma ct - r st, 0, gamma st + r ct) / m` of the cone.
    pub fn axis(&self) -> [f64; 3] {
        let (a1, a2) = self.rotated();
        let m = *self.base.m();
        [a1 / m, 0.0, a2 / m]
    }

    /// Radius `R` of the cross-section circle of the cone.
    pub fn radius(&self) -> Result<f64> {
        let (m, _, _, ct, st) = self.parts();
        let (a1, a2) = self.rotated();
        if a2.abs() <= ANGLE_TOL * m {
            return Err(Error::BoundaryDegenerate);
        }
        Ok((-st * a1 / (ct * a2)).max(0.0).sqrt())
    }

    /// The family member as a trigonometric curve on the sphere.
    pub fn profile(&self) -> Result<TrigPoly3> {
        let big_r = self.radius()?;
        let (m, r, g, ct, st) = self.parts();
        let (a1, a2) = self.rotated();
        let d = 1.0 + big_r * big_r;
        let r2 = big_r * big_r;
        let md = m * d;
        let mut t = TrigPoly3::zero();

        t.set(
            0,
            Trig::One,
            (-2.0 * r * ct * a2 + m * m + r * r + r2 * (m * m - r * r)) / md,
        );
        t.set(
            0,
            Trig::S,
            (4.0 * big_r * r * ct * a1 - 2.0 * big_r * r * g) / md,
        );
        t.set(0, Trig::S2, 2.0 * r * ct * a2 * r2 / md);

        t.set(1, Trig::C, 2.0 * big_r * r * st / d);
        t.set(1, Trig::CS, -2.0 * r2 * r * ct / d);

        t.set(
            2,
            Trig::One,
            r * (-g * (1.0 - r2) - 2.0 * r * ct * st + 2.0 * g * ct * ct) / md,
        );
        t.set(
            2,
            Trig::S,
            r * (4.0 * big_r * g * ct * st + 2.0 * big_r * r * (ct * ct - st * st)) / md,
        );
        t.set(2, Trig::S2, 2.0 * r * r2 * ct * (r * st - g * ct) / md);

        t.norm = ((g * ct * d - 2.0 * r * st) / (ct * d), 2.0 * r * big_r / d);
        Ok(t)
    }

    /// Residual of the norm affinity
    /// `norm ct (1 + R^2) = gamma ct (1 + R^2) - 2 r st + 2 r R ct sin u`.
    pub fn norm_affinity_residual(&self, t: &TrigPoly3, u: f64) -> Result<f64> {
        let big_r = self.radius()?;
        let (_, r, g, ct, st) = self.parts();
        let d = 1.0 + big_r * big_r;
        let p = t.eval(u);
        let norm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        Ok((norm * ct * d - (g * ct * d - 2.0 * r * st) - 2.0 * r * big_r * ct * u.sin()).abs())
    }

    /// The projection cone `L(tau)` from the focus, the parabolic cylinder
    /// `P(tau)` and, for `sin tau != 0`, the cone of revolution `K(tau)`.
    pub fn matrices(&self) -> FamilyMatrices {
        let (m, r, g, ct, st) = self.parts();
        let c2 = ct * ct - st * st;
        let sc = st * ct;
        let g2 = g * g;
        let r2 = r * r;

        let l_xz = -g * r * c2 + (r2 - g2) * sc;
        let l = Quadric::new(vec![
            vec![0.0, 0.0, 0.0, 0.0],
            vec![0.0, r2 * c2 + 2.0 * g * r * sc, 0.0, l_xz],
            vec![0.0, 0.0, m * m * ct * ct, 0.0],
            vec![0.0, l_xz, 0.0, g2 * c2 - 2.0 * g * r * sc],
        ])
        .expect("symmetric");

        let p_xz = (g2 - r2) * sc + r * g * c2;
        let p = Quadric::new(vec![
            vec![g2 * m * m * ct * ct, -m.powi(3) * ct * ct, 0.0, 0.0],
            vec![
                -m.powi(3) * ct * ct,
                g2 * c2 + m * m * st * st - 2.0 * r * g * sc,
                0.0,
                p_xz,
            ],
            vec![0.0, 0.0, 0.0, 0.0],
            vec![0.0, p_xz, 0.0, m * m * ct * ct - g2 * c2 + 2.0 * r * g * sc],
        ])
        .expect("symmetric");

        let k = (st.abs() > ANGLE_TOL).then(|| {
            let den = g * m * m * sc;
            let k_xz = -r * ((g2 - r2) * sc + g * r * c2) / den;
            Quadric::new(vec![
                vec![g2, -m, 0.0, 0.0],
                vec![
                    -m,
                    (g * (m * m + 2.0 * r2) * sc + r.powi(3) * c2) / den,
                    0.0,
                    k_xz,
                ],
                vec![0.0, 0.0, (g * st + r * ct) / (g * st), 0.0],
                vec![0.0, k_xz, 0.0, (g * (g2 - r2) * sc + r * g2 * c2) / den],
            ])
            .expect("symmetric")
        });
        FamilyMatrices { l, p, k }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyMatrices {
    pub l: Quadric<f64>,
    pub p: Quadric<f64>,
    pub k: Option<Quadric<f64>>,
}

pub fn family_axis(fc: &FamilyConfig) -> [f64; 3] {
    fc.axis()
}

pub fn family_radius(fc: &FamilyConfig) -> Result<f64> {
    fc.radius()
}

pub fn family_profile(fc: &FamilyConfig) -> Result<TrigPoly3> {
    fc.profile()
}

pub fn family_matrices(fc: &FamilyConfig) -> FamilyMatrices {
    fc.matrices()
}

/// The angle `tau* in (-pi/2, 0]` with `cos 2 tau* = gamma / m` and
/// `sin 2 tau* = -r / m`, i.e. `tan tau* = -r / (m + gamma)`.
pub fn recover_canonical_tau<S: Scalar>(cfg: &SphereFocusConfig<S>) -> Result<f64> {
    cfg.require_exterior()?;
    let c = cfg.to_f64();
    let g = c.gamma_f64().expect("exterior");
    Ok((-c.r() / (c.m() + g)).atan())
}
