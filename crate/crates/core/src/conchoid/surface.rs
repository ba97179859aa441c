//! Polar surfaces of revolution about the x-axis and their conchoids.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use super::curve::RationalCurve3;
use super::profile::{concentric_profile, on_sphere_profile, quartic_profile};
use crate::error::Result;
use crate::exactalg::{BiPoly, BiRatFunc, Poly, RatFunc, Scalar};
use crate::quadrics::{Regime, SphereFocusConfig};

/// Which meridian construction a surface was built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    /// Rotated quartic `c(u)` (exterior or interior focus).
    Quartic,
    /// Focus on the sphere, radius `2 m k_1`.
    OnSphere,
    /// Focus at the center, constant radius.
    Concentric,
}

/// `f(u, v) = (rho(u) + d) k(u, v)` where `k` rotates the unit meridian
/// direction `k(u, 0)` about the x-axis by the rational circle in `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarSurface<S> {
    pub profile: RationalCurve3<S>,
    pub direction: [RatFunc<S>; 3],
    pub offset: S,
    pub kind: SurfaceKind,
    /// Set for the two concentric spheres of a focus at the center, where the
    /// conchoid splits into components that are not rotations of each other.
    pub reducible: bool,
    pub config: SphereFocusConfig<S>,
}

/// `((1 - v^2) / (1 + v^2), 2 v / (1 + v^2))`.
pub fn rational_circle<S: Scalar>() -> (RatFunc<S>, RatFunc<S>) {
    let den = Poly::new(vec![S::one(), S::zero(), S::one()]);
    (
        RatFunc::normalize(Poly::new(vec![S::one(), S::zero(), -S::one()]), den.clone())
            .expect("nonzero"),
        RatFunc::normalize(Poly::new(vec![S::zero(), S::two()]), den).expect("nonzero"),
    )
}

impl<S: Scalar> PolarSurface<S> {
    pub fn radius(&self) -> &RatFunc<S> {
        &self.profile.norm
    }

    /// Range of `phi` with `u = tan phi` that sweeps the meridian once.
    pub fn meridian_span(&self) -> (f64, f64) {
        match self.kind {
            SurfaceKind::OnSphere => (0.0, FRAC_PI_4),
            _ => (0.0, FRAC_PI_2),
        }
    }

    /// Radius `rho + d` at the projective parameter `u = p / q`.
    pub fn scaled_radius_homogeneous(&self, p: &S, q: &S) -> Result<S> {
        Ok(self.profile.eval_norm_homogeneous(p, q)? + self.offset.clone())
    }

    fn direction_homogeneous(&self, p: &S, q: &S) -> Result<[S; 3]> {
        Ok([
            self.direction[0].eval_homogeneous(p, q)?,
            self.direction[1].eval_homogeneous(p, q)?,
            self.direction[2].eval_homogeneous(p, q)?,
        ])
    }

    /// Rotation of `(x, y, z)` about the x-axis by the angle with
    /// `(cos, sin) = (cv, sv)`.
    fn rotate(p: [S; 3], cv: &S, sv: &S) -> [S; 3] {
        let [x, y, z] = p;
        [
            x,
            y.clone() * cv.clone() - z.clone() * sv.clone(),
            y * sv.clone() + z * cv.clone(),
        ]
    }

    /// Unit direction `k(u, v)`.
    pub fn direction_at(&self, u: &S, v: &S) -> Result<[S; 3]> {
        self.direction_at_homogeneous(u, &S::one(), v)
    }

    fn direction_at_homogeneous(&self, p: &S, q: &S, v: &S) -> Result<[S; 3]> {
        let (cv, sv) = rational_circle::<S>();
        let k = self.direction_homogeneous(p, q)?;
        Ok(Self::rotate(k, &cv.eval(v)?, &sv.eval(v)?))
    }

    /// The point `f(u, v)`.
    pub fn eval(&self, u: &S, v: &S) -> Result<[S; 3]> {
        self.eval_homogeneous(u, &S::one(), v)
    }

    /// The point at `u = p / q`, which may be `u = ∞`.
    pub fn eval_homogeneous(&self, p: &S, q: &S, v: &S) -> Result<[S; 3]> {
        let rho = self.scaled_radius_homogeneous(p, q)?;
        let k = self.direction_at_homogeneous(p, q, v)?;
        Ok(k.map(|c| rho.clone() * c))
    }

    /// The point at meridian angle `phi` (`u = tan phi`) and rotation angle
    /// `theta`, evaluated as floats. Used for tessellation.
    pub fn eval_angles(&self, phi: f64, theta: f64) -> Result<[f64; 3]> {
        let f = self.to_f64();
        let (s, c) = phi.sin_cos();
        let rho = f.scaled_radius_homogeneous(&s, &c)?;
        let k = f.direction_homogeneous(&s, &c)?;
        let (sv, cv) = theta.sin_cos();
        Ok(PolarSurface::<f64>::rotate(k, &cv, &sv).map(|x| rho * x))
    }

    /// The components of `k(u, v)` as bivariate rational functions.
    pub fn direction_bivariate(&self) -> [BiRatFunc<S>; 3] {
        let (cv, sv) = rational_circle::<S>();
        let (cv, sv) = (BiRatFunc::from_v(&cv), BiRatFunc::from_v(&sv));
        let [dx, dy, dz] = self.direction.clone().map(|d| BiRatFunc::from_u(&d));
        [dx, &(&dy * &cv) - &(&dz * &sv), &(&dy * &sv) + &(&dz * &cv)]
    }

    /// The components of `f(u, v)` as bivariate rational functions.
    pub fn bivariate(&self) -> [BiRatFunc<S>; 3] {
        let rho = self.scaled_radius_bivariate();
        self.direction_bivariate().map(|k| &rho * &k)
    }

    fn scaled_radius_bivariate(&self) -> BiRatFunc<S> {
        &BiRatFunc::from_u(self.radius())
            + &BiRatFunc::from_poly(BiPoly::constant(self.offset.clone()))
    }

    /// `||k||^2 = 1` and `||f||^2 = (rho + d)^2` as bivariate identities.
    pub fn polar_identity_holds(&self) -> bool {
        let sq = |c: &[BiRatFunc<S>; 3]| &(&c[0].pow(2) + &c[1].pow(2)) + &c[2].pow(2);
        let one = BiRatFunc::from_poly(BiPoly::one());
        sq(&self.direction_bivariate()).identity_equal(&one)
            && sq(&self.bivariate()).identity_equal(&self.scaled_radius_bivariate().pow(2))
    }

    /// Defining residual at `p`: the sphere equation for the base surface,
    /// and for an offset surface the sphere equation at the foot point
    /// `p -+ d p / ||p||`, minimized over the two signs.
    pub fn residual(&self, p: &[f64; 3]) -> f64 {
        let cfg = self.config.to_f64();
        let d = self.offset.to_f64();
        if d == 0.0 {
            return cfg.sphere_residual(p).abs();
        }
        let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        if n == 0.0 {
            // the focus belongs to the conchoid whenever rho = |d| is attained
            return 0.0;
        }
        [1.0, -1.0]
            .iter()
            .map(|sign| {
                let t = 1.0 - sign * d / n;
                cfg.sphere_residual(&p.map(|x| x * t)).abs()
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn with_offset(&self, offset: S) -> Self {
        Self {
            offset,
            ..self.clone()
        }
    }

    pub fn to_f64(&self) -> PolarSurface<f64> {
        PolarSurface {
            profile: self.profile.to_f64(),
            direction: self.direction.clone().map(|d| d.to_f64()),
            offset: self.offset.to_f64(),
            kind: self.kind,
            reducible: self.reducible,
            config: self.config.to_f64(),
        }
    }
}

/// The sphere as a rational polar surface: the rotated quartic for a
/// generic focus, and the dedicated meridians when the focus lies on the
/// sphere or at its center.
pub fn surface_polar<S: Scalar>(cfg: &SphereFocusConfig<S>) -> Result<PolarSurface<S>> {
    let (profile, direction, kind) = match cfg.regime() {
        Regime::Concentric => {
            let (c, d) = concentric_profile(cfg.r());
            (c, d, SurfaceKind::Concentric)
        }
        Regime::OnSphere => {
            let (c, d) = on_sphere_profile(cfg)?;
            (c, d, SurfaceKind::OnSphere)
        }
        Regime::Exterior | Regime::Interior => {
            let c = quartic_profile(cfg)?;
            let d = [&c.x / &c.norm, &c.y / &c.norm, &c.z / &c.norm];
            (c, d, SurfaceKind::Quartic)
        }
    };
    Ok(PolarSurface {
        profile,
        direction,
        offset: S::zero(),
        kind,
        reducible: false,
        config: cfg.clone(),
    })
}

/// The two conchoid components `g1 = (rho + d) k` and `g2 = (rho - d) k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConchoidPair<S> {
    pub g1: PolarSurface<S>,
    pub g2: PolarSurface<S>,
}

/// Conchoid of the sphere at distance `|d|`; a negative `d` gives the same
/// pair since `g1` and `g2` only swap.
pub fn conchoid_surfaces<S: Scalar>(cfg: &SphereFocusConfig<S>, d: &S) -> Result<ConchoidPair<S>> {
    let base = surface_polar(cfg)?;
    let d = d.abs();
    let mut g1 = base.with_offset(d.clone());
    let mut g2 = base.with_offset(-d);
    if base.kind == SurfaceKind::Concentric {
        g1.reducible = true;
        g2.reducible = true;
    }
    Ok(ConchoidPair { g1, g2 })
}

fn sextic_terms<S: Scalar>(p: &[S; 3], d: &S) -> [S; 3] {
    let [x, y, z] = p.clone();
    let n2 = x.square() + y.square() + z.square();
    let i = S::from_i64;
    let d2 = d.square();
    let t1 = n2.clone() * (i(4) * n2.clone() - i(12) * x.clone() + i(5)).square();
    let t2 = d2.clone()
        * (i(40) * n2.clone() - i(144) * x.square() + i(96) * x * n2.clone() - i(32) * n2.square());
    let t3 = i(16) * d2.square() * n2;
    [t1, t2, t3]
}

/// The sextic of the conchoid of the sphere with center `(3/2, 0, 0)` and
/// radius `1`, evaluated at `p`.
pub fn implicit_sextic_residual<S: Scalar>(p: &[S; 3], d: &S) -> S {
    let [t1, t2, t3] = sextic_terms(p, d);
    t1 + t2 + t3
}

/// `|G(p)|` divided by the sum of the moduli of its monomial groups.
pub fn implicit_sextic_relative_residual(p: &[f64; 3], d: f64) -> f64 {
    let g = implicit_sextic_residual(p, &d).abs();
    let [x, y, z] = *p;
    let n2 = x * x + y * y + z * z;
    let d2 = d * d;
    let scale = n2 * (4.0 * n2 + 12.0 * x.abs() + 5.0).powi(2)
        + d2 * (40.0 * n2 + 144.0 * x * x + 96.0 * x.abs() * n2 + 32.0 * n2 * n2)
        + 16.0 * d2 * d2 * n2;
    if scale == 0.0 {
        g
    } else {
        g / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d)
    }

    #[test]
    fn zero_rotation_is_profile() {
        let cfg = SphereFocusConfig::<Rat>::from_ratio((25, 1), (24, 1)).unwrap();
        let s = surface_polar(&cfg).unwrap();
        for n in [-5, 0, 2, 9] {
            let u = q(n, 4);
            assert_eq!(s.eval(&u, &q(0, 1)).unwrap(), s.profile.eval(&u).unwrap());
        }
    }

    #[test]
    fn exact_bivariate_identity() {
        let cfg = SphereFocusConfig::<Rat>::from_ratio((25, 1), (24, 1)).unwrap();
        let s = surface_polar(&cfg).unwrap();
        assert!(s.polar_identity_holds());
        let g = conchoid_surfaces(&cfg, &q(3, 1)).unwrap();
        assert!(g.g1.polar_identity_holds() && g.g2.polar_identity_holds());
    }

    #[test]
    fn random_points_on_sphere() {
        let cfg = SphereFocusConfig::<f64>::new(25.0, 24.0).unwrap();
        let s = surface_polar(&cfg).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let (u, v) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let p = s.eval(&u, &v).unwrap();
            assert!(cfg.sphere_residual(&p).abs() < 1e-9);
            assert!(s.residual(&p) < 1e-9);
        }
    }

    #[test]
    fn zero_distance_gives_base() {
        let cfg = SphereFocusConfig::<Rat>::from_ratio((3, 2), (1, 1))
            .unwrap()
            .to_f64();
        let base = surface_polar(&cfg).unwrap();
        let pair = conchoid_surfaces(&cfg, &0.0).unwrap();
        assert_eq!(
            pair.g1.eval(&0.3, &0.7).unwrap(),
            base.eval(&0.3, &0.7).unwrap()
        );
        assert_eq!(
            pair.g2.eval(&0.3, &0.7).unwrap(),
            base.eval(&0.3, &0.7).unwrap()
        );
    }

    #[test]
    fn printed_sextic_vanishes_on_both_components() {
        let cfg = SphereFocusConfig::<f64>::new(1.5, 1.0).unwrap();
        let pair = conchoid_surfaces(&cfg, &0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (u, v) = (rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
            for g in [&pair.g1, &pair.g2] {
                let p = g.eval(&u, &v).unwrap();
                assert!(implicit_sextic_relative_residual(&p, 0.5) < 1e-9);
                assert!(g.residual(&p) < 1e-9);
            }
        }
        assert!(implicit_sextic_residual(&[0.0, 0.0, 0.0], &0.7) == 0.0);
        assert!(implicit_sextic_residual(&[q(0, 1), q(0, 1), q(0, 1)], &q(1, 2)).is_zero());
        assert!(implicit_sextic_relative_residual(&[10.0, 0.0, 0.0], 0.5) > 1e-3);
    }

    #[test]
    fn conchoid_offsets_norms() {
        let cfg = SphereFocusConfig::<f64>::new(3.0, 2.0).unwrap();
        let pair = conchoid_surfaces(&cfg, &0.4).unwrap();
        let base = surface_polar(&cfg).unwrap();
        let norm = |p: [f64; 3]| (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        for i in 0..40 {
            let (u, v) = (-2.0 + 0.1 * i as f64, 0.3 * i as f64 - 4.0);
            let f = norm(base.eval(&u, &v).unwrap());
            assert!((norm(pair.g1.eval(&u, &v).unwrap()) - f - 0.4).abs() < 1e-12);
            assert!((f - norm(pair.g2.eval(&u, &v).unwrap()) - 0.4).abs() < 1e-12);
        }
    }

    #[test]
    fn concentric_pair_is_reducible() {
        let cfg = SphereFocusConfig::<Rat>::from_ratio((0, 1), (2, 1)).unwrap();
        let pair = conchoid_surfaces(&cfg, &q(1, 1)).unwrap();
        assert!(pair.g1.reducible && pair.g2.reducible);
        let n2 = |p: [Rat; 3]| p.iter().map(|c| c.square()).fold(q(0, 1), |a, b| a + b);
        assert_eq!(n2(pair.g1.eval(&q(1, 3), &q(2, 1)).unwrap()), q(9, 1));
        assert_eq!(n2(pair.g2.eval(&q(1, 3), &q(2, 1)).unwrap()), q(1, 1));
    }

    #[test]
    fn negative_distance_is_folded() {
        let cfg = SphereFocusConfig::<f64>::new(3.0, 2.0).unwrap();
        let a = conchoid_surfaces(&cfg, &0.4).unwrap();
        let b = conchoid_surfaces(&cfg, &-0.4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn angle_evaluation_matches_rational() {
        let cfg = SphereFocusConfig::<f64>::new(25.0, 24.0).unwrap();
        let s = surface_polar(&cfg).unwrap();
        let (phi, theta) = (0.4f64, 1.1f64);
        let a = s.eval_angles(phi, theta).unwrap();
        let b = s.eval(&phi.tan(), &(theta / 2.0).tan()).unwrap();
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < 1e-12);
        }
        let far = s.eval_angles(FRAC_PI_2, 0.0).unwrap();
        assert!((far[0] - 49.0).abs() < 1e-12);
    }

    #[test]
    fn on_sphere_and_interior_surfaces() {
        let cfg = SphereFocusConfig::<Rat>::from_ratio((2, 1), (2, 1)).unwrap();
        let s = surface_polar(&cfg).unwrap();
        assert_eq!(s.kind, SurfaceKind::OnSphere);
        assert!(s.polar_identity_holds());
        let cfg = SphereFocusConfig::<f64>::new(2.0, 3.0).unwrap();
        let s = surface_polar(&cfg).unwrap();
        for i in 0..20 {
            let p = s.eval(&(0.3 * i as f64 - 3.0), &0.8).unwrap();
            assert!(cfg.sphere_residual(&p).abs() < 1e-12);
        }
    }
}
