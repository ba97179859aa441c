use crate::error::Result;
use crate::exactalg::{RatFunc, Scalar, DEFAULT_IDENTITY_TRIALS};
use crate::quadrics::{Quadric, SphereFocusConfig};

/// Space curve with rational components in `u` and a rational norm
/// (distance to the origin of the construction frame).
#[derive(Clone, Debug, PartialEq)]
pub struct RationalCurve3<S> {
    pub x: RatFunc<S>,
    pub y: RatFunc<S>,
    pub z: RatFunc<S>,
    pub norm: RatFunc<S>,
}

impl<S: Scalar> RationalCurve3<S> {
    pub fn new(x: RatFunc<S>, y: RatFunc<S>, z: RatFunc<S>, norm: RatFunc<S>) -> Self {
        Self { x, y, z, norm }
    }

    pub fn components(&self) -> [&RatFunc<S>; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn eval(&self, u: &S) -> Result<[S; 3]> {
        Ok([self.x.eval(u)?, self.y.eval(u)?, self.z.eval(u)?])
    }

    pub fn eval_norm(&self, u: &S) -> Result<S> {
        self.norm.eval(u)
    }

    /// Point at the projective parameter `p / q`; `q = 0` is `u = ∞`.
    pub fn eval_homogeneous(&self, p: &S, q: &S) -> Result<[S; 3]> {
        Ok([
            self.x.eval_homogeneous(p, q)?,
            self.y.eval_homogeneous(p, q)?,
            self.z.eval_homogeneous(p, q)?,
        ])
    }

    pub fn eval_norm_homogeneous(&self, p: &S, q: &S) -> Result<S> {
        self.norm.eval_homogeneous(p, q)
    }

    /// `x^2 + y^2 + z^2 - norm^2` reduced to a single rational function.
    pub fn norm_defect(&self) -> RatFunc<S> {
        &(&(&self.x.pow(2) + &self.y.pow(2)) + &self.z.pow(2)) - &self.norm.pow(2)
    }

    /// Whether `x^2 + y^2 + z^2 = norm^2` holds as an identity.
    pub fn norm_identity_holds(&self) -> bool {
        (&(&self.x.pow(2) + &self.y.pow(2)) + &self.z.pow(2))
            .identity_equal(&self.norm.pow(2), DEFAULT_IDENTITY_TRIALS)
    }

    /// `y^T Q y` along the curve as a rational function.
    pub fn quadric_defect(&self, q: &Quadric<S>) -> RatFunc<S> {
        let y = [
            RatFunc::constant(S::one()),
            self.x.clone(),
            self.y.clone(),
            self.z.clone(),
        ];
        let mut acc = RatFunc::zero();
        for i in 0..4 {
            for j in 0..4 {
                let c = q.entry(i, j);
                if c.is_zero() {
                    continue;
                }
                acc = &acc + &(&y[i] * &y[j]).scale(c);
            }
        }
        acc
    }

    /// Whether the curve lies on the quadric `q` identically.
    pub fn lies_on(&self, q: &Quadric<S>) -> bool {
        self.quadric_defect(q)
            .identity_equal(&RatFunc::zero(), DEFAULT_IDENTITY_TRIALS)
    }

    /// Whether the curve lies on the sphere of `cfg` identically.
    pub fn lies_on_sphere(&self, cfg: &SphereFocusConfig<S>) -> bool {
        self.lies_on(&crate::quadrics::sphere_quadric(cfg))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> RationalCurve3<T> {
        RationalCurve3 {
            x: self.x.map(f),
            y: self.y.map(f),
            z: self.z.map(f),
            norm: self.norm.map(f),
        }
    }

    pub fn to_f64(&self) -> RationalCurve3<f64> {
        self.map(Scalar::to_f64)
    }
}

/// Index into the trigonometric basis `{1, c, s, c^2, cs, s^2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trig {
    One = 0,
    C = 1,
    S = 2,
    C2 = 3,
    CS = 4,
    S2 = 5,
}

/// Curve whose components are quadratic trigonometric polynomials in the
/// raw basis `{1, cos t, sin t, cos^2 t, cos t sin t, sin^2 t}`, with norm
/// `n0 + n1 sin t`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPoly3 {
    pub coeffs: [[f64; 6]; 3],
    pub norm: (f64, f64),
}

impl TrigPoly3 {
    pub fn zero() -> Self {
        Self {
            coeffs: [[0.0; 6]; 3],
            norm: (0.0, 0.0),
        }
    }

    pub fn set(&mut self, component: usize, term: Trig, value: f64) {
        self.coeffs[component][term as usize] = value;
    }

    pub fn coeff(&self, component: usize, term: Trig) -> f64 {
        self.coeffs[component][term as usize]
    }

    pub fn eval(&self, t: f64) -> [f64; 3] {
        let (s, c) = t.sin_cos();
        let basis = [1.0, c, s, c * c, c * s, s * s];
        self.coeffs
            .map(|row| row.iter().zip(&basis).map(|(a, b)| a * b).sum())
    }

    pub fn eval_norm(&self, t: f64) -> f64 {
        self.norm.0 + self.norm.1 * t.sin()
    }

    /// The curve shifted by `offset`.
    pub fn translated(&self, offset: [f64; 3]) -> Self {
        let mut out = self.clone();
        for (row, o) in out.coeffs.iter_mut().zip(offset) {
            row[Trig::One as usize] += o;
        }
        out
    }
}
