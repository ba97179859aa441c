use crate::error::{Error, Result};
use crate::exactalg::Scalar;

/// Position of the focus `O = (0, 0, 0)` relative to the sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `m = 0`: the focus is the center.
    Concentric,
    /// `m^2 = r^2`: the focus lies on the sphere.
    OnSphere,
    /// `m > r`.
    Exterior,
    /// `0 < m < r`.
    Interior,
}

/// Sphere `(x - m)^2 + y^2 + z^2 = r^2` seen from the focus at the origin.
///
/// `m` is stored non-negative: a negative center abscissa is reflected in
/// the plane `x = 0` and [`SphereFocusConfig::reflected`] records that.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereFocusConfig<S> {
    m: S,
    r: S,
    gamma_sq: S,
    gamma: Option<S>,
    gamma_f64: Option<f64>,
    regime: Regime,
    reflected: bool,
}

impl<S: Scalar> SphereFocusConfig<S> {
    pub fn new(m: S, r: S) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidConfig(format!(
                "radius must be positive, got r = {r}"
            )));
        }
        let reflected = m.is_negative();
        let m = if reflected { -m } else { m };
        let gamma_sq = m.square() - r.square();
        let regime = if m.is_zero() {
            Regime::Concentric
        } else if gamma_sq.is_zero() {
            Regime::OnSphere
        } else if gamma_sq.is_positive() {
            Regime::Exterior
        } else {
            Regime::Interior
        };
        let (gamma, gamma_f64) = if gamma_sq.is_negative() {
            (None, None)
        } else {
            (gamma_sq.sqrt(), Some(gamma_sq.to_f64().sqrt()))
        };
        Ok(Self {
            m,
            r,
            gamma_sq,
            gamma,
            gamma_f64,
            regime,
            reflected,
        })
    }

    pub fn from_ratio(m: (i64, i64), r: (i64, i64)) -> Result<Self> {
        Self::new(S::from_ratio(m.0, m.1), S::from_ratio(r.0, r.1))
    }

    pub fn m(&self) -> &S {
        &self.m
    }

    pub fn r(&self) -> &S {
        &self.r
    }

    /// `m + r`.
    pub fn a(&self) -> S {
        self.m.clone() + self.r.clone()
    }

    /// `m - r`.
    pub fn b(&self) -> S {
        self.m.clone() - self.r.clone()
    }

    /// `m^2 - r^2`, the power of the focus with respect to the sphere.
    pub fn gamma_sq(&self) -> &S {
        &self.gamma_sq
    }

    /// `gamma = sqrt(m^2 - r^2)` inside the backend.
    ///
    /// Fails with `DegenerateConfig` unless the focus is exterior or on the
    /// sphere, and with `ExactnessUnavailable` when `m^2 - r^2` is not a
    /// rational square in exact mode.
    pub fn gamma(&self) -> Result<S> {
        if self.gamma_sq.is_negative() {
            return Err(Error::DegenerateConfig(
                "gamma = sqrt(m^2 - r^2) needs an exterior focus (m >= r)".into(),
            ));
        }
        self.gamma.clone().ok_or_else(|| {
            Error::ExactnessUnavailable(format!(
                "m^2 - r^2 = {} is not a rational square",
                self.gamma_sq
            ))
        })
    }

    /// Float value of `gamma`; `None` for an interior focus.
    pub fn gamma_f64(&self) -> Option<f64> {
        self.gamma_f64
    }

    /// Whether `gamma` is available inside the backend.
    pub fn gamma_is_exact(&self) -> bool {
        self.gamma.is_some()
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn reflected(&self) -> bool {
        self.reflected
    }

    /// Requires `m != 0` and `m^2 != r^2`.
    pub fn require_generic(&self) -> Result<()> {
        match self.regime {
            Regime::Concentric => Err(Error::DegenerateConfig(
                "m = 0: the focus is the sphere center".into(),
            )),
            Regime::OnSphere => Err(Error::DegenerateConfig("m = r: use on-sphere mode".into())),
            _ => Ok(()),
        }
    }

    /// Requires `m > r > 0`.
    pub fn require_exterior(&self) -> Result<()> {
        self.require_generic()?;
        if self.regime != Regime::Exterior {
            return Err(Error::DegenerateConfig(
                "construction needs an exterior focus (m > r)".into(),
            ));
        }
        Ok(())
    }

    /// For an interior focus, the configuration seen from the inverse point
    /// `O'`: the same sphere with center distance `r^2 / m`, which is exterior.
    pub fn exchanged(&self) -> Result<Self> {
        if self.m.is_zero() {
            return Err(Error::FocusAtCenter);
        }
        Self::new(self.r.square() / self.m.clone(), self.r.clone())
    }

    pub fn to_f64(&self) -> SphereFocusConfig<f64> {
        SphereFocusConfig {
            m: self.m.to_f64(),
            r: self.r.to_f64(),
            gamma_sq: self.gamma_sq.to_f64(),
            gamma: self.gamma_f64,
            gamma_f64: self.gamma_f64,
            regime: self.regime,
            reflected: self.reflected,
        }
    }

    /// Sphere residual `(x - m)^2 + y^2 + z^2 - r^2`.
    pub fn sphere_residual(&self, p: &[S; 3]) -> S {
        let dx = p[0].clone() - self.m.clone();
        dx.square() + p[1].square() + p[2].square() - self.r.square()
    }
}
