//! Normalized univariate rational functions.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::Poly;
use super::roots::poly_real_roots;
use super::scalar::{Scalar, FLOAT_EPS};
use crate::error::{Error, Result};

/// Number of sample points used by float-mode identity testing.
pub const DEFAULT_IDENTITY_TRIALS: usize = 64;

/// Sampling window for float-mode identity testing.
const IDENTITY_WINDOW: (f64, f64) = (-10.0, 10.0);

/// Minimum distance between a sample point and a real pole.
const POLE_EXCLUSION: f64 = 1e-6;

/// Quotient `num / den` with coprime parts and a normalized denominator:
/// monic in exact mode, unit max-norm in float mode.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<S> {
    num: Poly<S>,
    den: Poly<S>,
}

impl<S: Scalar> RatFunc<S> {
    /// Reduces `num / den` to lowest terms.
    pub fn normalize(num: Poly<S>, den: Poly<S>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self {
                num,
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 && gcd_divides(&g, &num, &den) {
            (
                num.div_rem(&g).expect("gcd is nonzero").0,
                den.div_rem(&g).expect("gcd is nonzero").0,
            )
        } else {
            (num, den)
        };
        let factor = if S::EXACT {
            den.leading().cloned().expect("nonzero denominator")
        } else {
            let lead = den.leading().expect("nonzero denominator").to_f64();
            S::from_f64(den.max_norm().copysign(lead))
        };
        let inv = S::one() / factor;
        num = num.scale(&inv);
        den = den.scale(&inv);
        Ok(Self { num, den })
    }

    pub fn from_poly(p: Poly<S>) -> Self {
        Self::normalize(p, Poly::one()).expect("unit denominator")
    }

    pub fn constant(c: S) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn num(&self) -> &Poly<S> {
        &self.num
    }

    pub fn den(&self) -> &Poly<S> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Evaluates at `u`, failing at poles of the denominator.
    pub fn eval(&self, u: &S) -> Result<S> {
        let d = self.den.eval(u);
        if d.near_zero(self.den.eval_scale(u.to_f64())) {
            return Err(Error::PoleAtPoint(u.to_string()));
        }
        Ok(self.num.eval(u) / d)
    }

    /// Evaluates at the projective parameter `u = p / q`, which may be the
    /// point at infinity (`q = 0`).
    pub fn eval_homogeneous(&self, p: &S, q: &S) -> Result<S> {
        let n = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        let d = self.den.eval_homogeneous(p, q, n);
        let scale = self.den.max_norm() * (p.to_f64().abs() + q.to_f64().abs()).powi(n as i32);
        if d.near_zero(scale) {
            return Err(Error::PoleAtPoint(format!("{p}/{q}")));
        }
        Ok(self.num.eval_homogeneous(p, q, n) / d)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::constant(S::one()), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::normalize(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    /// The numerator of `self - other` after cross-multiplication, with no
    /// cancellation performed. Zero exactly when the two functions agree.
    pub fn difference_numerator(&self, other: &Self) -> Poly<S> {
        &(&self.num * &other.den) - &(&other.num * &self.den)
    }

    /// Tests whether `self` and `other` are the same rational function.
    ///
    /// Exact mode is deterministic (the cross-multiplied difference must be
    /// the zero polynomial) and ignores `trials`. Float mode compares values
    /// at `trials` points of [-10, 10] kept away from real poles.
    pub fn identity_equal(&self, other: &Self, trials: usize) -> bool {
        if S::EXACT {
            return self.difference_numerator(other).is_zero();
        }
        let (lo, hi) = IDENTITY_WINDOW;
        let poles: Vec<f64> = [&self.den, &other.den]
            .iter()
            .filter(|d| d.degree().unwrap_or(0) > 0)
            .flat_map(|d| poly_real_roots(&d.to_f64(), lo - 1.0, hi + 1.0).unwrap_or_default())
            .collect();
        let trials = trials.max(1);
        let mut compared = 0;
        for i in 0..trials {
            // Irrational offset keeps the grid off small-denominator rationals.
            let t = (i as f64 + 0.5 + 0.123_456_789) / (trials as f64 + 1.0);
            let u = lo + (hi - lo) * t;
            if poles.iter().any(|p| (p - u).abs() < POLE_EXCLUSION) {
                continue;
            }
            let su = S::from_f64(u);
            let (Ok(a), Ok(b)) = (self.eval(&su), other.eval(&su)) else {
                continue;
            };
            let (a, b) = (a.to_f64(), b.to_f64());
            let scale = 1f64.max(a.abs()).max(b.abs());
            if (a - b).abs() > FLOAT_EPS * scale {
                return false;
            }
            compared += 1;
        }
        compared > 0
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> RatFunc<T> {
        RatFunc::normalize(self.num.map(f), self.den.map(f)).expect("nonzero denominator")
    }

    pub fn to_f64(&self) -> RatFunc<f64> {
        self.map(Scalar::to_f64)
    }
}

/// Float Euclid can return a spurious divisor; accept it only if it divides
/// both parts.
const GCD_REMAINDER_TOL: f64 = 1e-13;

fn gcd_divides<S: Scalar>(g: &Poly<S>, num: &Poly<S>, den: &Poly<S>) -> bool {
    if S::EXACT {
        return true;
    }
    // Much tighter than FLOAT_EPS: an approximate factor that only nearly
    // divides would perturb every later identity test.
    let ok = |p: &Poly<S>| {
        p.div_rem_untrimmed(g)
            .map(|(_, r)| {
                r.coeffs()
                    .iter()
                    .all(|c| c.to_f64().abs() <= GCD_REMAINDER_TOL * p.max_norm())
            })
            .unwrap_or(false)
    };
    ok(num) && ok(den)
}

impl<S: Scalar> Add for &RatFunc<S> {
    type Output = RatFunc<S>;
    fn add(self, rhs: Self) -> RatFunc<S> {
        if self.den == rhs.den {
            return RatFunc::normalize(&self.num + &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        RatFunc::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("product of nonzero denominators")
    }
}

impl<S: Scalar> Sub for &RatFunc<S> {
    type Output = RatFunc<S>;
    fn sub(self, rhs: Self) -> RatFunc<S> {
        if self.den == rhs.den {
            return RatFunc::normalize(&self.num - &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        RatFunc::normalize(self.difference_numerator(rhs), &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

impl<S: Scalar> Mul for &RatFunc<S> {
    type Output = RatFunc<S>;
    fn mul(self, rhs: Self) -> RatFunc<S> {
        RatFunc::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

/// Panics when dividing by the zero function.
impl<S: Scalar> Div for &RatFunc<S> {
    type Output = RatFunc<S>;
    fn div(self, rhs: Self) -> RatFunc<S> {
        RatFunc::normalize(&self.num * &rhs.den, &self.den * &rhs.num)
            .expect("division by the zero rational function")
    }
}

impl<S: Scalar> Neg for &RatFunc<S> {
    type Output = RatFunc<S>;
    fn neg(self) -> RatFunc<S> {
        RatFunc {
            num: -self.num.clone(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<S: Scalar> $tr for RatFunc<S> {
            type Output = RatFunc<S>;
            fn $m(self, rhs: Self) -> RatFunc<S> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl<S: Scalar> Neg for RatFunc<S> {
    type Output = RatFunc<S>;
    fn neg(self) -> RatFunc<S> {
        -&self
    }
}

impl<S: Scalar> fmt::Display for RatFunc<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
