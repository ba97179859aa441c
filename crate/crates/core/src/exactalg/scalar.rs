//! Scalar backends.
//!
//! Every kernel in the crate is generic over [`Scalar`], which has two
//! implementations: [`Rat`] for exact arbitrary-precision rational arithmetic
//! and `f64` for floating point. Mixing the two requires an explicit
//! conversion ([`Scalar::to_f64`] or [`Scalar::from_rat`]), so a computation
//! can never drift between modes silently.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Absolute/relative tolerance used by float-mode comparisons.
pub const FLOAT_EPS: f64 = 1e-9;

pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` for the exact rational backend.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rat(q: &Rat) -> Self;
    fn to_f64(&self) -> f64;

    /// Exact binary value of a finite float (exact mode) or the float itself.
    fn from_f64(x: f64) -> Self;

    /// Exact rational value; `None` for non-finite floats.
    fn to_rat(&self) -> Option<Rat>;

    /// Literal zero test.
    fn is_zero(&self) -> bool;

    /// Zero up to the backend tolerance relative to `scale`.
    ///
    /// Exact mode ignores `scale` and tests literally.
    fn near_zero(&self, scale: f64) -> bool;

    fn abs(&self) -> Self;

    /// Square root inside the backend: the exact root of a perfect rational
    /// square, or the float root of a non-negative number.
    fn sqrt(&self) -> Option<Self>;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rat(&Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    fn two() -> Self {
        Self::from_i64(2)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn zero() -> Self {
        <Rat as Zero>::zero()
    }

    fn one() -> Self {
        <Rat as One>::one()
    }

    fn from_i64(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn from_rat(q: &Rat) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        rat_to_f64(self)
    }

    fn from_f64(x: f64) -> Self {
        Rat::from_float(x).expect("finite float")
    }

    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn near_zero(&self, _scale: f64) -> bool {
        Zero::is_zero(self)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn sqrt(&self) -> Option<Self> {
        if Signed::is_negative(self) {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(Rat::new(n, d))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_rat(q: &Rat) -> Self {
        rat_to_f64(q)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_rat(&self) -> Option<Rat> {
        Rat::from_float(*self)
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn near_zero(&self, scale: f64) -> bool {
        f64::abs(*self) <= FLOAT_EPS * scale.abs().max(f64::MIN_POSITIVE)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let s = num_integer::Roots::sqrt(n);
    (&s * &s == *n).then_some(s)
}

/// Correctly scaled conversion; plain `to_f64` on numerator and denominator
/// overflows for large operands.
fn rat_to_f64(q: &Rat) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

/// Parses `"25"`, `"-3/2"` or a decimal literal such as `"0.125"` into an
/// exact rational.
pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if Zero::is_zero(&d) {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let negative = int_part.starts_with('-');
    let int_digits = int_part.trim_start_matches(['-', '+']);
    let digits = format!("{int_digits}{frac_part}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut value = Rat::from_integer(digits.parse::<BigInt>().ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten = Rat::from_integer(BigInt::from(10));
    for _ in 0..shift.unsigned_abs() {
        value = if shift > 0 {
            value * &ten
        } else {
            value / &ten
        };
    }
    Some(if negative { -value } else { value })
}
