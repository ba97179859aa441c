//! Dense univariate polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dense polynomial in one variable; `coeffs[i]` multiplies `x^i`.
///
/// The highest stored coefficient is never zero; the zero polynomial has no
/// coefficients and degree `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![S::zero(), S::one()])
    }

    pub fn monomial(c: S, power: usize) -> Self {
        let mut coeffs = vec![S::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    /// `prod (x - root)`.
    pub fn from_roots(roots: &[S]) -> Self {
        roots.iter().fold(Self::one(), |acc, root| {
            acc * Self::new(vec![-root.clone(), S::one()])
        })
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> S {
        self.coeffs.get(power).cloned().unwrap_or_else(S::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    /// Largest coefficient magnitude, as a float scale.
    pub fn max_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Evaluates the degree-`n` homogenization `sum c_i p^i q^(n-i)`.
    ///
    /// For `q != 0` this equals `q^n * self(p / q)`; `q = 0` gives the
    /// leading-term behaviour at infinity.
    pub fn eval_homogeneous(&self, p: &S, q: &S, n: usize) -> S {
        let mut acc = S::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut term = c.clone();
            for _ in 0..i {
                term = term * p.clone();
            }
            for _ in i..n {
                term = term * q.clone();
            }
            acc = acc + term;
        }
        acc
    }

    /// Sum of `|c_i| |x|^i`, the magnitude scale of an evaluation.
    pub fn eval_scale(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x.abs() + c.to_f64().abs())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * S::from_i64(i as i64))
            .collect();
        Self::new(coeffs)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc * self.clone())
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc * inner.clone() + Self::constant(c.clone())
        })
    }

    /// Euclidean division. In float mode, remainder coefficients below the
    /// tolerance relative to the dividend are dropped.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.long_division(divisor, true)
    }

    /// Like [`Poly::div_rem`], but float remainders keep their rounding noise.
    pub fn div_rem_untrimmed(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.long_division(divisor, false)
    }

    fn long_division(&self, divisor: &Self, trim: bool) -> Result<(Self, Self)> {
        let d_deg = divisor.degree().ok_or(Error::ZeroDenominator)?;
        let lead = divisor.coeffs[d_deg].clone();
        let scale = self.max_norm().max(divisor.max_norm());
        let mut rem = self.coeffs.clone();
        let Some(n_deg) = self.degree().filter(|&n| n >= d_deg) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![S::zero(); n_deg - d_deg + 1];
        for k in (0..=n_deg - d_deg).rev() {
            let c = rem[k + d_deg].clone() / lead.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            rem[k + d_deg] = S::zero();
            quot[k] = c;
        }
        if trim && !S::EXACT {
            for c in rem.iter_mut() {
                if c.near_zero(scale) {
                    *c = S::zero();
                }
            }
        }
        rem.truncate(d_deg);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = S::one() / l.clone();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`, the product of the distinct irreducible
    /// factors.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_rem(&g).expect("gcd is nonzero").0
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn to_f64(&self) -> Poly<f64> {
        self.map(Scalar::to_f64)
    }
}

/// Lagrange interpolation through `(xs[i], ys[i])`; the `xs` must be distinct.
pub fn interpolate<S: Scalar>(xs: &[S], ys: &[S]) -> Poly<S> {
    assert_eq!(xs.len(), ys.len(), "interpolation needs matching samples");
    let mut result = Poly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = Poly::one();
        let mut denom = S::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis * Poly::new(vec![-xj.clone(), S::one()]);
                denom = denom * (xi.clone() - xj.clone());
            }
        }
        result = result + basis.scale(&(yi.clone() / denom));
    }
    result
}

impl<S: Scalar> Add for Poly<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: Self) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Sub for Poly<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: Self) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Mul for Poly<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: Self) -> Poly<S> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<S: Scalar> Neg for Poly<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}
