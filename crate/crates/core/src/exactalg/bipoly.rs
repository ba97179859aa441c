//! Bivariate polynomials and unreduced bivariate quotients.
//!
//! These support the surface-level identities only: ring operations,
//! evaluation, partial derivatives and restriction to a line. No gcd is
//! provided, so [`BiRatFunc`] is never reduced and equality is decided by
//! cross-multiplication.

use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Poly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dense coefficient grid; `coeffs[i][j]` multiplies `u^i v^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly<S> {
    coeffs: Vec<Vec<S>>,
}

impl<S: Scalar> BiPoly<S> {
    pub fn new(coeffs: Vec<Vec<S>>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![vec![c]])
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn u() -> Self {
        Self::new(vec![vec![], vec![S::one()]])
    }

    pub fn v() -> Self {
        Self::new(vec![vec![S::zero(), S::one()]])
    }

    /// `c u^i v^j`.
    pub fn monomial(c: S, i: usize, j: usize) -> Self {
        let mut coeffs = vec![Vec::new(); i + 1];
        coeffs[i] = vec![S::zero(); j + 1];
        coeffs[i][j] = c;
        Self::new(coeffs)
    }

    pub fn from_u(p: &Poly<S>) -> Self {
        Self::new(p.coeffs().iter().map(|c| vec![c.clone()]).collect())
    }

    pub fn from_v(p: &Poly<S>) -> Self {
        Self::new(vec![p.coeffs().to_vec()])
    }

    fn trim(&mut self) {
        for row in self.coeffs.iter_mut() {
            while row.last().is_some_and(Scalar::is_zero) {
                row.pop();
            }
        }
        while self.coeffs.last().is_some_and(Vec::is_empty) {
            self.coeffs.pop();
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> S {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Zero up to the float tolerance relative to `scale` (literal in exact
    /// mode).
    pub fn near_zero(&self, scale: f64) -> bool {
        self.coeffs.iter().flatten().all(|c| c.near_zero(scale))
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms().map(|(i, j, _)| i + j).max()
    }

    pub fn max_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .flatten()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Nonzero terms as `(i, j, coeff)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.coeffs.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(j, c)| (i, j, c))
        })
    }

    pub fn eval(&self, u: &S, v: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, row| {
            let inner = row
                .iter()
                .rev()
                .fold(S::zero(), |a, c| a * v.clone() + c.clone());
            acc * u.clone() + inner
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|row| row.iter().map(|a| a.clone() * c.clone()).collect())
                .collect(),
        )
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn du(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, row)| {
                    row.iter()
                        .map(|c| c.clone() * S::from_i64(i as i64))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn dv(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .skip(1)
                        .map(|(j, c)| c.clone() * S::from_i64(j as i64))
                        .collect()
                })
                .collect(),
        )
    }

    /// Restriction to the line `u = u0 + du t`, `v = v0 + dv t`.
    pub fn restrict_to_line(&self, u0: &S, du: &S, v0: &S, dv: &S) -> Poly<S> {
        let lu = Poly::new(vec![u0.clone(), du.clone()]);
        let lv = Poly::new(vec![v0.clone(), dv.clone()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, row| {
            let inner = Poly::new(row.clone()).compose(&lv);
            &(&acc * &lu) + &inner
        })
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BiPoly<T> {
        BiPoly::new(
            self.coeffs
                .iter()
                .map(|row| row.iter().map(&f).collect())
                .collect(),
        )
    }
}

fn combine<S: Scalar>(a: &BiPoly<S>, b: &BiPoly<S>, op: impl Fn(S, S) -> S) -> BiPoly<S> {
    let rows = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..rows)
        .map(|i| {
            let cols = a
                .coeffs
                .get(i)
                .map_or(0, Vec::len)
                .max(b.coeffs.get(i).map_or(0, Vec::len));
            (0..cols)
                .map(|j| op(a.coeff(i, j), b.coeff(i, j)))
                .collect()
        })
        .collect();
    BiPoly::new(coeffs)
}

impl<S: Scalar> Add for &BiPoly<S> {
    type Output = BiPoly<S>;
    fn add(self, rhs: Self) -> BiPoly<S> {
        combine(self, rhs, |a, b| a + b)
    }
}

impl<S: Scalar> Sub for &BiPoly<S> {
    type Output = BiPoly<S>;
    fn sub(self, rhs: Self) -> BiPoly<S> {
        combine(self, rhs, |a, b| a - b)
    }
}

impl<S: Scalar> Mul for &BiPoly<S> {
    type Output = BiPoly<S>;
    fn mul(self, rhs: Self) -> BiPoly<S> {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let rows = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut out: Vec<Vec<S>> = vec![Vec::new(); rows];
        for (i1, r1) in self.coeffs.iter().enumerate() {
            for (i2, r2) in rhs.coeffs.iter().enumerate() {
                if r1.is_empty() || r2.is_empty() {
                    continue;
                }
                let row = &mut out[i1 + i2];
                let need = r1.len() + r2.len() - 1;
                if row.len() < need {
                    row.resize(need, S::zero());
                }
                for (j1, a) in r1.iter().enumerate() {
                    for (j2, b) in r2.iter().enumerate() {
                        row[j1 + j2] = row[j1 + j2].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        BiPoly::new(out)
    }
}

impl<S: Scalar> Neg for &BiPoly<S> {
    type Output = BiPoly<S>;
    fn neg(self) -> BiPoly<S> {
        self.scale(&-S::one())
    }
}

macro_rules! forward_owned {
    ($ty:ident: $($tr:ident $m:ident),*) => {$(
        impl<S: Scalar> $tr for $ty<S> {
            type Output = $ty<S>;
            fn $m(self, rhs: Self) -> $ty<S> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(BiPoly: Add add, Sub sub, Mul mul);

/// Quotient of bivariate polynomials with nonzero denominator; not reduced.
#[derive(Clone, Debug, PartialEq)]
pub struct BiRatFunc<S> {
    num: BiPoly<S>,
    den: BiPoly<S>,
}

impl<S: Scalar> BiRatFunc<S> {
    pub fn new(num: BiPoly<S>, den: BiPoly<S>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: BiPoly<S>) -> Self {
        Self {
            num: p,
            den: BiPoly::one(),
        }
    }

    /// Lifts a univariate function of `u`.
    pub fn from_u(f: &super::RatFunc<S>) -> Self {
        Self {
            num: BiPoly::from_u(f.num()),
            den: BiPoly::from_u(f.den()),
        }
    }

    /// Lifts a univariate function of `v`.
    pub fn from_v(f: &super::RatFunc<S>) -> Self {
        Self {
            num: BiPoly::from_v(f.num()),
            den: BiPoly::from_v(f.den()),
        }
    }

    pub fn num(&self) -> &BiPoly<S> {
        &self.num
    }

    pub fn den(&self) -> &BiPoly<S> {
        &self.den
    }

    pub fn eval(&self, u: &S, v: &S) -> Result<S> {
        let d = self.den.eval(u, v);
        if d.near_zero(self.den.max_norm()) {
            return Err(Error::PoleAtPoint(format!("({u}, {v})")));
        }
        Ok(self.num.eval(u, v) / d)
    }

    /// Cross-multiplied numerator of `self - other`.
    pub fn difference_numerator(&self, other: &Self) -> BiPoly<S> {
        &(&self.num * &other.den) - &(&other.num * &self.den)
    }

    /// Polynomial identity test by cross-multiplication. Float mode treats
    /// coefficients below the tolerance relative to the operands as zero.
    pub fn identity_equal(&self, other: &Self) -> bool {
        let diff = self.difference_numerator(other);
        if S::EXACT {
            return diff.is_zero();
        }
        let scale = (&self.num * &other.den)
            .max_norm()
            .max((&other.num * &self.den).max_norm());
        diff.near_zero(scale)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }
}

impl<S: Scalar> Add for &BiRatFunc<S> {
    type Output = BiRatFunc<S>;
    fn add(self, rhs: Self) -> BiRatFunc<S> {
        if self.den == rhs.den {
            return BiRatFunc {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
        }
        BiRatFunc {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl<S: Scalar> Sub for &BiRatFunc<S> {
    type Output = BiRatFunc<S>;
    fn sub(self, rhs: Self) -> BiRatFunc<S> {
        self + &-rhs
    }
}

impl<S: Scalar> Mul for &BiRatFunc<S> {
    type Output = BiRatFunc<S>;
    fn mul(self, rhs: Self) -> BiRatFunc<S> {
        BiRatFunc {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}

impl<S: Scalar> Neg for &BiRatFunc<S> {
    type Output = BiRatFunc<S>;
    fn neg(self) -> BiRatFunc<S> {
        BiRatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_owned!(BiRatFunc: Add add, Sub sub, Mul mul);
