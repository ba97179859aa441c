use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::exactalg::{Scalar, FLOAT_EPS};

/// Quadric in R^dim given by a symmetric (dim+1)x(dim+1) coefficient matrix
/// acting on homogeneous coordinates `y = (1, x_1, ..., x_dim)`; the quadric
/// is the zero set of `y^T Q y`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadric<S> {
    size: usize,
    data: Vec<S>,
}

impl<S: Scalar> Quadric<S> {
    /// Builds a quadric from matrix rows. Rejects non-square input and
    /// asymmetry (exact mismatch, or beyond the float tolerance).
    pub fn new(rows: Vec<Vec<S>>) -> Result<Self> {
        let size = rows.len();
        if size < 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: size,
            });
        }
        if let Some(bad) = rows.iter().find(|row| row.len() != size) {
            return Err(Error::DimensionMismatch {
                expected: size,
                got: bad.len(),
            });
        }
        let data: Vec<S> = rows.into_iter().flatten().collect();
        let scale = data.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max);
        for i in 0..size {
            for j in i + 1..size {
                let diff = data[i * size + j].clone() - data[j * size + i].clone();
                if !diff.near_zero(scale) {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(Self { size, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|row| row.iter().map(|&c| S::from_i64(c)).collect())
                .collect(),
        )
    }

    pub fn diagonal(diag: Vec<S>) -> Self {
        let size = diag.len();
        let mut data = vec![S::zero(); size * size];
        for (i, d) in diag.into_iter().enumerate() {
            data[i * size + i] = d;
        }
        Self { size, data }
    }

    pub fn zero(size: usize) -> Self {
        Self {
            size,
            data: vec![S::zero(); size * size],
        }
    }

    /// Ambient dimension (matrix size minus one).
    pub fn dim(&self) -> usize {
        self.size - 1
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.size + j]
    }

    /// Sets entries (i, j) and (j, i).
    pub fn set_sym(&mut self, i: usize, j: usize, value: S) {
        self.data[i * self.size + j] = value.clone();
        self.data[j * self.size + i] = value;
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.data.chunks(self.size).map(<[S]>::to_vec).collect()
    }

    /// `y^T Q y` with `y = (1, p)`.
    pub fn eval(&self, point: &[S]) -> Result<S> {
        if point.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: point.len(),
            });
        }
        let y = self.homogeneous(point);
        let mut acc = S::zero();
        for (i, yi) in y.iter().enumerate() {
            let mut row = S::zero();
            for (j, yj) in y.iter().enumerate() {
                row = row + self.entry(i, j).clone() * yj.clone();
            }
            acc = acc + yi.clone() * row;
        }
        Ok(acc)
    }

    /// `|y^T Q y|` divided by `sum |Q_ij| |y_i| |y_j|`: a scale-free residual.
    pub fn relative_residual(&self, point: &[S]) -> Result<f64> {
        let value = self.eval(point)?.to_f64().abs();
        let y = self.homogeneous(point);
        let mut scale = 0.0;
        for i in 0..self.size {
            for j in 0..self.size {
                scale +=
                    self.entry(i, j).to_f64().abs() * y[i].to_f64().abs() * y[j].to_f64().abs();
            }
        }
        Ok(if scale == 0.0 { value } else { value / scale })
    }

    fn homogeneous(&self, point: &[S]) -> Vec<S> {
        std::iter::once(S::one())
            .chain(point.iter().cloned())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        Ok(Self {
            size: self.size,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        Self {
            size: self.size,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// `self + t * other`.
    pub fn add_scaled(&self, t: &S, other: &Self) -> Result<Self> {
        self.add(&other.scale(t))
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.size != other.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                got: other.size,
            });
        }
        Ok(())
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> S {
        let n = self.size;
        let mut a = self.data.clone();
        let mut det = S::one();
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[r * n + col].is_zero())
                .max_by(|&x, &y| {
                    a[x * n + col]
                        .abs()
                        .partial_cmp(&a[y * n + col].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                });
            let Some(pivot) = pivot else {
                return S::zero();
            };
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det = det * p.clone();
            for r in col + 1..n {
                let factor = a[r * n + col].clone() / p.clone();
                if factor.is_zero() {
                    continue;
                }
                for k in col..n {
                    a[r * n + k] = a[r * n + k].clone() - factor.clone() * a[col * n + k].clone();
                }
            }
        }
        det
    }

    /// Matrix rank. Exact mode eliminates exactly; float mode counts
    /// eigenvalues (singular values of a symmetric matrix) above
    /// `FLOAT_EPS * largest`.
    pub fn rank(&self) -> usize {
        if S::EXACT {
            exact_rank(self.size, self.data.clone())
        } else {
            let m = DMatrix::from_row_slice(
                self.size,
                self.size,
                &self.data.iter().map(Scalar::to_f64).collect::<Vec<_>>(),
            );
            let sv: Vec<f64> = SymmetricEigen::new(m)
                .eigenvalues
                .iter()
                .map(|e| e.abs())
                .collect();
            let largest = sv.iter().copied().fold(0.0, f64::max);
            if largest == 0.0 {
                return 0;
            }
            sv.iter().filter(|&&s| s > FLOAT_EPS * largest).count()
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|c| c.to_f64().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Distance between the unit-normalized matrices, minimized over the sign
    /// of the proportionality factor. Zero iff the two are proportional.
    pub fn proportionality_deviation(&self, other: &Self) -> Result<f64> {
        self.check_size(other)?;
        let (na, nb) = (self.frobenius_norm(), other.frobenius_norm());
        if na == 0.0 || nb == 0.0 {
            return Ok(if na == nb { 0.0 } else { 1.0 });
        }
        let dev = |sign: f64| {
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a.to_f64() / na - sign * b.to_f64() / nb).powi(2))
                .sum::<f64>()
                .sqrt()
        };
        Ok(dev(1.0).min(dev(-1.0)))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Quadric<T> {
        Quadric {
            size: self.size,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> Quadric<f64> {
        self.map(Scalar::to_f64)
    }
}

fn exact_rank<S: Scalar>(n: usize, mut a: Vec<S>) -> usize {
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| !a[r * n + col].is_zero()) else {
            continue;
        };
        for k in 0..n {
            a.swap(pivot * n + k, rank * n + k);
        }
        let p = a[rank * n + col].clone();
        for r in rank + 1..n {
            let factor = a[r * n + col].clone() / p.clone();
            for k in col..n {
                a[r * n + k] = a[r * n + k].clone() - factor.clone() * a[rank * n + k].clone();
            }
        }
        rank += 1;
    }
    rank
}

impl<S: Scalar> fmt::Display for Quadric<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.data.chunks(self.size) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rat;

    #[test]
    fn rejects_asymmetric_and_ragged() {
        assert!(matches!(
            Quadric::<Rat>::from_i64(&[&[1, 2], &[3, 4]]),
            Err(Error::NotSymmetric)
        ));
        assert!(matches!(
            Quadric::<Rat>::from_i64(&[&[1, 2], &[2]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn evaluation_and_dimension_check() {
        let d =
            Quadric::<Rat>::diagonal([0, 1, 1, 1, -1].iter().map(|&c| Rat::from_i64(c)).collect());
        let pt: Vec<Rat> = [3, 4, 0, 5].iter().map(|&c| Rat::from_i64(c)).collect();
        assert!(d.eval(&pt).unwrap().is_zero());
        assert!(matches!(
            d.eval(&pt[..3]),
            Err(Error::DimensionMismatch {
                expected: 4,
                got: 3
            })
        ));
    }

    #[test]
    fn determinant_and_rank() {
        let d =
            Quadric::<Rat>::diagonal([0, 1, 1, 1, -1].iter().map(|&c| Rat::from_i64(c)).collect());
        assert_eq!(d.rank(), 4);
        assert_eq!(d.to_f64().rank(), 4);
        assert!(d.det().is_zero());
        let q = Quadric::<Rat>::from_i64(&[&[2, 1], &[1, 3]]).unwrap();
        assert_eq!(q.det(), Rat::from_i64(5));
        assert!((q.to_f64().det() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn proportionality() {
        let q = Quadric::<f64>::from_i64(&[&[2, 1], &[1, 3]]).unwrap();
        assert!(q.proportionality_deviation(&q.scale(&-4.0)).unwrap() < 1e-15);
        let other = Quadric::<f64>::from_i64(&[&[2, 1], &[1, 4]]).unwrap();
        assert!(q.proportionality_deviation(&other).unwrap() > 1e-3);
    }
}
