use std::io::Write;

use super::format_float;
use crate::conchoid::{RationalCurve3, TrigPoly3};
use crate::error::{Error, Result};
use crate::exactalg::Scalar;
use crate::quadrics::Quadric;

/// A curve that can be evaluated at float parameters.
pub trait Sampleable {
    fn point(&self, u: f64) -> Result<[f64; 3]>;
    fn norm(&self, u: f64) -> Result<f64>;
}

impl<S: Scalar> Sampleable for RationalCurve3<S> {
    /// Exact curves are evaluated exactly at the binary value of `u`.
    fn point(&self, u: f64) -> Result<[f64; 3]> {
        Ok(self.eval(&S::from_f64(u))?.map(|c| c.to_f64()))
    }

    fn norm(&self, u: f64) -> Result<f64> {
        Ok(self.eval_norm(&S::from_f64(u))?.to_f64())
    }
}

impl Sampleable for TrigPoly3 {
    fn point(&self, u: f64) -> Result<[f64; 3]> {
        Ok(self.eval(u))
    }

    fn norm(&self, u: f64) -> Result<f64> {
        Ok(self.eval_norm(u))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveSample {
    pub u: f64,
    pub point: [f64; 3],
    pub norm: f64,
    pub residual: f64,
}

/// Samples of a curve at increasing parameters.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Polyline3 {
    pub points: Vec<CurveSample>,
}

pub const CSV_HEADER: [&str; 6] = ["u", "x", "y", "z", "norm", "residual"];

impl Polyline3 {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.points.iter().map(|p| p.residual).fold(0.0, f64::max)
    }

    /// Writes `u,x,y,z,norm,residual` rows and returns the byte count.
    pub fn write_csv<W: Write>(&self, sink: W) -> Result<usize> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let to_io = |e: csv::Error| Error::SinkFailure(e.into());
        w.write_record(CSV_HEADER).map_err(to_io)?;
        for p in &self.points {
            let [x, y, z] = p.point;
            w.write_record([p.u, x, y, z, p.norm, p.residual].map(format_float))
                .map_err(to_io)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::SinkFailure(e.into_error()))?;
        let mut sink = sink;
        sink.write_all(&bytes)?;
        sink.flush()?;
        Ok(bytes.len())
    }
}

/// `n` uniform samples on `[lo, hi]` with the absolute residual of `oracle`
/// at each point.
pub fn sample_curve<C: Sampleable + ?Sized>(
    c: &C,
    lo: f64,
    hi: f64,
    n: usize,
    oracle: &Quadric<f64>,
) -> Result<Polyline3> {
    sample_curve_with(c, lo, hi, n, |p| Ok(oracle.eval(p)?.abs()))
}

/// As [`sample_curve`] with an arbitrary residual function.
pub fn sample_curve_with<C: Sampleable + ?Sized>(
    c: &C,
    lo: f64,
    hi: f64,
    n: usize,
    residual: impl Fn(&[f64; 3]) -> Result<f64>,
) -> Result<Polyline3> {
    if !(lo < hi) {
        return Err(Error::DegenerateInterval { lo, hi });
    }
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "need at least 2 samples, got {n}"
        )));
    }
    let step = (hi - lo) / (n - 1) as f64;
    let points = (0..n)
        .map(|i| {
            let u = if i == n - 1 { hi } else { lo + step * i as f64 };
            let point = c.point(u)?;
            Ok(CurveSample {
                u,
                point,
                norm: c.norm(u)?,
                residual: residual(&point)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Polyline3 { points })
}
