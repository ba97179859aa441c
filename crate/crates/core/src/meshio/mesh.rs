use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::io::Write;

use super::format_float;
use crate::conchoid::PolarSurface;
use crate::error::{Error, Result};
use crate::exactalg::Scalar;

/// Largest vertex residual accepted by [`tessellate_revolution`].
pub const RESIDUAL_GATE: f64 = 1e-6;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TriMesh {
    pub vertices: Vec<[f64; 3]>,
    /// 0-based vertex indices.
    pub triangles: Vec<[usize; 3]>,
}

impl TriMesh {
    pub fn new(vertices: Vec<[f64; 3]>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let n = vertices.len();
        for t in &triangles {
            if t.iter().any(|&i| i >= n) {
                return Err(Error::OutOfRange(format!(
                    "triangle {t:?} with {n} vertices"
                )));
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(Error::OutOfRange(format!("degenerate triangle {t:?}")));
            }
        }
        Ok(Self {
            vertices,
            triangles,
        })
    }
}

/// Triangulates `s` on a grid of `nu + 1` meridian stations by `nv`
/// rotation angles. The meridian is sampled at `u = tan phi` over the
/// surface's span, the rotation at `theta = 2 pi j / nv`; the last column is
/// welded to the first, so the mesh has `(nu + 1) nv` vertices and
/// `2 nu nv` triangles.
///
/// Fails with `ResidualGate` if a vertex misses the surface by more than
/// [`RESIDUAL_GATE`].
pub fn tessellate_revolution<S: Scalar>(
    s: &PolarSurface<S>,
    nu: usize,
    nv: usize,
) -> Result<TriMesh> {
    if nu < 2 || nv < 3 {
        return Err(Error::InvalidConfig(format!(
            "tessellation needs nu >= 2 and nv >= 3, got nu = {nu}, nv = {nv}"
        )));
    }
    let f = s.to_f64();
    let (lo, hi) = f.meridian_span();
    let mut vertices = Vec::with_capacity((nu + 1) * nv);
    for i in 0..=nu {
        let phi = if i == nu {
            hi
        } else {
            lo + (hi - lo) * i as f64 / nu as f64
        };
        for j in 0..nv {
            let theta = TAU * j as f64 / nv as f64;
            let p = f.eval_angles(phi, theta)?;
            let residual = f.residual(&p);
            if !(residual <= RESIDUAL_GATE) {
                return Err(Error::ResidualGate {
                    index: vertices.len(),
                    residual,
                    limit: RESIDUAL_GATE,
                });
            }
            vertices.push(p);
        }
    }
    let mut triangles = Vec::with_capacity(2 * nu * nv);
    for i in 0..nu {
        for j in 0..nv {
            let a = i * nv + j;
            let b = i * nv + (j + 1) % nv;
            let c = a + nv;
            let d = b + nv;
            triangles.push([a, b, d]);
            triangles.push([a, d, c]);
        }
    }
    Ok(TriMesh {
        vertices,
        triangles,
    })
}

/// The OBJ text of `mesh`: `v x y z` lines, then `f i j k` with 1-based
/// indices.
pub fn obj_string(mesh: &TriMesh) -> String {
    let mut out = String::with_capacity(40 * (mesh.vertices.len() + mesh.triangles.len()));
    for v in &mesh.vertices {
        let [x, y, z] = v.map(format_float);
        writeln!(out, "v {x} {y} {z}").expect("string write");
    }
    for t in &mesh.triangles {
        writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1).expect("string write");
    }
    out
}

/// Writes `mesh` as OBJ and returns the number of bytes written.
pub fn write_obj<W: Write>(mesh: &TriMesh, mut sink: W) -> Result<usize> {
    let text = obj_string(mesh);
    sink.write_all(text.as_bytes())?;
    sink.flush()?;
    Ok(text.len())
}
