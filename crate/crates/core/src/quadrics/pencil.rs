use serde::Serialize;

use super::quadric::Quadric;
use crate::error::{Error, Result};
use crate::exactalg::{interpolate, poly_real_roots, Poly, Scalar};

/// Interpolation nodes for the characteristic polynomial; the first
/// `size + 1` are used.
const CHARPOLY_NODES: [i64; 6] = [0, 1, -1, 2, -2, 3];

/// The one-parameter family `A + t B` of two same-size quadrics.
#[derive(Clone, Debug, PartialEq)]
pub struct Pencil<S> {
    a: Quadric<S>,
    b: Quadric<S>,
}

impl<S: Scalar> Pencil<S> {
    pub fn new(a: Quadric<S>, b: Quadric<S>) -> Result<Self> {
        if a.size() != b.size() {
            return Err(Error::DimensionMismatch {
                expected: a.size(),
                got: b.size(),
            });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &Quadric<S> {
        &self.a
    }

    pub fn b(&self) -> &Quadric<S> {
        &self.b
    }

    /// `A + t B`.
    pub fn member(&self, t: &S) -> Quadric<S> {
        self.a
            .add_scaled(t, &self.b)
            .expect("sizes checked at construction")
    }

    /// `det(A + t B)` as a polynomial in `t`, interpolated from determinants
    /// at `size + 1` integer nodes.
    pub fn charpoly(&self) -> Poly<S> {
        let nodes: Vec<S> = CHARPOLY_NODES[..=self.a.size()]
            .iter()
            .map(|&t| S::from_i64(t))
            .collect();
        let values: Vec<S> = nodes.iter().map(|t| self.member(t).det()).collect();
        let p = interpolate(&nodes, &values);
        if S::EXACT {
            return p;
        }
        // Interpolation leaves rounding noise where exact coefficients vanish.
        let scale = p.max_norm();
        Poly::new(
            p.coeffs()
                .iter()
                .map(|c| {
                    if c.near_zero(1e-3 * scale) {
                        S::zero()
                    } else {
                        c.clone()
                    }
                })
                .collect(),
        )
    }

    /// Members `A + t* B` at the real roots `t*` of the characteristic
    /// polynomial inside `[lo, hi]`, sorted by root.
    ///
    /// A pencil whose characteristic polynomial vanishes identically has no
    /// isolated singular members and yields an empty list.
    pub fn singular_members(&self, lo: S, hi: S) -> Result<Vec<(S, Quadric<S>)>> {
        let cp = self.charpoly();
        if cp.is_zero() || cp.degree() == Some(0) {
            if lo >= hi {
                return Err(Error::DegenerateInterval {
                    lo: lo.to_f64(),
                    hi: hi.to_f64(),
                });
            }
            return Ok(Vec::new());
        }
        Ok(poly_real_roots(&cp, lo, hi)?
            .into_iter()
            .map(|t| {
                let q = self.member(&t);
                (t, q)
            })
            .collect())
    }

    /// Summary consumed by the `pencil` command.
    pub fn report(&self, name: &str, lo: S, hi: S) -> Result<PencilReport> {
        let cp = self.charpoly();
        let members = self.singular_members(lo, hi)?;
        Ok(PencilReport {
            name: name.to_string(),
            charpoly_coeffs: cp.coeffs().iter().map(Scalar::to_f64).collect(),
            charpoly_exact: S::EXACT.then(|| cp.coeffs().iter().map(ToString::to_string).collect()),
            roots: members.iter().map(|(t, _)| t.to_f64()).collect(),
            member_ranks: members.iter().map(|(_, q)| q.rank()).collect(),
        })
    }

    pub fn to_f64(&self) -> Pencil<f64> {
        Pencil {
            a: self.a.to_f64(),
            b: self.b.to_f64(),
        }
    }
}

/// JSON record `{charpoly_coeffs, roots, member_ranks}` for one pencil.
/// Coefficients are listed by ascending power.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PencilReport {
    pub name: String,
    pub charpoly_coeffs: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub charpoly_exact: Option<Vec<String>>,
    pub roots: Vec<f64>,
    pub member_ranks: Vec<usize>,
}
