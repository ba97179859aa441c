//! Universal rational polar parameterizations and the norm on the unit cone.

use crate::error::{Error, Result};
use crate::exactalg::{BiPoly, BiRatFunc, Poly, RatFunc, Scalar, DEFAULT_IDENTITY_TRIALS};

/// Six bivariate polynomials `a, b, c, d` (the direction) and
/// `rnum / sden` (the radius).
#[derive(Clone, Debug, PartialEq)]
pub struct UniversalInput<S> {
    pub a: BiPoly<S>,
    pub b: BiPoly<S>,
    pub c: BiPoly<S>,
    pub d: BiPoly<S>,
    pub rnum: BiPoly<S>,
    pub sden: BiPoly<S>,
}

/// Lines `(u0 + t du, v0 + t dv)` used to probe for a common factor.
const PROBE_LINES: [(i64, i64, i64, i64); 3] = [(3, 1, -2, 5), (-7, 2, 11, 3), (13, -3, 5, 7)];

impl<S: Scalar> UniversalInput<S> {
    /// Checks `sden != 0` and, in exact mode, that the six polynomials share
    /// no common factor. A common factor survives restriction to every line,
    /// so a constant gcd on any probe line proves coprimality. Float inputs
    /// are taken as coprime.
    pub fn new(
        a: BiPoly<S>,
        b: BiPoly<S>,
        c: BiPoly<S>,
        d: BiPoly<S>,
        rnum: BiPoly<S>,
        sden: BiPoly<S>,
    ) -> Result<Self> {
        if sden.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let input = Self {
            a,
            b,
            c,
            d,
            rnum,
            sden,
        };
        if S::EXACT && !input.coprime() {
            return Err(Error::NotCoprime);
        }
        Ok(input)
    }

    fn all(&self) -> [&BiPoly<S>; 6] {
        [&self.a, &self.b, &self.c, &self.d, &self.rnum, &self.sden]
    }

    fn coprime(&self) -> bool {
        PROBE_LINES.iter().any(|&(u0, du, v0, dv)| {
            let (u0, du, v0, dv) = (
                S::from_i64(u0),
                S::from_i64(du),
                S::from_i64(v0),
                S::from_i64(dv),
            );
            let g = self
                .all()
                .iter()
                .map(|p| p.restrict_to_line(&u0, &du, &v0, &dv))
                .fold(Poly::zero(), |acc, p| acc.gcd(&p));
            g.degree() == Some(0)
        })
    }
}

/// `phi` in `R^4` with `phi_1^2 + phi_2^2 + phi_3^2 = phi_4^2`, and the
/// surface `f = (phi_1, phi_2, phi_3) / delta` with `delta = a^2+b^2+c^2+d^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct UniversalParam<S> {
    pub phi: [BiRatFunc<S>; 4],
    pub f: [BiRatFunc<S>; 3],
    /// Set when the direction map `(u, v) -> k` has rank below two, so the
    /// image is a curve or a ray rather than a surface.
    pub degenerate: bool,
}

impl<S: Scalar> UniversalParam<S> {
    /// `phi_1^2 + phi_2^2 + phi_3^2 - phi_4^2` as a bivariate numerator.
    pub fn cone_defect(&self) -> BiPoly<S> {
        let [p1, p2, p3, p4] = &self.phi;
        let lhs = &(&p1.pow(2) + &p2.pow(2)) + &p3.pow(2);
        lhs.difference_numerator(&p4.pow(2))
    }

    /// `||f||^2 - (rnum / sden)^2` as a bivariate numerator.
    pub fn norm_defect(&self, input: &UniversalInput<S>) -> BiPoly<S> {
        let [f1, f2, f3] = &self.f;
        let lhs = &(&f1.pow(2) + &f2.pow(2)) + &f3.pow(2);
        let rho = BiRatFunc::new(input.rnum.clone(), input.sden.clone()).expect("checked");
        lhs.difference_numerator(&rho.pow(2))
    }
}

pub fn universal_conchoid_param<S: Scalar>(input: &UniversalInput<S>) -> Result<UniversalParam<S>> {
    let UniversalInput {
        a,
        b,
        c,
        d,
        rnum,
        sden,
    } = input;
    let two = S::two();
    let p = [
        (&(a * c) + &(b * d)).scale(&two),
        (&(b * c) - &(a * d)).scale(&two),
        &(&(a * a) + &(b * b)) - &(&(c * c) + &(d * d)),
        &(&(a * a) + &(b * b)) + &(&(c * c) + &(d * d)),
    ];
    let phi = p
        .clone()
        .map(|pi| BiRatFunc::new(rnum * &pi, sden.clone()).expect("nonzero sden"));
    let delta_den = sden * &p[3];
    let f = [0, 1, 2].map(|i| BiRatFunc::new(rnum * &p[i], delta_den.clone()));
    let [f1, f2, f3] = f;
    Ok(UniversalParam {
        phi,
        f: [f1?, f2?, f3?],
        degenerate: direction_degenerate(&p),
    })
}

/// Whether `k_u x k_v` vanishes identically for `k = (p1, p2, p3) / p4`.
fn direction_degenerate<S: Scalar>(p: &[BiPoly<S>; 4]) -> bool {
    // numerators of the partials of p_i / p4, sharing the denominator p4^2
    let ku: Vec<BiPoly<S>> = (0..3)
        .map(|i| &(&p[i].du() * &p[3]) - &(&p[i] * &p[3].du()))
        .collect();
    let kv: Vec<BiPoly<S>> = (0..3)
        .map(|i| &(&p[i].dv() * &p[3]) - &(&p[i] * &p[3].dv()))
        .collect();
    let cross = [
        &(&ku[1] * &kv[2]) - &(&ku[2] * &kv[1]),
        &(&ku[2] * &kv[0]) - &(&ku[0] * &kv[2]),
        &(&ku[0] * &kv[1]) - &(&ku[1] * &kv[0]),
    ];
    let scale = ku
        .iter()
        .chain(&kv)
        .map(BiPoly::max_norm)
        .fold(0.0, f64::max)
        .powi(2);
    cross.iter().all(|c| c.near_zero(scale))
}

/// Norm `sqrt(2) * factor` of a curve on the cone `x^2 + y^2 = z^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SqrtTwoMultiple<S> {
    pub factor: RatFunc<S>,
}

impl<S: Scalar> SqrtTwoMultiple<S> {
    /// The squared norm `2 factor^2`, rational in the backend.
    pub fn squared(&self) -> RatFunc<S> {
        self.factor.pow(2).scale(&S::two())
    }

    pub fn eval(&self, u: &S) -> Result<f64> {
        Ok(std::f64::consts::SQRT_2 * self.factor.eval(u)?.to_f64())
    }
}

/// The distance to the vertex of a curve on the unit cone, `sqrt(2) c_3`.
pub fn cone_distance_norm<S: Scalar>(c: &[RatFunc<S>; 3]) -> Result<SqrtTwoMultiple<S>> {
    let lhs = &c[0].pow(2) + &c[1].pow(2);
    if !lhs.identity_equal(&c[2].pow(2), DEFAULT_IDENTITY_TRIALS) {
        return Err(Error::NotOnCone);
    }
    Ok(SqrtTwoMultiple {
        factor: c[2].clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rat;

    type B = BiPoly<Rat>;

    fn r(n: i64) -> Rat {
        Rat::from_i64(n)
    }

    #[test]
    fn stereographic_sphere() {
        let input =
            UniversalInput::new(B::u(), B::v(), B::one(), B::zero(), B::one(), B::one()).unwrap();
        let out = universal_conchoid_param(&input).unwrap();
        assert!(out.cone_defect().is_zero());
        assert!(out.norm_defect(&input).is_zero());
        assert!(!out.degenerate);
        let k = [0, 1, 2].map(|i| out.f[i].eval(&r(1), &r(2)).unwrap());
        // (2u, 2v, u^2 + v^2 - 1) / (u^2 + v^2 + 1) at (1, 2)
        assert_eq!(
            k,
            [
                Rat::from_ratio(2, 6),
                Rat::from_ratio(4, 6),
                Rat::from_ratio(4, 6)
            ]
        );
    }

    #[test]
    fn constant_direction_is_flagged() {
        let rho = &B::u() + &B::one();
        let input =
            UniversalInput::new(B::one(), B::zero(), B::zero(), B::zero(), rho, B::one()).unwrap();
        let out = universal_conchoid_param(&input).unwrap();
        assert!(out.degenerate);
        assert!(out.cone_defect().is_zero());
        assert!(out.phi[0].num().is_zero() && out.phi[1].num().is_zero());
    }

    #[test]
    fn rejects_common_factor_and_zero_denominator() {
        let u = B::u();
        let uv = &u * &B::v();
        assert!(matches!(
            UniversalInput::new(
                u.clone(),
                uv.clone(),
                u.clone(),
                B::zero(),
                u.clone(),
                u.clone()
            ),
            Err(Error::NotCoprime)
        ));
        assert!(matches!(
            UniversalInput::new(u.clone(), uv, B::one(), B::zero(), u, B::zero()),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn cone_norms() {
        let p = |c: &[i64]| RatFunc::from_poly(Poly::<Rat>::from_i64(c));
        let gen = [p(&[0, 1]), p(&[]), p(&[0, 1])];
        let n = cone_distance_norm(&gen).unwrap();
        assert_eq!(n.factor, p(&[0, 1]));
        assert!((n.eval(&r(3)).unwrap() - 3.0 * 2f64.sqrt()).abs() < 1e-12);

        let den = Poly::from_i64(&[1, 0, 1]);
        let circle = [
            RatFunc::normalize(Poly::from_i64(&[1, 0, -1]), den.clone()).unwrap(),
            RatFunc::normalize(Poly::from_i64(&[0, 2]), den).unwrap(),
            p(&[1]),
        ];
        let n = cone_distance_norm(&circle).unwrap();
        assert!(n.squared().identity_equal(&p(&[2]), 0));

        assert!(matches!(
            cone_distance_norm(&[p(&[1]), p(&[1]), p(&[1])]),
            Err(Error::NotOnCone)
        ));
    }
}
