//! The `verify` suites. Each check becomes one JSON report.

use std::f64::consts::TAU;
use std::time::{SystemTime, UNIX_EPOCH};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitSphere};
use serde_json::{Map, Value};
use sphere_conchoid::conchoid::{
    quartic_profile_trig, recover_canonical_tau, surface_polar, viviani_limit,
    viviani_shifted_profile, FamilyConfig, SurfaceKind,
};
use sphere_conchoid::exactalg::{Rat, Scalar};
use sphere_conchoid::meshio::VerificationReport;
use sphere_conchoid::quadrics::{
    build_r3_pencil_matrices, build_r4_pencil, default_root_interval, inverse_point,
    r4_charpoly_closed_form, ray_hits, sphere_quadric, Quadric, Regime, SphereFocusConfig,
};
use sphere_conchoid::Error;

use crate::args::{Format, Mode, Suite, VerifyArgs};
use crate::commands::{config, params};
use crate::CliError;

const SEED: u64 = 0x5eed_c0c0;

struct Ctx<'a> {
    exact: SphereFocusConfig<Rat>,
    float: SphereFocusConfig<f64>,
    args: &'a VerifyArgs,
    params: Map<String, Value>,
}

impl Ctx<'_> {
    fn params(&self, suite: &str) -> Map<String, Value> {
        let mut p = self.params.clone();
        p.insert("suite".into(), suite.into());
        let exact_suite = matches!(suite, "identities" | "pencils");
        let exact = exact_suite && self.args.sphere.mode == Mode::Exact;
        p.insert(
            "arithmetic".into(),
            if exact { "exact" } else { "float" }.into(),
        );
        p
    }

    fn tol(&self) -> f64 {
        self.args.sphere.tol
    }

    fn samples(&self) -> usize {
        self.args.samples.max(1)
    }

    /// The configuration the exterior-only constructions run on: the focus
    /// itself, or the inverse point for an interior focus.
    fn exterior(&self) -> Result<(SphereFocusConfig<f64>, &'static str), CliError> {
        if self.float.regime() == Regime::Interior {
            Ok((self.float.exchanged()?, "inverse_point"))
        } else {
            self.float.require_exterior()?;
            Ok((self.float.clone(), "focus"))
        }
    }
}

pub fn verify(a: &VerifyArgs) -> Result<bool, CliError> {
    if a.format != Format::Json {
        return Err(CliError::Usage("verify output is json".into()));
    }
    let exact = config(&a.sphere)?;
    let ctx = Ctx {
        float: exact.to_f64(),
        exact,
        args: a,
        params: params(&a.sphere),
    };
    let suites = match a.suite {
        Suite::All => vec![
            Suite::Identities,
            Suite::Pencils,
            Suite::Apollonius,
            Suite::Viviani,
            Suite::Family,
        ],
        s => vec![s],
    };
    let mut reports = Vec::new();
    for suite in suites {
        match run_suite(suite, &ctx) {
            Ok(mut r) => reports.append(&mut r),
            Err(CliError::Lib(
                e @ (Error::DegenerateConfig(_) | Error::FocusAtCenter | Error::NotOnSphereCase),
            )) if a.suite == Suite::All => {
                eprintln!("conchoid: skipping {} suite: {e}", suite_name(suite));
            }
            Err(e) => return Err(e),
        }
    }
    if !a.no_timestamp {
        let now = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        for r in &mut reports {
            r.timestamp = Some(now);
        }
    }
    let value = serde_json::to_value(&reports).expect("serializable");
    let mut sink = crate::open_sink(&a.out)?;
    serde_json::to_writer_pretty(&mut sink, &value).map_err(std::io::Error::from)?;
    writeln!(sink)?;
    sink.flush()?;
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.check_name.as_str())
        .collect();
    if !failed.is_empty() {
        eprintln!("conchoid: failed checks: {}", failed.join(", "));
    }
    Ok(failed.is_empty())
}

use std::io::Write;

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Identities => "identities",
        Suite::Pencils => "pencils",
        Suite::Apollonius => "apollonius",
        Suite::Viviani => "viviani",
        Suite::Family => "family",
        Suite::All => "all",
    }
}

fn run_suite(suite: Suite, ctx: &Ctx) -> Result<Vec<VerificationReport>, CliError> {
    let exact = ctx.args.sphere.mode == Mode::Exact;
    match suite {
        Suite::Identities if exact => identities(&ctx.exact, ctx),
        Suite::Identities => identities(&ctx.float, ctx),
        Suite::Pencils if exact => pencils(&ctx.exact, ctx),
        Suite::Pencils => pencils(&ctx.float, ctx),
        Suite::Apollonius => apollonius(ctx),
        Suite::Viviani => viviani(ctx),
        Suite::Family => family(ctx),
        Suite::All => unreachable!("expanded by the caller"),
    }
}

fn norm(p: &[f64; 3]) -> f64 {
    (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
}

fn max_relative_residual(q: &Quadric<f64>, points: &[[f64; 3]]) -> Result<f64, CliError> {
    let mut worst = 0.0f64;
    for p in points {
        worst = worst.max(q.relative_residual(p)?);
    }
    Ok(worst)
}

fn identities<S: Scalar>(
    cfg: &SphereFocusConfig<S>,
    ctx: &Ctx,
) -> Result<Vec<VerificationReport>, CliError> {
    let s = surface_polar(cfg)?;
    let mut p = ctx.params("identities");
    p.insert(
        "surface".into(),
        serde_json::to_value(s.kind).expect("serializable"),
    );
    let mut out = Vec::new();
    if s.kind == SurfaceKind::Quartic {
        out.push(VerificationReport::from_flag(
            "carrier_norm_identity",
            p.clone(),
            0,
            s.profile.norm_identity_holds(),
        ));
        out.push(VerificationReport::from_flag(
            "carrier_sphere_identity",
            p.clone(),
            0,
            s.profile.lies_on_sphere(cfg),
        ));
        if cfg.regime() == Regime::Exterior {
            let l = build_r3_pencil_matrices(cfg)?.l;
            out.push(VerificationReport::from_flag(
                "carrier_on_cone_l",
                p.clone(),
                0,
                s.profile.lies_on(&l),
            ));
        }
    }
    out.push(VerificationReport::from_flag(
        "polar_norm_identity",
        p.clone(),
        0,
        s.polar_identity_holds(),
    ));

    let f = s.to_f64();
    let q = sphere_quadric(&ctx.float);
    let scale = ctx.float.m() + ctx.float.r();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut points = Vec::with_capacity(ctx.samples());
    let mut norm_err = 0.0f64;
    for _ in 0..ctx.samples() {
        let (u, v) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let x = f.eval(&u, &v)?;
        norm_err = norm_err.max((norm(&x) - f.radius().eval(&u)?).abs() / scale);
        points.push(x);
    }
    out.push(VerificationReport::from_residual(
        "surface_sphere_residual",
        p.clone(),
        points.len(),
        max_relative_residual(&q, &points)?,
        ctx.tol(),
    ));
    out.push(VerificationReport::from_residual(
        "surface_radius_is_distance",
        p,
        points.len(),
        norm_err,
        ctx.tol(),
    ));
    Ok(out)
}

fn rel_coeff_deviation<S: Scalar>(a: &[S], b: &[S]) -> f64 {
    let n = a.len().max(b.len());
    let get = |v: &[S], i: usize| v.get(i).map(Scalar::to_f64).unwrap_or(0.0);
    let scale = (0..n)
        .map(|i| get(b, i).abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    (0..n)
        .map(|i| (get(a, i) - get(b, i)).abs())
        .fold(0.0, f64::max)
        / scale
}

fn pencils<S: Scalar>(
    cfg: &SphereFocusConfig<S>,
    ctx: &Ctx,
) -> Result<Vec<VerificationReport>, CliError> {
    let p = ctx.params("pencils");
    let tol = ctx.tol();
    let mut out = Vec::new();

    let pencil = build_r4_pencil(cfg)?;
    let cp = pencil.charpoly();
    let expected = r4_charpoly_closed_form(cfg);
    out.push(if S::EXACT {
        VerificationReport::from_flag("r4_charpoly", p.clone(), 1, cp == expected)
    } else {
        VerificationReport::from_residual(
            "r4_charpoly",
            p.clone(),
            1,
            rel_coeff_deviation(cp.coeffs(), expected.coeffs()),
            tol,
        )
    });

    let (lo, hi) = default_root_interval(cfg);
    let members = pencil.singular_members(S::from_f64(lo), S::from_f64(hi))?;
    let fcfg = cfg.to_f64();
    let t2 = fcfg.r() * fcfg.r() / fcfg.gamma_sq();
    let mut want = vec![-1.0, 0.0, t2];
    want.sort_by(f64::total_cmp);
    let got: Vec<f64> = members.iter().map(|(t, _)| t.to_f64()).collect();
    let ranks: Vec<usize> = members.iter().map(|(_, q)| q.rank()).collect();
    let root_err = if got.len() == want.len() {
        got.iter()
            .zip(&want)
            .map(|(g, w)| (g - w).abs() / w.abs().max(1.0))
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    let singular = ranks.iter().all(|&r| r < 5);
    out.push(
        VerificationReport::from_residual(
            "r4_singular_members",
            p.clone(),
            got.len(),
            if singular { root_err } else { f64::INFINITY },
            tol,
        )
        .with_param("roots", got)
        .with_param("ranks", ranks),
    );

    let (aux, frame) = if cfg.regime() == Regime::Interior {
        (cfg.exchanged()?, "inverse_point")
    } else {
        (cfg.clone(), "focus")
    };
    let mats = build_r3_pencil_matrices(&aux)?;
    let g = aux.gamma()?;
    let m = aux.m().clone();
    let fk = mats.pencil_fk();
    let lambdas = [S::one() / m.clone(), -(S::one() / g.clone())];
    let mut det_err = 0.0f64;
    for l in &lambdas {
        let q = fk.member(l);
        let frob = q.frobenius_norm().max(f64::MIN_POSITIVE);
        det_err = det_err.max(q.det().to_f64().abs() / frob.powi(4));
    }
    let (lo, hi) = default_root_interval(&aux);
    let roots: Vec<f64> = fk
        .singular_members(S::from_f64(lo), S::from_f64(hi))?
        .iter()
        .map(|(t, _)| t.to_f64())
        .collect();
    let want = lambdas.iter().map(Scalar::to_f64);
    let found = want.clone().all(|w| {
        roots
            .iter()
            .any(|r| (r - w).abs() <= 1e-9 * w.abs().max(1.0))
    });
    out.push(
        VerificationReport::from_residual(
            "r3_singular_members",
            p.clone(),
            lambdas.len(),
            if found { det_err } else { f64::INFINITY },
            tol,
        )
        .with_param("frame", frame)
        .with_param("roots", roots),
    );
    let ranks = [mats.l.rank(), mats.p.rank(), mats.k.rank()];
    out.push(
        VerificationReport::from_flag("r3_cone_ranks", p.clone(), 3, ranks == [3, 3, 3])
            .with_param("frame", frame)
            .with_param("ranks_l_p_k", ranks.to_vec()),
    );
    let l = mats.f.scale(&g).add_scaled(&-S::one(), &mats.k)?;
    let pc = mats.f.scale(&m).add(&mats.k)?;
    out.push(
        if S::EXACT {
            VerificationReport::from_flag("r3_member_relations", p, 2, l == mats.l && pc == mats.p)
        } else {
            let dev = l
                .proportionality_deviation(&mats.l)?
                .max(pc.proportionality_deviation(&mats.p)?);
            VerificationReport::from_residual("r3_member_relations", p, 2, dev, tol)
        }
        .with_param("frame", frame),
    );
    Ok(out)
}

fn apollonius(ctx: &Ctx) -> Result<Vec<VerificationReport>, CliError> {
    let p = ctx.params("apollonius");
    let c = &ctx.float;
    let o2 = inverse_point(c)?;
    let (m, r) = (*c.m(), *c.r());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let (mut ratio_err, mut secant_err) = (0.0f64, 0.0f64);
    let mut rays = 0;
    for _ in 0..ctx.samples() {
        let dir: [f64; 3] = UnitSphere.sample(&mut rng);
        let x = [m + r * dir[0], r * dir[1], r * dir[2]];
        let d_o = norm(&x);
        let d_o2 = norm(&[x[0] - o2[0], x[1], x[2]]);
        ratio_err = ratio_err.max((d_o2 - r / m * d_o).abs() / m);
        if d_o > 0.0 {
            if let Some((d1, d2)) = ray_hits(c, &x) {
                secant_err = secant_err.max((d1 * d2 - c.gamma_sq()).abs() / (m * m));
                rays += 1;
            }
        }
    }
    Ok(vec![
        VerificationReport::from_residual(
            "apollonius_ratio",
            p.clone(),
            ctx.samples(),
            ratio_err,
            ctx.tol(),
        ),
        VerificationReport::from_residual("secant_product", p, rays, secant_err, ctx.tol()),
    ])
}

/// Largest deviation of the curve seen from `O'` from Viviani's curve.
fn viviani_gap(m: f64, r: f64) -> Result<f64, CliError> {
    let shifted = viviani_shifted_profile(&SphereFocusConfig::new(m, r)?)?;
    let v = viviani_limit(r)?;
    Ok((0..64)
        .map(|i| {
            let t = TAU * i as f64 / 64.0;
            let (a, b) = (shifted.eval(t), v.eval(t));
            norm(&[a[0] - b[0], a[1] - b[1], a[2] - b[2]])
        })
        .fold(0.0, f64::max))
}

fn viviani(ctx: &Ctx) -> Result<Vec<VerificationReport>, CliError> {
    let p = ctx.params("viviani");
    let r = *ctx.float.r();
    let gaps = [10.0, 100.0, 1000.0].map(|k| viviani_gap(k * r, r));
    let [e1, e2, e3] =
        [&gaps[0], &gaps[1], &gaps[2]].map(|g| g.as_ref().map(|x| *x).unwrap_or(f64::NAN));
    let ratios = [e1 / e2, e2 / e3];
    let decays = ratios.iter().all(|q| (5.0..=20.0).contains(q));
    let v = viviani_limit(r)?;
    let (mut norm_err, mut cyl_err) = (0.0f64, 0.0f64);
    for i in 0..ctx.samples() {
        let t = TAU * i as f64 / ctx.samples() as f64;
        let x = v.eval(t);
        norm_err = norm_err.max((norm(&x) - r).abs() / r);
        cyl_err =
            cyl_err.max(((x[2] - r / 2.0).powi(2) + x[1] * x[1] - r * r / 4.0).abs() / (r * r));
    }
    Ok(vec![
        VerificationReport::from_flag("viviani_convergence", p.clone(), 64, decays)
            .with_param("ratios", ratios.to_vec()),
        VerificationReport::from_residual(
            "viviani_norm",
            p.clone(),
            ctx.samples(),
            norm_err,
            ctx.tol(),
        ),
        VerificationReport::from_residual("viviani_cylinder", p, ctx.samples(), cyl_err, ctx.tol()),
    ])
}

fn family(ctx: &Ctx) -> Result<Vec<VerificationReport>, CliError> {
    let (c, frame) = ctx.exterior()?;
    let mut p = ctx.params("family");
    p.insert("frame".into(), frame.into());
    let tol = ctx.tol();
    let (m, r) = (*c.m(), *c.r());
    let g = c.gamma_f64().expect("exterior");

    let tau_star = recover_canonical_tau(&c)?;
    let fc = FamilyConfig::new(&c, tau_star)?;
    let l = build_r3_pencil_matrices(&c)?.l;
    let dev = fc.matrices().l.proportionality_deviation(&l)?;
    let canon = fc.profile()?;
    let trig = quartic_profile_trig(&c)?;
    let norm_dev = ((canon.norm.0 - trig.norm.0).abs() + (canon.norm.1 - trig.norm.1).abs()) / m;

    let sphere = sphere_quadric(&c);
    let lower = -(r / g).atan();
    let n = ctx.samples();
    let (mut sph, mut aff, mut plane, mut quad) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for k in 0..20 {
        let tau = lower * (k as f64 + 0.5) / 20.0;
        let fc = FamilyConfig::new(&c, tau)?;
        let t = fc.profile()?;
        let mats = fc.matrices();
        let kq = mats.k.as_ref().expect("sin tau != 0 inside the range");
        let a = fc.axis();
        for i in 0..n {
            let u = TAU * i as f64 / n as f64;
            let x = t.eval(u);
            sph = sph.max(sphere.relative_residual(&x)?);
            aff = aff.max(fc.norm_affinity_residual(&t, u)? / m);
            plane =
                plane.max((a[0] * x[0] + a[2] * x[2] - fc.cos_tau() * t.eval_norm(u)).abs() / m);
            for q in [&mats.l, &mats.p, kq] {
                quad = quad.max(q.relative_residual(&x)?);
            }
        }
    }
    let checks = [
        ("family_canonical_cone", 1, dev),
        ("family_canonical_norm", 1, norm_dev),
        ("family_sphere_residual", 20 * n, sph),
        ("family_norm_affinity", 20 * n, aff),
        ("family_plane_membership", 20 * n, plane),
        ("family_quadric_membership", 20 * n, quad),
    ];
    Ok(checks
        .into_iter()
        .map(|(name, samples, res)| {
            VerificationReport::from_residual(name, p.clone(), samples, res, tol)
        })
        .collect())
}
