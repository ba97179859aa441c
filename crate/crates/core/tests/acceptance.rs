//! Acceptance criteria. Run with `--nocapture` to see one line per criterion.

use std::f64::consts::TAU;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sphere_conchoid::conchoid::{
    conchoid_surfaces, cone_distance_norm, implicit_sextic_relative_residual, quartic_profile,
    recover_canonical_tau, surface_polar, universal_conchoid_param, viviani_limit,
    viviani_shifted_profile, FamilyConfig, UniversalInput,
};
use sphere_conchoid::exactalg::{BiPoly, Poly, Rat, RatFunc, Scalar};
use sphere_conchoid::meshio::{obj_string, tessellate_revolution};
use sphere_conchoid::quadrics::{
    build_r3_pencil_matrices, build_r4_pencil, inverse_point, r4_charpoly_closed_form, ray_hits,
    sphere_quadric, SphereFocusConfig,
};

const CARRIER_TIME_LIMIT: Duration = Duration::from_secs(1);
const SEXTIC_TIME_LIMIT: Duration = Duration::from_secs(5);
const SEXTIC_SAMPLES: usize = 10_000;
const SEXTIC_TOL: f64 = 1e-9;
const CHARPOLY_TOL: f64 = 1e-12;
const SINGULAR_DET_TOL: f64 = 1e-10;
const APOLLONIUS_SAMPLES: usize = 1000;
const APOLLONIUS_TOL: f64 = 1e-12;
const SECANT_TOL: f64 = 1e-10;
const VIVIANI_DECAY: (f64, f64) = (5.0, 20.0);
const VIVIANI_TOL: f64 = 1e-12;
const FAMILY_SAMPLES: usize = 1000;
const FAMILY_TOL: f64 = 1e-9;
const CANONICAL_TOL: f64 = 1e-12;
const TAU_STAR_TOL: f64 = 1e-9;
const RANDOM_CONFIGS: usize = 20;
const UNIVERSAL_INPUTS: usize = 10;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// `m > r > 0`, both small-denominator rationals, bounded away from `m = r`.
fn random_exterior(rng: &mut impl Rng) -> SphereFocusConfig<Rat> {
    loop {
        let r = Rat::from_ratio(rng.gen_range(1..=40), rng.gen_range(1..=8));
        let m = Rat::from_ratio(rng.gen_range(1..=80), rng.gen_range(1..=8));
        if m.to_f64() > 1.05 * r.to_f64() {
            return SphereFocusConfig::new(m, r).unwrap();
        }
    }
}

fn carrier_identities() -> Outcome {
    let start = Instant::now();
    let cfg = SphereFocusConfig::<Rat>::new(Rat::from_i64(25), Rat::from_i64(24)).unwrap();
    let c = quartic_profile(&cfg).unwrap();
    let norm = c.norm_defect().is_zero();
    let sphere = c.quadric_defect(&sphere_quadric(&cfg)).is_zero();
    let took = start.elapsed();
    outcome(
        norm && sphere && took < CARRIER_TIME_LIMIT,
        format!("norm defect zero: {norm}, sphere defect zero: {sphere}, {took:.2?}"),
    )
}

fn sextic_reproduction() -> Outcome {
    let start = Instant::now();
    let cfg = SphereFocusConfig::new(1.5, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for d in [0.25, 0.5, 1.0] {
        let pair = conchoid_surfaces(&cfg, &d).unwrap();
        for s in [&pair.g1, &pair.g2] {
            let (lo, hi) = s.meridian_span();
            for _ in 0..SEXTIC_SAMPLES {
                let p = s
                    .eval_angles(rng.gen_range(lo..hi), rng.gen_range(0.0..TAU))
                    .unwrap();
                worst = worst.max(implicit_sextic_relative_residual(&p, d));
            }
        }
    }
    let took = start.elapsed();
    outcome(
        worst <= SEXTIC_TOL && took < SEXTIC_TIME_LIMIT,
        format!("max relative residual {worst:.2e} over 6 x {SEXTIC_SAMPLES} samples, {took:.2?}"),
    )
}

fn charpoly_closed_form() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    let mut exact = true;
    for _ in 0..RANDOM_CONFIGS {
        let cfg = random_exterior(&mut rng);
        exact &= build_r4_pencil(&cfg).unwrap().charpoly() == r4_charpoly_closed_form(&cfg);
        let f = cfg.to_f64();
        let got = build_r4_pencil(&f).unwrap().charpoly();
        let want = r4_charpoly_closed_form(&f);
        let scale = want.max_norm();
        for i in 0..=4 {
            let (g, w) = (coeff(&got, i), coeff(&want, i));
            worst = worst.max((g - w).abs() / scale);
        }
    }
    outcome(
        worst <= CHARPOLY_TOL && exact,
        format!("float relative deviation {worst:.2e}, exact match: {exact}"),
    )
}

fn coeff(p: &Poly<f64>, i: usize) -> f64 {
    p.coeffs().get(i).copied().unwrap_or(0.0)
}

fn singular_members() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let mut ranks_ok = true;
    for _ in 0..RANDOM_CONFIGS {
        let cfg = random_exterior(&mut rng).to_f64();
        let mats = build_r3_pencil_matrices(&cfg).unwrap();
        let g = cfg.gamma().unwrap();
        let fk = mats.pencil_fk();
        for lambda in [1.0 / cfg.m(), -1.0 / g] {
            worst = worst.max(fk.member(&lambda).det().abs());
        }
        ranks_ok &= [mats.l.rank(), mats.p.rank(), mats.k.rank()] == [3, 3, 3];
    }
    outcome(
        worst < SINGULAR_DET_TOL && ranks_ok,
        format!("max |det| {worst:.2e}, ranks of L, P, K all 3: {ranks_ok}"),
    )
}

fn norm(p: &[f64; 3]) -> f64 {
    (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
}

fn apollonius() -> Outcome {
    let (m, r) = (25.0, 24.0);
    let cfg = SphereFocusConfig::new(m, r).unwrap();
    let o2 = inverse_point(&cfg).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut ratio, mut secant) = (0.0f64, 0.0f64);
    let mut rays = 0;
    while rays < APOLLONIUS_SAMPLES {
        let p: [f64; 3] = rand_distr::Distribution::sample(&rand_distr::UnitSphere, &mut rng);
        let x = [m + r * p[0], r * p[1], r * p[2]];
        let to_o2 = norm(&[x[0] - o2[0], x[1], x[2]]);
        ratio = ratio.max((to_o2 - r / m * norm(&x)).abs());
        if let Some((d1, d2)) = ray_hits(&cfg, &x) {
            secant = secant.max((d1 * d2 - (m * m - r * r)).abs());
            rays += 1;
        }
    }
    outcome(
        ratio <= APOLLONIUS_TOL * m && secant <= SECANT_TOL * m * m,
        format!("ratio deviation {ratio:.2e}, secant deviation {secant:.2e}"),
    )
}

fn viviani_gap(m: f64) -> f64 {
    let shifted = viviani_shifted_profile(&SphereFocusConfig::new(m, 1.0).unwrap()).unwrap();
    let v = viviani_limit(1.0).unwrap();
    (0..64)
        .map(|i| {
            let t = TAU * i as f64 / 64.0;
            let (a, b) = (shifted.eval(t), v.eval(t));
            norm(&[a[0] - b[0], a[1] - b[1], a[2] - b[2]])
        })
        .fold(0.0, f64::max)
}

fn viviani() -> Outcome {
    let e = [10.0, 100.0, 1000.0].map(viviani_gap);
    // E decays like 1/m, so each tenfold step in m shrinks it by a factor near 10
    let decay = [e[0] / e[1], e[1] / e[2]];
    let decay_ok = decay
        .iter()
        .all(|q| (VIVIANI_DECAY.0..=VIVIANI_DECAY.1).contains(q));
    let v = viviani_limit(1.0).unwrap();
    let (mut n, mut cyl) = (0.0f64, 0.0f64);
    for i in 0..1000 {
        let x = v.eval(TAU * i as f64 / 1000.0);
        n = n.max((norm(&x) - 1.0).abs());
        cyl = cyl.max(((x[2] - 0.5).powi(2) + x[1] * x[1] - 0.25).abs());
    }
    outcome(
        decay_ok && n <= VIVIANI_TOL && cyl <= VIVIANI_TOL,
        format!(
            "E(10)/E(100) = {:.3}, E(100)/E(1000) = {:.3}, norm {n:.1e}, cylinder {cyl:.1e}",
            decay[0], decay[1]
        ),
    )
}

fn family() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut sphere, mut affinity) = (0.0f64, 0.0f64);
    for k in 0..RANDOM_CONFIGS {
        let cfg = random_exterior(&mut rng).to_f64();
        let g = cfg.gamma().unwrap();
        // tan tau spread over (-r/gamma, 0]
        let tan = -(cfg.r() / g) * k as f64 / RANDOM_CONFIGS as f64;
        let fc = FamilyConfig::new(&cfg, tan.atan()).unwrap();
        let t = fc.profile().unwrap();
        let q = sphere_quadric(&cfg);
        for i in 0..FAMILY_SAMPLES {
            let u = TAU * i as f64 / FAMILY_SAMPLES as f64;
            sphere = sphere.max(q.relative_residual(&t.eval(u)).unwrap());
            affinity = affinity.max(fc.norm_affinity_residual(&t, u).unwrap() / cfg.m());
        }
    }
    let cfg = SphereFocusConfig::new(25.0, 24.0).unwrap();
    let fc = FamilyConfig::from_cos_sin(&cfg, 0.8, -0.6).unwrap();
    let radius = fc.radius().unwrap();
    let t = fc.profile().unwrap();
    let canonical = (0..FAMILY_SAMPLES)
        .map(|i| {
            let u = TAU * i as f64 / FAMILY_SAMPLES as f64;
            (t.eval_norm(u) - (25.0 + 24.0 * u.sin())).abs()
        })
        .fold(0.0, f64::max);
    outcome(
        sphere <= FAMILY_TOL
            && affinity <= FAMILY_TOL
            && (radius - 1.0).abs() <= CANONICAL_TOL
            && canonical <= CANONICAL_TOL,
        format!(
            "sphere {sphere:.1e}, affinity {affinity:.1e}, R - 1 = {:.1e}, norm deviation {canonical:.1e}",
            radius - 1.0
        ),
    )
}

fn tau_star_recovery() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..RANDOM_CONFIGS {
        let cfg = random_exterior(&mut rng).to_f64();
        let tau = recover_canonical_tau(&cfg).unwrap();
        let l = FamilyConfig::new(&cfg, tau).unwrap().matrices().l;
        let want = build_r3_pencil_matrices(&cfg).unwrap().l;
        worst = worst.max(l.proportionality_deviation(&want).unwrap());
    }
    outcome(
        worst <= TAU_STAR_TOL,
        format!("max proportionality deviation {worst:.2e}"),
    )
}

fn random_bipoly(rng: &mut impl Rng) -> BiPoly<Rat> {
    let mut coeffs = vec![vec![Rat::from_i64(0); 4]; 4];
    for (i, row) in coeffs.iter_mut().enumerate() {
        for (j, c) in row.iter_mut().enumerate() {
            if i + j <= 3 {
                *c = Rat::from_i64(rng.gen_range(-5..=5));
            }
        }
    }
    BiPoly::new(coeffs)
}

fn universal() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut zero = 0;
    let mut tried = 0;
    while tried < UNIVERSAL_INPUTS {
        let p: Vec<BiPoly<Rat>> = (0..6).map(|_| random_bipoly(&mut rng)).collect();
        let Ok(input) = UniversalInput::new(
            p[0].clone(),
            p[1].clone(),
            p[2].clone(),
            p[3].clone(),
            p[4].clone(),
            p[5].clone(),
        ) else {
            continue;
        };
        tried += 1;
        if universal_conchoid_param(&input)
            .unwrap()
            .cone_defect()
            .is_zero()
        {
            zero += 1;
        }
    }
    outcome(
        zero == UNIVERSAL_INPUTS,
        format!("{zero}/{UNIVERSAL_INPUTS} cone defects are the zero polynomial"),
    )
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::from_ratio(n, d)
}

fn poly(c: &[Rat]) -> Poly<Rat> {
    Poly::new(c.to_vec())
}

fn cone_norms() -> Outcome {
    let t = RatFunc::from_poly(poly(&[rat(0, 1), rat(1, 1)]));
    let generator = [t.clone(), RatFunc::zero(), t];
    let den = poly(&[rat(1, 1), rat(0, 1), rat(1, 1)]);
    let circle = [
        RatFunc::normalize(poly(&[rat(1, 1), rat(0, 1), rat(-1, 1)]), den.clone()).unwrap(),
        RatFunc::normalize(poly(&[rat(0, 1), rat(2, 1)]), den).unwrap(),
        RatFunc::constant(rat(1, 1)),
    ];
    // the carrier lies on the cone L; rotating the cone axis onto z and
    // rescaling the aperture yields the unit cone
    let cfg = SphereFocusConfig::<Rat>::new(Rat::from_i64(25), Rat::from_i64(24)).unwrap();
    let c = quartic_profile(&cfg).unwrap();
    let lifted = [
        &c.x.scale(&rat(3, 5)) - &c.z.scale(&rat(4, 5)),
        c.y.clone(),
        (&c.x.scale(&rat(4, 5)) + &c.z.scale(&rat(3, 5))).scale(&rat(3, 4)),
    ];
    let mut lines = Vec::new();
    let mut pass = true;
    for (name, curve) in [
        ("generator", generator),
        ("circle", circle),
        ("lifted carrier", lifted),
    ] {
        let ok = match cone_distance_norm(&curve) {
            Ok(n) => n
                .squared()
                .difference_numerator(&curve[2].pow(2).scale(&Rat::from_i64(2)))
                .is_zero(),
            Err(_) => false,
        };
        pass &= ok;
        lines.push(format!("{name}: {ok}"));
    }
    outcome(pass, lines.join(", "))
}

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/sphere_25_24_4x4.obj")
}

fn sphere_mesh_obj() -> String {
    let cfg = SphereFocusConfig::<Rat>::new(Rat::from_i64(25), Rat::from_i64(24)).unwrap();
    let mesh = tessellate_revolution(&surface_polar(&cfg).unwrap(), 4, 4).unwrap();
    assert_eq!((mesh.vertices.len(), mesh.triangles.len()), (20, 32));
    obj_string(&mesh)
}

fn obj_determinism() -> Outcome {
    let (a, b) = (sphere_mesh_obj(), sphere_mesh_obj());
    let golden = std::fs::read_to_string(golden_path()).unwrap_or_default();
    outcome(
        a == b && a == golden,
        format!(
            "repeat identical: {}, golden identical: {}",
            a == b,
            a == golden
        ),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 11] = [
        ("exact carrier identities", carrier_identities),
        ("conchoid sextic", sextic_reproduction),
        ("characteristic polynomial", charpoly_closed_form),
        ("singular members", singular_members),
        ("apollonius and secant", apollonius),
        ("viviani limit", viviani),
        ("tau family", family),
        ("canonical tau recovery", tau_star_recovery),
        ("universal parameterization", universal),
        ("cone distance norm", cone_norms),
        ("obj determinism", obj_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{verdict}] {name}: {}", i + 1, o.detail);
        if !o.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

/// Regenerates the golden mesh: `BLESS=1 cargo test --test acceptance bless`.
#[test]
fn bless() {
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(golden_path(), sphere_mesh_obj()).unwrap();
    }
}
