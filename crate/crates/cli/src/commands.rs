use std::f64::consts::TAU;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};
use sphere_conchoid::conchoid::{
    conchoid_surfaces, quartic_profile, surface_polar, FamilyConfig, PolarSurface,
};
use sphere_conchoid::exactalg::{Rat, Scalar};
use sphere_conchoid::meshio::{sample_curve, tessellate_revolution, write_obj, Polyline3, TriMesh};
use sphere_conchoid::quadrics::{
    build_r3_pencil_matrices, build_r4_pencil, default_root_interval, sphere_quadric, Regime,
    SphereFocusConfig,
};

use crate::args::{CurveArgs, Format, Mode, PencilArgs, Sign, SphereArgs, SurfaceArgs};
use crate::{open_sink, CliError};

/// Parameter window `[-U, U]` for sampling the rational quartic.
const CURVE_U_RANGE: f64 = 4.0;

pub fn config(a: &SphereArgs) -> Result<SphereFocusConfig<Rat>, CliError> {
    Ok(SphereFocusConfig::new(a.m.clone(), a.r.clone())?)
}

pub fn params(a: &SphereArgs) -> Map<String, Value> {
    let mut p = Map::new();
    p.insert("m".into(), a.m.to_string().into());
    p.insert("r".into(), a.r.to_string().into());
    p.insert(
        "mode".into(),
        match a.mode {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
        .into(),
    );
    p
}

fn write_json(path: &Path, value: &Value) -> Result<(), CliError> {
    let mut sink = open_sink(path)?;
    serde_json::to_writer_pretty(&mut sink, value).map_err(std::io::Error::from)?;
    writeln!(sink)?;
    sink.flush()?;
    Ok(())
}

pub fn curve(a: &CurveArgs) -> Result<bool, CliError> {
    if a.format == Format::Obj {
        return Err(CliError::Usage("curve output is csv or json".into()));
    }
    let cfg = config(&a.sphere)?;
    let fcfg = cfg.to_f64();
    let oracle = sphere_quadric(&fcfg);
    let line = match (a.tau, a.sphere.mode) {
        (Some(_), Mode::Exact) => {
            return Err(CliError::Usage(
                "the tau family is trigonometric; use --mode float".into(),
            ))
        }
        (Some(tau), Mode::Float) => {
            let fc = FamilyConfig::new(&fcfg, tau)?;
            sample_curve(&fc.profile()?, 0.0, TAU, a.samples, &oracle)?
        }
        (None, Mode::Exact) => sample_curve(
            &quartic_profile(&cfg)?,
            -CURVE_U_RANGE,
            CURVE_U_RANGE,
            a.samples,
            &oracle,
        )?,
        (None, Mode::Float) => sample_curve(
            &quartic_profile(&fcfg)?,
            -CURVE_U_RANGE,
            CURVE_U_RANGE,
            a.samples,
            &oracle,
        )?,
    };
    write_polyline(&line, a.format, &a.out)?;
    let worst = line
        .points
        .iter()
        .map(|p| oracle.relative_residual(&p.point))
        .try_fold(0.0f64, |acc, r| r.map(|r| acc.max(r)))?;
    if !(worst <= a.sphere.tol) {
        eprintln!(
            "conchoid: relative sphere residual {worst:e} exceeds tolerance {:e}",
            a.sphere.tol
        );
        return Ok(false);
    }
    Ok(true)
}

fn write_polyline(line: &Polyline3, format: Format, out: &Path) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            line.write_csv(open_sink(out)?)?;
            Ok(())
        }
        _ => {
            let rows: Vec<Value> = line
                .points
                .iter()
                .map(|p| {
                    json!({
                        "u": p.u, "x": p.point[0], "y": p.point[1], "z": p.point[2],
                        "norm": p.norm, "residual": p.residual,
                    })
                })
                .collect();
            write_json(out, &Value::Array(rows))
        }
    }
}

pub fn surface(a: &SurfaceArgs) -> Result<bool, CliError> {
    if a.format != Format::Obj {
        return Err(CliError::Usage("surface output is obj".into()));
    }
    let cfg = config(&a.sphere)?;
    match a.sphere.mode {
        Mode::Exact => surface_meshes(&cfg, &a.d, a),
        Mode::Float => surface_meshes(&cfg.to_f64(), &a.d.to_f64(), a),
    }
}

fn surface_meshes<S: Scalar>(
    cfg: &SphereFocusConfig<S>,
    d: &S,
    a: &SurfaceArgs,
) -> Result<bool, CliError> {
    let parts: Vec<(&str, PolarSurface<S>)> = if d.is_zero() {
        vec![("base", surface_polar(cfg)?)]
    } else {
        let pair = conchoid_surfaces(cfg, d)?;
        match a.sign {
            Sign::Plus => vec![("g1", pair.g1)],
            Sign::Minus => vec![("g2", pair.g2)],
            Sign::Both => vec![("g1", pair.g1), ("g2", pair.g2)],
        }
    };
    let meshes: Vec<(&str, TriMesh)> = parts
        .iter()
        .map(|(label, s)| Ok((*label, tessellate_revolution(s, a.nu, a.nv)?)))
        .collect::<Result<_, CliError>>()?;
    let single = meshes.len() == 1;
    if !single && a.out.as_os_str() == "-" {
        return Err(CliError::Usage(
            "two components need a file path for --out, not '-'".into(),
        ));
    }
    for (label, mesh) in &meshes {
        let path = if single {
            a.out.clone()
        } else {
            component_path(&a.out, label)
        };
        write_obj(mesh, open_sink(&path)?)?;
        if path.as_os_str() != "-" {
            eprintln!(
                "wrote {} ({} vertices, {} triangles)",
                path.display(),
                mesh.vertices.len(),
                mesh.triangles.len()
            );
        }
    }
    Ok(true)
}

/// `dir/stem.obj` -> `dir/stem_<label>.obj`.
fn component_path(out: &Path, label: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy())
        .unwrap_or_default();
    let ext = out
        .extension()
        .map(|s| s.to_string_lossy())
        .unwrap_or("obj".into());
    out.with_file_name(format!("{stem}_{label}.{ext}"))
}

pub fn pencil(a: &PencilArgs) -> Result<bool, CliError> {
    if a.format != Format::Json {
        return Err(CliError::Usage("pencil output is json".into()));
    }
    let cfg = config(&a.sphere)?;
    let mut body = match a.sphere.mode {
        Mode::Exact => pencil_reports(&cfg)?,
        Mode::Float => pencil_reports(&cfg.to_f64())?,
    };
    let mut p = params(&a.sphere);
    p.append(&mut body);
    write_json(&a.out, &Value::Object(p))?;
    Ok(true)
}

fn pencil_reports<S: Scalar>(cfg: &SphereFocusConfig<S>) -> Result<Map<String, Value>, CliError> {
    let bounds = |c: &SphereFocusConfig<S>| {
        let (lo, hi) = default_root_interval(c);
        (S::from_f64(lo), S::from_f64(hi))
    };
    let (lo, hi) = bounds(cfg);
    let r4 = build_r4_pencil(cfg)?.report("A+tD", lo, hi)?;
    let (aux, frame) = if cfg.regime() == Regime::Interior {
        (cfg.exchanged()?, "inverse_point")
    } else {
        (cfg.clone(), "focus")
    };
    let (lo, hi) = bounds(&aux);
    let r3 = build_r3_pencil_matrices(&aux)?
        .pencil_fk()
        .report("F+tK", lo, hi)?;
    let mut out = Map::new();
    out.insert("r3_frame".into(), frame.into());
    out.insert(
        "pencils".into(),
        serde_json::to_value([r4, r3]).expect("serializable"),
    );
    Ok(out)
}
