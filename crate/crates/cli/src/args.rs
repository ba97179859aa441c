use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sphere_conchoid::exactalg::{parse_rat, Rat};

#[derive(Debug, Parser)]
#[command(
    name = "conchoid",
    version,
    about = "Rational polar representations of spheres and their conchoid surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the carrier quartic (or a tau-family member) to CSV or JSON.
    Curve(CurveArgs),
    /// Tessellate the sphere or its conchoid components to OBJ.
    Surface(SurfaceArgs),
    /// Run verification suites and emit a JSON report.
    Verify(VerifyArgs),
    /// Report the characteristic polynomials and singular members of the pencils.
    Pencil(PencilArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sign {
    Plus,
    Minus,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Obj,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Pencils,
    Apollonius,
    Viviani,
    Family,
    All,
}

/// Parses `25`, `3/2`, `-0.5` or `1e-3` exactly.
pub fn rational(text: &str) -> Result<Rat, String> {
    parse_rat(text).ok_or_else(|| format!("'{text}' is not a decimal or rational literal"))
}

#[derive(Clone, Debug, Args)]
pub struct SphereArgs {
    /// Center abscissa of the sphere (the focus is the origin).
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub m: Rat,
    /// Sphere radius.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub r: Rat,
    #[arg(long, value_enum, default_value_t = Mode::Float)]
    pub mode: Mode,
    /// Relative tolerance for pass/fail decisions.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Clone, Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub sphere: SphereArgs,
    /// Family angle tau in radians; selects the tau-family member.
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<f64>,
    #[arg(long, default_value_t = 101)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output path, or '-' for standard output.
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
}

#[derive(Clone, Debug, Args)]
pub struct SurfaceArgs {
    #[command(flatten)]
    pub sphere: SphereArgs,
    /// Conchoid distance.
    #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "0")]
    pub d: Rat,
    #[arg(long, value_enum, default_value_t = Sign::Both)]
    pub sign: Sign,
    /// Meridian subdivisions.
    #[arg(long, default_value_t = 32)]
    pub nu: usize,
    /// Rotational subdivisions.
    #[arg(long, default_value_t = 32)]
    pub nv: usize,
    #[arg(long, value_enum, default_value_t = Format::Obj)]
    pub format: Format,
    /// Output path; with two components, `<stem>_g1.obj` and `<stem>_g2.obj`
    /// are written next to it.
    #[arg(long, default_value = "conchoid.obj")]
    pub out: PathBuf,
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub sphere: SphereArgs,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Random samples per sampled check.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
    /// Leave the timestamp out of the report.
    #[arg(long)]
    pub no_timestamp: bool,
}

#[derive(Clone, Debug, Args)]
pub struct PencilArgs {
    #[command(flatten)]
    pub sphere: SphereArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
}
