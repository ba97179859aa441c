//! Curve sampling, surface tessellation and OBJ/CSV/JSON output.

mod mesh;
mod report;
mod sample;

pub use mesh::{obj_string, tessellate_revolution, write_obj, TriMesh, RESIDUAL_GATE};
pub use report::VerificationReport;
pub use sample::{sample_curve, sample_curve_with, CurveSample, Polyline3, Sampleable, CSV_HEADER};

/// Shortest decimal text that parses back to the same `f64`; `-0` prints
/// as `0`. Magnitudes outside `[1e-5, 1e16)` use exponent notation.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if (1e-5..1e16).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::format_float;

    #[test]
    fn floats_round_trip() {
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(13.48), "13.48");
        assert_eq!(format_float(9.4e-14), "9.4e-14");
        for x in [0.1 + 0.2, 1.0 / 3.0, 6.02e23, -1e-300, f64::MAX] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
    }
}
