use serde::Serialize;
use serde_json::{Map, Value};

/// One verification check as emitted in JSON.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub params: Map<String, Value>,
    pub samples: usize,
    pub max_residual: f64,
    pub pass: bool,
    /// Seconds since the Unix epoch; left out for reproducible output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl VerificationReport {
    /// A check passes when `max_residual <= tol`; NaN never passes.
    pub fn from_residual(
        check_name: impl Into<String>,
        params: Map<String, Value>,
        samples: usize,
        max_residual: f64,
        tol: f64,
    ) -> Self {
        Self {
            check_name: check_name.into(),
            params,
            samples,
            max_residual,
            pass: max_residual <= tol,
            timestamp: None,
        }
    }

    /// A boolean check (e.g. an exact identity); the residual is 0 or 1.
    pub fn from_flag(
        check_name: impl Into<String>,
        params: Map<String, Value>,
        samples: usize,
        pass: bool,
    ) -> Self {
        Self {
            check_name: check_name.into(),
            params,
            samples,
            max_residual: if pass { 0.0 } else { 1.0 },
            pass,
            timestamp: None,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_fields() {
        let r = VerificationReport::from_residual("sphere", Map::new(), 10, 1e-12, 1e-9)
            .with_param("m", "25");
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["check_name"], "sphere");
        assert_eq!(v["params"]["m"], "25");
        assert_eq!(v["pass"], true);
        assert!(v.get("timestamp").is_none());
        let bad = VerificationReport::from_residual("x", Map::new(), 1, f64::NAN, 1.0);
        assert!(!bad.pass);
    }
}
