use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordResidual {
    pub word: String,
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
}

/// Result of one verification suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub z_points: Vec<f64>,
    pub max_residual: f64,
    pub per_word: Vec<WordResidual>,
    #[serde(default)]
    pub tolerance: f64,
    #[serde(default)]
    pub passed: bool,
    /// First entry, in insertion order, above the tolerance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<WordResidual>,
}

impl Report {
    pub fn new(check: &str, n: usize, z_points: Vec<f64>, tolerance: f64) -> Report {
        Report {
            check: check.into(),
            n,
            z_points,
            max_residual: 0.0,
            per_word: Vec::new(),
            tolerance,
            passed: true,
            first_violation: None,
        }
    }

    /// Records a residual; NaN counts as a failure.
    pub fn push(&mut self, word: impl ToString, z: Option<f64>, residual: f64) {
        if residual > self.max_residual || residual.is_nan() {
            self.max_residual = residual;
        }
        let entry = WordResidual {
            word: word.to_string(),
            residual,
            z,
        };
        if !(residual <= self.tolerance) {
            self.passed = false;
            if self.first_violation.is_none() {
                self.first_violation = Some(entry.clone());
            }
        }
        self.per_word.push(entry);
    }

    pub fn worst(&self) -> Option<&WordResidual> {
        self.per_word
            .iter()
            .fold(None, |best: Option<&WordResidual>, r| match best {
                Some(b) if !(r.residual > b.residual) && !r.residual.is_nan() => Some(b),
                _ => Some(r),
            })
    }

    pub fn merge(&mut self, other: Report) {
        for r in other.per_word {
            self.push(r.word, r.z, r.residual);
        }
        self.passed &= other.passed;
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}
