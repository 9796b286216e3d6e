//! Extended multiple polylogarithms and multiple zeta values in double
//! precision.
//!
//! Evaluation uses two charts: the Taylor series around 0 on `|z| ≤ ρ`, and
//! the generalized inversion formula around 1 on `|1 − z| ≤ ρ`, which only
//! ever calls the Taylor series at the small argument `1 − z`. Points must
//! also satisfy `0 < Re z < 1`, which keeps the principal logarithm away
//! from its cut.

mod gif;
mod polylog;
mod taylor;
mod zeta;

use std::collections::HashMap;
use std::sync::Mutex;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::words::Word;

pub use gif::{gif_derivative_residual, gif_residual, gif_sum};
pub use polylog::{li, li_ext};
pub use taylor::{li_taylor, li_taylor_partial, li_taylor_with_err, taylor_tail_bound};
pub use zeta::{
    zeta, zeta_direct, zeta_direct_enclosure, zeta_reg, zeta_reg_with_err, ZetaEntry, ZetaTable,
};

pub const DEFAULT_TOL: f64 = 1e-15;
pub const DEFAULT_MAX_TERMS: usize = 10_000;
pub const DEFAULT_RADIUS: f64 = 0.5;

/// Numeric configuration plus memo tables. Cached values are a pure
/// function of their keys, so concurrent callers sharing one context see
/// identical results.
#[derive(Debug)]
pub struct EvalContext {
    /// Target absolute error of each Taylor evaluation.
    pub tol: f64,
    pub max_terms: usize,
    /// Chart radius ρ ∈ (0, 1/2].
    pub radius: f64,
    memo_li: Mutex<HashMap<(Word, u64, u64), Complex64>>,
    memo_zeta: Mutex<ZetaTable>,
}

impl Default for EvalContext {
    fn default() -> Self {
        EvalContext::new(DEFAULT_TOL)
    }
}

impl EvalContext {
    pub fn new(tol: f64) -> Self {
        assert!(tol > 0.0, "tolerance must be positive");
        EvalContext {
            tol,
            max_terms: DEFAULT_MAX_TERMS,
            radius: DEFAULT_RADIUS,
            memo_li: Mutex::new(HashMap::new()),
            memo_zeta: Mutex::new(ZetaTable::default()),
        }
    }

    /// Certified table of ζ(w) for all S¹⁰ words of weight ≤ `max_weight`.
    pub fn zeta_table(&self, max_weight: usize) -> Result<ZetaTable> {
        let mut table = ZetaTable::default();
        for w in Word::all_up_to(max_weight).filter(Word::is_s10) {
            let (value, err) = zeta(&w, self)?;
            table.insert(w, value, err)?;
        }
        Ok(table)
    }

    fn li_cached(&self, w: &Word, z: Complex64) -> Option<Complex64> {
        self.memo_li
            .lock()
            .unwrap()
            .get(&(*w, z.re.to_bits(), z.im.to_bits()))
            .copied()
    }

    fn li_store(&self, w: &Word, z: Complex64, v: Complex64) {
        self.memo_li
            .lock()
            .unwrap()
            .insert((*w, z.re.to_bits(), z.im.to_bits()), v);
    }

    fn zeta_cached(&self, w: &Word) -> Option<ZetaEntry> {
        self.memo_zeta.lock().unwrap().get(w)
    }

    fn zeta_store(&self, w: &Word, e: ZetaEntry) {
        let _ = self.memo_zeta.lock().unwrap().insert(*w, e.value, e.err);
    }
}

/// Which chart evaluates a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// `|z| ≤ ρ`: direct Taylor series.
    Zero,
    /// `|1 − z| ≤ ρ` only: inversion recursion.
    One,
}

const EDGE_SLACK: f64 = 1e-12;

/// Chart for `z`, or a domain error outside the implemented region.
pub fn chart(z: Complex64, ctx: &EvalContext) -> Result<Chart> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.re <= 0.0 || z.re >= 1.0 {
        return Err(Error::Domain(format_complex(z)));
    }
    if z.norm() <= ctx.radius + EDGE_SLACK {
        Ok(Chart::Zero)
    } else if (Complex64::new(1.0, 0.0) - z).norm() <= ctx.radius + EDGE_SLACK {
        Ok(Chart::One)
    } else {
        Err(Error::Domain(format_complex(z)))
    }
}

pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Parses `a`, `a+bi`, `a-bi`, `bi`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("cannot parse complex number {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad());
    };
    // Split at the last sign that is not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    Ok(Complex64::new(
        re.parse().map_err(|_| bad())?,
        im.parse().map_err(|_| bad())?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(
            parse_complex("0.8-0.3i").unwrap(),
            Complex64::new(0.8, -0.3)
        );
        assert_eq!(
            parse_complex("1e-3+2e-2i").unwrap(),
            Complex64::new(1e-3, 2e-2)
        );
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert!(parse_complex("abc").is_err());
        assert_eq!(format_complex(Complex64::new(0.8, -0.3)), "0.8-0.3i");
    }

    #[test]
    fn charts() {
        let ctx = EvalContext::default();
        let c = |re, im| chart(Complex64::new(re, im), &ctx);
        assert_eq!(c(0.3, 0.0), Ok(Chart::Zero));
        assert_eq!(c(0.5, 0.0), Ok(Chart::Zero));
        assert_eq!(c(0.7, 0.0), Ok(Chart::One));
        assert_eq!(c(0.8, -0.3), Ok(Chart::One));
        assert!(c(0.0, 0.0).is_err());
        assert!(c(1.0, 0.0).is_err());
        assert!(c(-0.2, 0.1).is_err());
        assert!(c(0.5, 0.45).is_err());
    }
}
