use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::taylor::{li_taylor_with_err, taylor_coefficients};
use super::EvalContext;
use crate::error::{Error, Result};
use crate::words::{reg10, Word, WordPoly};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaEntry {
    pub value: f64,
    pub err: f64,
}

/// Multiple zeta values keyed by S¹⁰ words, each with an error bound.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ZetaTable {
    entries: BTreeMap<Word, ZetaEntry>,
}

#[derive(Serialize, Deserialize)]
struct ZetaRow {
    word: String,
    mzv_indices: Vec<u32>,
    value: f64,
    err: f64,
}

impl ZetaTable {
    pub fn insert(&mut self, w: Word, value: f64, err: f64) -> Result<()> {
        if !w.is_s10() {
            return Err(Error::Precondition(format!(
                "{w} is not a convergent (S¹⁰) word"
            )));
        }
        if !err.is_finite() {
            return Err(Error::Precondition(format!("non-finite error for {w}")));
        }
        self.entries.insert(w, ZetaEntry { value, err });
        Ok(())
    }

    pub fn get(&self, w: &Word) -> Option<ZetaEntry> {
        if w.is_empty() {
            return Some(ZetaEntry {
                value: 1.0,
                err: 0.0,
            });
        }
        self.entries.get(w).copied()
    }

    pub fn value(&self, w: &Word) -> Result<f64> {
        self.get(w)
            .map(|e| e.value)
            .ok_or_else(|| Error::MissingZeta(w.to_string()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_weight(&self) -> usize {
        self.entries.keys().map(Word::weight).max().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &ZetaEntry)> {
        self.entries.iter()
    }

    /// Copy with `delta` added to one entry.
    pub fn perturbed(&self, w: &Word, delta: f64) -> Result<ZetaTable> {
        let mut out = self.clone();
        let e = out
            .entries
            .get_mut(w)
            .ok_or_else(|| Error::MissingZeta(w.to_string()))?;
        e.value += delta;
        Ok(out)
    }

    /// ζ(reg¹⁰(p)) from the table, with the propagated error.
    pub fn regularized(&self, p: &WordPoly) -> Result<(f64, f64)> {
        let mut value = 0.0;
        let mut err = 0.0;
        for (w, c) in reg10(p).iter() {
            let e = self
                .get(w)
                .ok_or_else(|| Error::MissingZeta(w.to_string()))?;
            let c = c.to_f64().unwrap_or(f64::NAN);
            value += c * e.value;
            err += c.abs() * e.err;
        }
        Ok((value, err))
    }

    /// `[{word, mzv_indices, value, err}, ...]` in canonical order.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<ZetaRow> = self
            .entries
            .iter()
            .map(|(w, e)| ZetaRow {
                word: w.to_bit_string(),
                mzv_indices: w.indices().unwrap_or_default(),
                value: e.value,
                err: e.err,
            })
            .collect();
        serde_json::to_value(rows).expect("rows serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<ZetaTable> {
        let rows: Vec<ZetaRow> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut t = ZetaTable::default();
        for row in rows {
            t.insert(row.word.parse()?, row.value, row.err)?;
        }
        Ok(t)
    }
}

/// ζ(w) for w ∈ S¹⁰ from the inversion formula at z = 1/2:
/// ζ(w) = Σ_{uv=w} Li(τ(u); 1/2) Li(v; 1/2). Every factor is an S⁰ word, so
/// only convergent Taylor series at 1/2 are involved.
pub fn zeta(w: &Word, ctx: &EvalContext) -> Result<(f64, f64)> {
    if !w.is_s10() {
        return Err(Error::Precondition(format!(
            "{w} is not a convergent (S¹⁰) word"
        )));
    }
    if w.is_empty() {
        return Ok((1.0, 0.0));
    }
    if let Some(e) = ctx.zeta_cached(w) {
        return Ok((e.value, e.err));
    }
    let half = Complex64::new(0.5, 0.0);
    let mut value = 0.0;
    let mut err = 0.0;
    for (u, v) in w.deconcat_splits() {
        let (a, ea) = li_taylor_with_err(&u.tau(), half, ctx)?;
        let (b, eb) = li_taylor_with_err(&v, half, ctx)?;
        value += (a * b).re;
        err += a.norm() * eb + b.norm() * ea + ea * eb;
    }
    // Rounding in the Taylor sums and the products.
    err += 4.0 * (w.len() as f64 + 1.0) * f64::EPSILON * value.abs().max(1.0);
    ctx.zeta_store(w, ZetaEntry { value, err });
    Ok((value, err))
}

/// ζ(reg¹⁰(p)) for an arbitrary combination of words.
pub fn zeta_reg_with_err(p: &WordPoly, ctx: &EvalContext) -> Result<(f64, f64)> {
    let mut value = 0.0;
    let mut err = 0.0;
    for (w, c) in reg10(p).iter() {
        let (z, e) = zeta(w, ctx)?;
        let c = c.to_f64().unwrap_or(f64::NAN);
        value += c * z;
        err += c.abs() * e;
    }
    Ok((value, err))
}

pub fn zeta_reg(p: &WordPoly, ctx: &EvalContext) -> Result<f64> {
    zeta_reg_with_err(p, ctx).map(|(v, _)| v)
}

/// Nested harmonic partial sum over `n1 ≤ m` with a rigorous tail bound.
///
/// The bound uses `c(n) ≤ n^{−k1} (1 + ln n)^{r−1} / (r−1)!` and compares
/// the tail with an integral; a rounding allowance is added.
pub fn zeta_direct(w: &Word, m: usize) -> Result<(f64, f64)> {
    if !w.is_s10() {
        return Err(Error::Precondition(format!(
            "{w} is not a convergent (S¹⁰) word"
        )));
    }
    let ks = w.indices().expect("S¹⁰ words end in ξ1");
    if ks.is_empty() {
        return Ok((1.0, 0.0));
    }
    let coeffs = taylor_coefficients(&ks, m);
    // Neumaier summation, smallest terms first.
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for &c in coeffs.iter().rev() {
        let t = sum + c;
        if sum.abs() >= c.abs() {
            comp += (sum - t) + c;
        } else {
            comp += (c - t) + sum;
        }
        sum = t;
    }
    let value = sum + comp;
    let tail = direct_tail_bound(ks[0], ks.len() - 1, m);
    // Terms carry a few ulps each and the outer sum is compensated; the inner
    // running sums are plain, with relative error at most m·ε per level.
    let depth = ks.len() as f64;
    let rounding = (4.0 * (depth + 1.0) + (depth - 1.0) * m as f64) * f64::EPSILON * value;
    Ok((value, tail + rounding))
}

/// Two-sided enclosure of ζ(k) from the partial sum to `m` and the integral
/// bounds (m+1)^{1−k}/(k−1) ≤ Σ_{n>m} n^{−k} ≤ (m+½)^{1−k}/(k−1).
pub fn zeta_direct_enclosure(k: u32, m: usize) -> Result<(f64, f64)> {
    if k < 2 {
        return Err(Error::Precondition(format!("ζ({k}) diverges")));
    }
    let (partial, _) = zeta_direct(&Word::from_indices(&[k])?, m)?;
    let s = k as f64 - 1.0;
    let lo = (m as f64 + 1.0).powf(-s) / s;
    let hi = (m as f64 + 0.5).powf(-s) / s;
    let rounding = 16.0 * f64::EPSILON * (partial + hi);
    Ok((partial + lo - rounding, partial + hi + rounding))
}

/// Bound on Σ_{n>m} n^{−k}(1 + ln n)^q / q!.
fn direct_tail_bound(k: u32, q: usize, m: usize) -> f64 {
    let s = k as f64 - 1.0;
    let mf = m as f64;
    if q == 0 {
        // n^{−k} is convex, so each term is below its midpoint-centred integral.
        return (mf + 0.5).powf(-s) / s;
    }
    let log_m = mf.ln();
    // The summand decreases once q ≤ k (1 + ln x).
    if m == 0 || (q as f64) > k as f64 * (1.0 + log_m) {
        return f64::INFINITY;
    }
    // ∫_{ln m}^∞ (1 + y)^q e^{−s y} dy = e^{−s ln m} Σ_j q!/(q−j)! (1 + ln m)^{q−j} / s^{j+1}
    let mut acc = 0.0;
    let mut falling = 1.0;
    for j in 0..=q {
        if j > 0 {
            falling *= (q - j + 1) as f64;
        }
        acc += falling * (1.0 + log_m).powi((q - j) as i32) / s.powi(j as i32 + 1);
    }
    let q_fact: f64 = (1..=q).map(|i| i as f64).product();
    mf.powf(-s) * acc / q_fact
}
