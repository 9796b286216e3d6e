use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::taylor::li_taylor;
use super::zeta::zeta_reg;
use super::{chart, Chart, EvalContext};
use crate::error::{Error, Result};
use crate::ncseries::factorial;
use crate::words::{reg0_components_word, Word, WordPoly};

/// Extended polylogarithm on the chart around 0:
/// Li(w; z) = Σ_j Li(w_j; z) logʲz / j! with `w = Σ_j w_j ⧢ ξ0^j`.
pub fn li_ext(w: &Word, z: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    if chart(z, ctx)? != Chart::Zero {
        return Err(Error::Domain(format!(
            "{} is outside |z| ≤ {}",
            super::format_complex(z),
            ctx.radius
        )));
    }
    li_ext_unchecked(w, z, ctx)
}

fn li_ext_unchecked(w: &Word, z: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    if w.is_empty() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let log_z = z.ln();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut log_pow = Complex64::new(1.0, 0.0);
    for (j, comp) in reg0_components_word(*w).iter().enumerate() {
        if j > 0 {
            log_pow *= log_z;
        }
        let part = li_taylor_poly(comp, z, ctx)?;
        acc += part * log_pow / factorial(j);
    }
    Ok(acc)
}

fn li_taylor_poly(p: &WordPoly, z: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (w, c) in p.iter() {
        acc += li_taylor(w, z, ctx)? * c.to_f64().unwrap_or(f64::NAN);
    }
    Ok(acc)
}

/// Li(w; z) anywhere in the implemented domain.
///
/// Near 1 the value comes from
/// Li(w; z) = ζ(reg¹⁰(w)) − Σ_{uv=w, u≠𝟙} Li(τ(u); 1−z) Li(v; z),
/// recursing on the shorter suffixes `v`.
pub fn li(w: &Word, z: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    let which = chart(z, ctx)?;
    if w.is_empty() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if let Some(v) = ctx.li_cached(w, z) {
        return Ok(v);
    }
    let value = match which {
        Chart::Zero => li_ext_unchecked(w, z, ctx)?,
        Chart::One => {
            let one_minus = Complex64::new(1.0, 0.0) - z;
            let mut acc = Complex64::new(zeta_reg(&WordPoly::from(*w), ctx)?, 0.0);
            for (u, v) in w.deconcat_splits().into_iter().skip(1) {
                let head = li_ext_unchecked(&u.tau(), one_minus, ctx)?;
                acc -= head * li(&v, z, ctx)?;
            }
            acc
        }
    };
    ctx.li_store(w, z, value);
    Ok(value)
}
