use num_complex::Complex64;

use super::polylog::li;
use super::zeta::zeta_reg;
use super::EvalContext;
use crate::error::Result;
use crate::words::{Word, WordPoly};

/// Σ_{uv=w} Li(τ(u); 1−z) Li(v; z).
pub fn gif_sum(w: &Word, z: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    let one_minus = Complex64::new(1.0, 0.0) - z;
    let mut acc = Complex64::new(0.0, 0.0);
    for (u, v) in w.deconcat_splits() {
        acc += li(&u.tau(), one_minus, ctx)? * li(&v, z, ctx)?;
    }
    Ok(acc)
}

/// |Σ_{uv=w} Li(τ(u); 1−z) Li(v; z) − ζ(reg¹⁰(w))|.
pub fn gif_residual(w: &Word, z: Complex64, ctx: &EvalContext) -> Result<f64> {
    let rhs = zeta_reg(&WordPoly::from(*w), ctx)?;
    Ok((gif_sum(w, z, ctx)? - rhs).norm())
}

/// Central difference of the inversion sum in z; the sum is constant, so
/// the result is O(h²) plus rounding/h.
pub fn gif_derivative_residual(w: &Word, z: Complex64, h: f64, ctx: &EvalContext) -> Result<f64> {
    if w.is_empty() {
        return Ok(0.0);
    }
    let plus = gif_sum(w, z + h, ctx)?;
    let minus = gif_sum(w, z - h, ctx)?;
    Ok(((plus - minus) / (2.0 * h)).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn residual_examples() {
        let ctx = EvalContext::default();
        assert!(gif_residual(&w("0"), c(0.3), &ctx).unwrap() < 1e-15);
        assert!(gif_residual(&w("01"), c(0.5), &ctx).unwrap() < 1e-10);
        for word in Word::all_up_to(5) {
            for z in [0.3, 0.7] {
                let r = gif_residual(&word, c(z), &ctx).unwrap();
                assert!(r < 1e-9, "{word} at {z}: {r}");
            }
        }
    }

    #[test]
    fn derivative_examples() {
        let ctx = EvalContext::default();
        assert!(gif_derivative_residual(&w("01"), c(0.5), 1e-4, &ctx).unwrap() < 1e-6);
        assert!(gif_derivative_residual(&w("1"), c(0.3), 1e-4, &ctx).unwrap() < 1e-6);
        assert_eq!(
            gif_derivative_residual(&Word::EMPTY, c(0.3), 1e-4, &ctx).unwrap(),
            0.0
        );
    }
}
