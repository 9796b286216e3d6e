use num_complex::Complex64;

use super::EvalContext;
use crate::error::{Error, Result};
use crate::words::Word;

/// Taylor coefficients of Li_{k1,…,kr}: `coeff[n]` for `n = 0..=m`.
///
/// All coefficients lie in [0, 1].
pub(crate) fn taylor_coefficients(ks: &[u32], m: usize) -> Vec<f64> {
    let mut out = vec![0.0; m + 1];
    if ks.is_empty() {
        out[0] = 1.0;
        return out;
    }
    let r = ks.len();
    // partial[j] = Σ_{n' < n} c_j(n') where c_j are the nested coefficients
    // of depth j (0-based, innermost = r − 1).
    let mut partial = vec![0.0; r];
    let mut c = vec![0.0; r];
    for (n, slot) in out.iter_mut().enumerate().skip(1) {
        let nf = n as f64;
        for j in (0..r).rev() {
            let inner = if j + 1 == r { 1.0 } else { partial[j + 1] };
            c[j] = inner / nf.powi(ks[j] as i32);
        }
        for (p, x) in partial.iter_mut().zip(&c) {
            *p += x;
        }
        *slot = c[0];
    }
    out
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn s0_indices(w: &Word) -> Result<Vec<u32>> {
    w.indices()
        .ok_or_else(|| Error::Precondition(format!("word {w} does not end in ξ1")))
}

/// Tail bound `|z|^{M+1} / (1 − |z|)` for coefficients bounded by one.
pub fn taylor_tail_bound(abs_z: f64, m: usize) -> f64 {
    if abs_z >= 1.0 {
        return f64::INFINITY;
    }
    abs_z.powi(m as i32 + 1) / (1.0 - abs_z)
}

/// Smallest truncation point whose tail bound is below `tol`.
pub(crate) fn terms_for(abs_z: f64, tol: f64, max_terms: usize) -> Result<usize> {
    if abs_z == 0.0 {
        return Ok(0);
    }
    let mut m = 1usize;
    while taylor_tail_bound(abs_z, m) > tol {
        m += 1;
        if m > max_terms {
            return Err(Error::MaxTermsExceeded(max_terms));
        }
    }
    Ok(m)
}

/// Partial Taylor sum with `m` terms and its tail bound, for any `|z| < 1`.
/// Slow near the unit circle; used as an oracle.
pub fn li_taylor_partial(w: &Word, z: Complex64, m: usize) -> Result<(Complex64, f64)> {
    let ks = s0_indices(w)?;
    let coeffs = taylor_coefficients(&ks, m);
    Ok((
        horner(&coeffs, z),
        if ks.is_empty() {
            0.0
        } else {
            taylor_tail_bound(z.norm(), m)
        },
    ))
}

/// Li(w; z) for w ∈ S⁰ by its Taylor series, with the number of terms
/// chosen from the geometric tail bound. Returns the value and the bound.
pub fn li_taylor_with_err(w: &Word, z: Complex64, ctx: &EvalContext) -> Result<(Complex64, f64)> {
    let ks = s0_indices(w)?;
    if z.norm() > ctx.radius + 1e-12 {
        return Err(Error::Precondition(format!(
            "|z| = {} exceeds radius {}",
            z.norm(),
            ctx.radius
        )));
    }
    if ks.is_empty() {
        return Ok((Complex64::new(1.0, 0.0), 0.0));
    }
    let m = terms_for(z.norm(), ctx.tol, ctx.max_terms)?;
    let coeffs = taylor_coefficients(&ks, m);
    Ok((horner(&coeffs, z), taylor_tail_bound(z.norm(), m)))
}

pub fn li_taylor(w: &Word, z: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    li_taylor_with_err(w, z, ctx).map(|(v, _)| v)
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

    /// Brute-force coefficient by enumerating n1 > n2 > ... > nr > 0.
    fn brute(ks: &[u32], n: usize) -> f64 {
        fn rec(ks: &[u32], bound: usize) -> f64 {
            match ks.split_first() {
                None => 1.0,
                Some((&k, rest)) => (1..bound)
                    .map(|m| rec(rest, m) / (m as f64).powi(k as i32))
                    .sum(),
            }
        }
        let (&k, rest) = ks.split_first().unwrap();
        rec(rest, n) / (n as f64).powi(k as i32)
    }

    #[test]
    fn coefficients_match_enumeration() {
        for ks in [vec![1], vec![2, 1], vec![1, 1, 1], vec![3, 1, 2]] {
            let coeffs = taylor_coefficients(&ks, 12);
            for (n, &cn) in coeffs.iter().enumerate().skip(1) {
                assert!((cn - brute(&ks, n)).abs() < 1e-15, "{ks:?} n={n}");
                assert!(cn <= 1.0);
            }
        }
    }

    #[test]
    fn log_and_dilog_at_half() {
        let ctx = EvalContext::default();
        let l1 = li_taylor(&w("1"), c(0.5), &ctx).unwrap();
        assert!((l1.re - 2f64.ln()).abs() < 1e-14);
        let l2 = li_taylor(&w("01"), c(0.5), &ctx).unwrap();
        let closed = std::f64::consts::PI.powi(2) / 12.0 - 2f64.ln().powi(2) / 2.0;
        assert!((l2.re - closed).abs() < 1e-14);
        assert!((l2.re - 0.5822405265).abs() < 1e-10);
    }

    #[test]
    fn zero_argument_and_preconditions() {
        let ctx = EvalContext::default();
        assert_eq!(li_taylor(&w("0101"), c(0.0), &ctx).unwrap(), c(0.0));
        assert_eq!(li_taylor(&Word::EMPTY, c(0.3), &ctx).unwrap(), c(1.0));
        assert!(matches!(
            li_taylor(&w("10"), c(0.3), &ctx),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            li_taylor(&w("1"), c(0.7), &ctx),
            Err(Error::Precondition(_))
        ));
        let tight = EvalContext {
            max_terms: 5,
            ..EvalContext::default()
        };
        assert!(matches!(
            li_taylor(&w("1"), c(0.5), &tight),
            Err(Error::MaxTermsExceeded(5))
        ));
    }
}
