use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ncseries::ComplexSeries;
use crate::numerics::{li, zeta_reg_with_err, EvalContext, ZetaTable};
use crate::words::{Letter, Word, WordPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    At0,
    At1,
}

/// L⁽⁰⁾ or L⁽¹⁾ truncated at a fixed order.
#[derive(Debug, Clone, Copy)]
pub struct FundamentalSolution {
    pub which: Which,
    pub order: usize,
}

impl FundamentalSolution {
    pub fn eval(&self, z: Complex64, ctx: &EvalContext) -> Result<ComplexSeries> {
        match self.which {
            Which::At0 => build_l0(z, self.order, ctx),
            Which::At1 => build_l1(z, self.order, ctx),
        }
    }
}

/// L⁽⁰⁾(z) = Σ Li(w; z) W.
pub fn build_l0(z: Complex64, order: usize, ctx: &EvalContext) -> Result<ComplexSeries> {
    ComplexSeries::try_from_fn(order, |w| li(&w, z, ctx))
}

/// L⁽¹⁾(z) = Σ Li(w; 1−z) t_*(W).
pub fn build_l1(z: Complex64, order: usize, ctx: &EvalContext) -> Result<ComplexSeries> {
    Ok(build_l0(Complex64::new(1.0, 0.0) - z, order, ctx)?.subst_neg_swap())
}

/// Φ_KZ = Σ ζ(reg¹⁰(w)) W with per-coefficient error bounds.
#[derive(Debug, Clone)]
pub struct Associator {
    pub series: ComplexSeries,
    pub errors: Vec<(Word, f64)>,
}

impl Associator {
    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn error(&self, w: &Word) -> f64 {
        self.errors
            .iter()
            .find(|(v, _)| v == w)
            .map_or(0.0, |(_, e)| *e)
    }
}

pub fn build_associator(order: usize, ctx: &EvalContext) -> Result<Associator> {
    let mut errors = Vec::new();
    let series = ComplexSeries::try_from_fn(order, |w| {
        let (v, e) = zeta_reg_with_err(&WordPoly::from(w), ctx)?;
        errors.push((w, e));
        Ok(Complex64::new(v, 0.0))
    })?;
    Ok(Associator { series, errors })
}

/// Associator read from a (possibly perturbed) table.
pub fn associator_from_table(order: usize, table: &ZetaTable) -> Result<Associator> {
    let mut errors = Vec::new();
    let series = ComplexSeries::try_from_fn(order, |w| {
        let (v, e) = table.regularized(&WordPoly::from(w))?;
        errors.push((w, e));
        Ok(Complex64::new(v, 0.0))
    })?;
    Ok(Associator { series, errors })
}

/// Coefficientwise (L⁽¹⁾)⁻¹ L⁽⁰⁾ − Φ_KZ.
pub fn connection_defect(z: Complex64, order: usize, ctx: &EvalContext) -> Result<ComplexSeries> {
    let l0 = build_l0(z, order, ctx)?;
    let l1 = build_l1(z, order, ctx)?;
    let phi = build_associator(order, ctx)?;
    l1.nc_inverse()?.nc_mul(&l0)?.try_sub(&phi.series)
}

pub fn connection_residual(z: Complex64, order: usize, ctx: &EvalContext) -> Result<f64> {
    Ok(connection_defect(z, order, ctx)?.max_abs())
}

/// Word-level max |ζ(reg¹⁰w) − ζ(reg¹⁰τw)| and series-level
/// max |Φ(X0,X1)Φ(−X1,−X0) − 1̂|.
pub fn duality_residual(order: usize, ctx: &EvalContext) -> Result<(f64, f64)> {
    let mut word_level = 0.0f64;
    for w in Word::all_up_to(order) {
        let (a, _) = zeta_reg_with_err(&WordPoly::from(w), ctx)?;
        let (b, _) = zeta_reg_with_err(&WordPoly::from(w.tau()), ctx)?;
        word_level = word_level.max((a - b).abs());
    }
    let phi = build_associator(order, ctx)?.series;
    let prod = phi.nc_mul(&phi.subst_neg_swap())?;
    let series_level = prod.max_diff(&ComplexSeries::one(order))?;
    Ok((word_level, series_level))
}

/// (X0/z + X1/(1−z))·G, truncated.
pub fn kz_rhs(z: Complex64, g: &ComplexSeries) -> Result<ComplexSeries> {
    let one = Complex64::new(1.0, 0.0);
    if z.norm() == 0.0 || (one - z).norm() == 0.0 {
        return Err(Error::Pole(format!("KZ connection has a pole at {z}")));
    }
    Ok(g.left_mul_linear(&(one / z), &(one / (one - z))))
}

/// z^{X0} = exp(log z · X0).
pub fn z_pow_x0(z: Complex64, order: usize) -> ComplexSeries {
    ComplexSeries::exp_letter(order, Letter::L0, z.ln())
}

/// (1−z)^{−X1} = exp(−log(1−z) · X1).
pub fn one_minus_z_pow_neg_x1(z: Complex64, order: usize) -> ComplexSeries {
    ComplexSeries::exp_letter(order, Letter::L1, -(Complex64::new(1.0, 0.0) - z).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZETA2: f64 = 1.644_934_066_848_226_4;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn l0_and_l1_coefficients() {
        let ctx = EvalContext::default();
        let l0 = build_l0(c(0.5), 4, &ctx).unwrap();
        assert_eq!(l0.coeff(&Word::EMPTY), c(1.0));
        assert!((l0.coeff(&w("1")) - c(2f64.ln())).norm() < 1e-15);
        let l1 = build_l1(c(0.5), 4, &ctx).unwrap();
        assert!((l1.coeff(&w("0")) + c(2f64.ln())).norm() < 1e-15);
        for z in [0.3, 0.7] {
            let (ok, r) = build_l0(c(z), 4, &ctx).unwrap().is_grouplike(1e-9);
            assert!(ok, "{z}: {r:?}");
            let (ok, r) = build_l1(c(z), 4, &ctx).unwrap().is_grouplike(1e-9);
            assert!(ok, "{z}: {r:?}");
        }
    }

    #[test]
    fn associator_low_degree() {
        let ctx = EvalContext::default();
        let phi = build_associator(3, &ctx).unwrap();
        assert!((phi.series.coeff(&w("01")).re - ZETA2).abs() < 1e-13);
        assert!((phi.series.coeff(&w("10")).re + ZETA2).abs() < 1e-13);
        assert_eq!(phi.series.coeff(&w("0")), c(0.0));
        assert_eq!(phi.series.coeff(&w("1")), c(0.0));
        assert!(phi.error(&w("01")) < 1e-12);
        let t = ctx.zeta_table(3).unwrap();
        let from_t = associator_from_table(3, &t).unwrap();
        assert!(from_t.series.max_diff(&phi.series).unwrap() < 1e-15);
    }

    #[test]
    fn connection_and_duality() {
        let ctx = EvalContext::default();
        let rs: Vec<f64> = [0.3, 0.5, 0.7]
            .iter()
            .map(|&z| connection_residual(c(z), 4, &ctx).unwrap())
            .collect();
        assert!(rs.iter().all(|&r| r < 1e-8), "{rs:?}");
        let (word, series) = duality_residual(5, &ctx).unwrap();
        assert!(word < 1e-9 && series < 1e-8, "{word} {series}");
    }

    #[test]
    fn kz_rhs_examples() {
        let g = ComplexSeries::one(3);
        let r = kz_rhs(c(0.5), &g).unwrap();
        assert_eq!(r.coeff(&w("0")), c(2.0));
        assert_eq!(r.coeff(&w("1")), c(2.0));
        assert_eq!(r.coeff(&Word::EMPTY), c(0.0));
        assert!(matches!(kz_rhs(c(1.0), &g), Err(Error::Pole(_))));
        assert!(matches!(kz_rhs(c(0.0), &g), Err(Error::Pole(_))));
    }

    #[test]
    fn exponentials() {
        let e = z_pow_x0(c(0.3), 3);
        assert!((e.coeff(&w("00")) - c(0.3f64.ln().powi(2) / 2.0)).norm() < 1e-15);
        let f = one_minus_z_pow_neg_x1(c(0.3), 2);
        assert!((f.coeff(&w("1")) + c(0.7f64.ln())).norm() < 1e-15);
    }
}
