use num_complex::Complex64;

use super::additive::{rh_solve_additive, RhSolution};
use super::fundamental::{associator_from_table, kz_rhs, one_minus_z_pow_neg_x1, z_pow_x0};
use crate::error::Result;
use crate::ncseries::ComplexSeries;
use crate::numerics::ZetaTable;
use crate::words::{reg0, t_star, WordPoly};

/// F̂⁽⁰⁾ and F̂⁽¹⁾ assembled from the additive solution, together with the
/// associator read from the same table.
#[derive(Debug, Clone)]
pub struct MultiplicativeSolution {
    pub additive: RhSolution,
    pub phi: ComplexSeries,
}

pub fn rh_solve_multiplicative(order: usize, table: &ZetaTable) -> Result<MultiplicativeSolution> {
    Ok(MultiplicativeSolution {
        additive: rh_solve_additive(order, table)?,
        phi: associator_from_table(order, table)?.series,
    })
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl MultiplicativeSolution {
    pub fn order(&self) -> usize {
        self.additive.order()
    }

    /// F̂⁽⁰⁾(z) = Σ f⁽⁰⁾(reg⁰(w); z) W.
    pub fn f_hat0(&self, z: f64) -> Result<ComplexSeries> {
        ComplexSeries::try_from_fn(self.order(), |w| {
            Ok(real(self.additive.f0_poly(&reg0(&WordPoly::from(w)), z)?))
        })
    }

    /// F̂⁽¹⁾(z) = Σ f⁽¹⁾(reg⁰(t_*(w)); z) W.
    pub fn f_hat1(&self, z: f64) -> Result<ComplexSeries> {
        ComplexSeries::try_from_fn(self.order(), |w| {
            Ok(real(
                self.additive
                    .f1_poly(&reg0(&t_star(&WordPoly::from(w))), z)?,
            ))
        })
    }

    /// (F̂⁽¹⁾)⁻¹F̂⁽⁰⁾ − (1−z)^{−X1} Φ z^{−X0}, coefficientwise.
    pub fn rh_defect(&self, z: f64) -> Result<ComplexSeries> {
        let n = self.order();
        let lhs = self.f_hat1(z)?.nc_inverse()?.nc_mul(&self.f_hat0(z)?)?;
        let zc = real(z);
        let rhs = one_minus_z_pow_neg_x1(zc, n)
            .nc_mul(&self.phi)?
            .nc_mul(&z_pow_x0(zc, n).nc_inverse()?)?;
        lhs.try_sub(&rhs)
    }

    pub fn rh_residual(&self, z: f64) -> Result<f64> {
        Ok(self.rh_defect(z)?.max_abs())
    }

    /// F̂⁽⁰⁾(z) z^{X0}, the candidate fundamental solution at 0.
    pub fn solution_at0(&self, z: f64) -> Result<ComplexSeries> {
        self.f_hat0(z)?.nc_mul(&z_pow_x0(real(z), self.order()))
    }

    /// Central-difference defect of the KZ equation for F̂⁽⁰⁾(z) z^{X0}.
    pub fn kz_residual(&self, z: f64, h: f64) -> Result<f64> {
        let plus = self.solution_at0(z + h)?;
        let minus = self.solution_at0(z - h)?;
        let deriv = plus.try_sub(&minus)?.scale(&real(1.0 / (2.0 * h)));
        deriv.max_diff(&kz_rhs(real(z), &self.solution_at0(z)?)?)
    }

    /// |F̂⁽⁰⁾(z) − 1̂|, which tends to 0 with z.
    pub fn norm_residual(&self, z: f64) -> Result<f64> {
        self.f_hat0(z)?.max_diff(&ComplexSeries::one(self.order()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{li, EvalContext};
    use crate::rhkz::SAMPLE_POINTS;
    use crate::words::Word;

    #[test]
    fn multiplicative_checks() {
        let ctx = EvalContext::default();
        let sol = rh_solve_multiplicative(4, &ctx.zeta_table(4).unwrap()).unwrap();
        let f0 = sol.f_hat0(0.5).unwrap();
        for w in Word::all_up_to(4) {
            let mut expected = Complex64::new(0.0, 0.0);
            for (s, c) in reg0(&WordPoly::from(w)).iter() {
                expected +=
                    li(s, real(0.5), &ctx).unwrap() * num_traits::ToPrimitive::to_f64(c).unwrap();
            }
            assert!((f0.coeff(&w) - expected).norm() < 1e-7, "{w}");
        }
        for z in SAMPLE_POINTS {
            let r = sol.rh_residual(z).unwrap();
            assert!(r < 1e-7, "RH at {z}: {r}");
            let k = sol.kz_residual(z, 1e-4).unwrap();
            assert!(k < 1e-6, "KZ at {z}: {k}");
            assert!(sol.f_hat0(z).unwrap().is_grouplike(1e-8).0);
            assert!(sol.f_hat1(z).unwrap().is_grouplike(1e-8).0);
        }
        assert!(sol.norm_residual(1e-4).unwrap() < 5e-3);
    }
}
