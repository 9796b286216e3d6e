//! Additive Riemann–Hilbert reconstruction.
//!
//! Both families are generated from S⁰ words. For an S⁰ word `s = ξ_i u`
//! the base function `B(s; x)` solves `dB(s)/dx = B(u)/x` (i = 0) or
//! `B(u)/(1−x)` (i = 1) with `B(s; 0) = 0`, integrated on graded
//! Gauss–Legendre panels. Then
//!
//! * `f⁽⁰⁾(s; z) = B(s; z)`, normalized at 0;
//! * `f⁽¹⁾(s; z) = B(s; 1−z) + c(s)`, the mirrored recursion from the 1 side;
//!
//! and arbitrary words are reduced through the reg⁰ decomposition, with
//! powers of `log z` resp. `log(1−z)`. The constants `c(s)` are fixed weight
//! by weight from the inversion relation of `w = τ(s)`, the only relation
//! of weight |s| that contains `f⁽¹⁾(s)`.

use std::collections::{BTreeMap, HashMap};

use num_traits::ToPrimitive;

use super::quadrature::{Antiderivative, Mesh};
use crate::error::{Error, Result};
use crate::ncseries::factorial;
use crate::numerics::ZetaTable;
use crate::report::Report;
use crate::words::{reg0_components_word, Letter, Word, WordPoly};

/// Points approaching 1 (resp. 0) used for the limits, closest last.
pub const LIMIT_OFFSETS: [f64; 2] = [1e-3, 1e-4];
pub const SAMPLE_POINTS: [f64; 3] = [0.3, 0.5, 0.7];

/// Outcome of fixing one integration constant.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantRecovery {
    /// Word whose inversion relation fixes the constant.
    pub word: Word,
    /// S⁰ word carrying the constant, `τ(word)`.
    pub s: Word,
    /// ζ(reg¹⁰ w) minus the extrapolated z → 1 limit of the provisional sum.
    pub from_one: f64,
    /// ζ(reg¹⁰ w) − ζ(reg¹⁰ τw): the z → 0 limit of the sum is ζ(reg¹⁰ τw).
    pub from_zero: f64,
    pub discrepancy: f64,
    /// |L₀ − L₁| for the two extrapolated limits of the provisional sum.
    pub limit_defect: f64,
}

#[derive(Debug, Clone)]
pub struct RhSolution {
    order: usize,
    mesh: Mesh,
    base: HashMap<Word, Antiderivative>,
    constants: BTreeMap<Word, f64>,
    recoveries: Vec<ConstantRecovery>,
    table: ZetaTable,
}

pub fn rh_solve_additive(order: usize, table: &ZetaTable) -> Result<RhSolution> {
    let mesh = Mesh::graded(1.0 - LIMIT_OFFSETS[LIMIT_OFFSETS.len() - 1]);
    let nodes = mesh.nodes();
    let mut node_vals: HashMap<Word, Vec<f64>> = HashMap::new();
    node_vals.insert(Word::EMPTY, vec![1.0; nodes.len()]);
    node_vals.insert(
        Word::letter(Letter::L1),
        nodes.iter().map(|x| -(-x).ln_1p()).collect(),
    );
    let mut sol = RhSolution {
        order,
        mesh,
        base: HashMap::new(),
        constants: BTreeMap::new(),
        recoveries: Vec::new(),
        table: table.clone(),
    };
    for r in 2..=order {
        for s in Word::all_of_weight(r).filter(|s| s.is_s0()) {
            let lower = &node_vals[&s.tail()];
            let g: Vec<f64> = match s.first() {
                Some(Letter::L0) => lower.iter().zip(&nodes).map(|(v, x)| v / x).collect(),
                _ => lower
                    .iter()
                    .zip(&nodes)
                    .map(|(v, x)| v / (1.0 - x))
                    .collect(),
            };
            if g.iter().any(|v| !v.is_finite()) {
                return Err(Error::Quadrature(format!("non-finite integrand for {s}")));
            }
            let anti = sol.mesh.integrate(&g);
            node_vals.insert(s, anti.at_nodes().to_vec());
            sol.base.insert(s, anti);
        }
    }
    for r in 1..=order {
        // Constants of one weight only enter relations of higher weight.
        let mut fixed = Vec::new();
        for s in Word::all_of_weight(r).filter(|s| s.is_s0()) {
            let rec = sol.recover_constant(s)?;
            fixed.push((s, rec.from_one));
            sol.recoveries.push(rec);
        }
        sol.constants.extend(fixed);
    }
    Ok(sol)
}

fn richardson(a1: f64, s1: f64, a2: f64, s2: f64) -> f64 {
    (a2 * s1 - a1 * s2) / (s1 - s2)
}

impl RhSolution {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn recoveries(&self) -> &[ConstantRecovery] {
        &self.recoveries
    }

    /// c⁽¹⁾ attached to an S⁰ word; c⁽⁰⁾ is zero by normalization.
    pub fn constant(&self, s: &Word) -> f64 {
        self.constants.get(s).copied().unwrap_or(0.0)
    }

    pub fn max_discrepancy(&self) -> f64 {
        self.recoveries
            .iter()
            .map(|r| r.discrepancy)
            .fold(0.0, f64::max)
    }

    pub fn max_constant(&self) -> f64 {
        self.recoveries
            .iter()
            .map(|r| r.from_one.abs())
            .fold(0.0, f64::max)
    }

    /// Lowest-weight recovery whose discrepancy exceeds `tol`.
    pub fn first_violation(&self, tol: f64) -> Option<&ConstantRecovery> {
        self.recoveries.iter().find(|r| !(r.discrepancy <= tol))
    }

    fn base_at(&self, s: &Word, x: f64) -> Result<f64> {
        match s.len() {
            0 => Ok(1.0),
            1 => Ok(-(-x).ln_1p()),
            _ => self.base[s].eval(&self.mesh, x),
        }
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.weight() > self.order {
            return Err(Error::Precondition(format!(
                "{w} exceeds the solved weight {}",
                self.order
            )));
        }
        Ok(())
    }

    fn check_point(z: f64) -> Result<()> {
        if !(z > 0.0 && z < 1.0) {
            return Err(Error::Domain(format!("{z} is outside (0, 1)")));
        }
        Ok(())
    }

    fn combine(&self, w: &Word, log: f64, mut s0: impl FnMut(&Word) -> Result<f64>) -> Result<f64> {
        let mut acc = 0.0;
        for (j, comp) in reg0_components_word(*w).iter().enumerate() {
            let mut part = 0.0;
            for (s, c) in comp.iter() {
                part += c.to_f64().unwrap_or(f64::NAN) * s0(s)?;
            }
            acc += part * log.powi(j as i32) / factorial(j);
        }
        Ok(acc)
    }

    /// f⁽⁰⁾(w; z).
    pub fn f0(&self, w: &Word, z: f64) -> Result<f64> {
        self.check_word(w)?;
        Self::check_point(z)?;
        self.combine(w, z.ln(), |s| self.base_at(s, z))
    }

    /// f⁽¹⁾(w; z).
    pub fn f1(&self, w: &Word, z: f64) -> Result<f64> {
        self.check_word(w)?;
        Self::check_point(z)?;
        self.combine(w, (-z).ln_1p(), |s| {
            Ok(self.base_at(s, 1.0 - z)? + self.constant(s))
        })
    }

    pub fn f0_poly(&self, p: &WordPoly, z: f64) -> Result<f64> {
        p.iter().try_fold(0.0, |acc, (w, c)| {
            Ok(acc + c.to_f64().unwrap_or(f64::NAN) * self.f0(w, z)?)
        })
    }

    pub fn f1_poly(&self, p: &WordPoly, z: f64) -> Result<f64> {
        p.iter().try_fold(0.0, |acc, (w, c)| {
            Ok(acc + c.to_f64().unwrap_or(f64::NAN) * self.f1(w, z)?)
        })
    }

    /// Σ_{uv=w} f⁽¹⁾(τ(u); z) f⁽⁰⁾(v; z).
    pub fn inversion_sum(&self, w: &Word, z: f64) -> Result<f64> {
        w.deconcat_splits().iter().try_fold(0.0, |acc, (u, v)| {
            Ok(acc + self.f1(&u.tau(), z)? * self.f0(v, z)?)
        })
    }

    /// |Σ_{uv=w} f⁽¹⁾(τ(u); z) f⁽⁰⁾(v; z) − ζ(reg¹⁰ w)| with ζ from the table.
    pub fn arh_residual(&self, w: &Word, z: f64) -> Result<f64> {
        let (target, _) = self.table.regularized(&WordPoly::from(*w))?;
        Ok((self.inversion_sum(w, z)? - target).abs())
    }

    fn recover_constant(&self, s: Word) -> Result<ConstantRecovery> {
        let w = s.tau();
        let (zeta_w, _) = self.table.regularized(&WordPoly::from(w))?;
        let (zeta_tw, _) = self.table.regularized(&WordPoly::from(s))?;
        let [d1, d2] = LIMIT_OFFSETS;
        let near_one = richardson(
            self.inversion_sum(&w, 1.0 - d1)?,
            1.0 / d1.ln(),
            self.inversion_sum(&w, 1.0 - d2)?,
            1.0 / d2.ln(),
        );
        let near_zero = richardson(
            self.inversion_sum(&w, d1)?,
            1.0 / d1.ln(),
            self.inversion_sum(&w, d2)?,
            1.0 / d2.ln(),
        );
        let from_one = zeta_w - near_one;
        let from_zero = zeta_w - zeta_tw;
        Ok(ConstantRecovery {
            word: w,
            s,
            from_one,
            from_zero,
            discrepancy: (from_one - from_zero).abs(),
            limit_defect: (near_zero - near_one).abs(),
        })
    }

    /// Constant discrepancies by weight, then inversion-relation residuals
    /// of every word of weight ≤ N at `zs`.
    pub fn report(&self, zs: &[f64], tol: f64) -> Result<Report> {
        let mut rep = Report::new("rh", self.order, zs.to_vec(), tol);
        for rec in &self.recoveries {
            rep.push(format!("c-discrepancy {}", rec.word), None, rec.discrepancy);
        }
        for w in Word::all_up_to(self.order) {
            for &z in zs {
                rep.push(w, Some(z), self.arh_residual(&w, z)?);
            }
        }
        Ok(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{li, EvalContext};
    use num_complex::Complex64;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reproduces_polylogarithms() {
        let ctx = EvalContext::default();
        let table = ctx.zeta_table(4).unwrap();
        let sol = rh_solve_additive(4, &table).unwrap();
        for word in Word::all_up_to(4) {
            for z in SAMPLE_POINTS {
                let a = sol.f0(&word, z).unwrap();
                let b = li(&word, Complex64::new(z, 0.0), &ctx).unwrap().re;
                assert!((a - b).abs() < 1e-7, "f0 {word} {z}: {a} vs {b}");
                let a1 = sol.f1(&word, z).unwrap();
                let b1 = li(&word, Complex64::new(1.0 - z, 0.0), &ctx).unwrap().re;
                assert!((a1 - b1).abs() < 1e-7, "f1 {word} {z}: {a1} vs {b1}");
            }
        }
        assert!(sol.max_constant() < 1e-7, "{}", sol.max_constant());
        assert!(sol.max_discrepancy() < 1e-7);
        assert!((sol.f1(&w("1"), 0.3).unwrap() + 0.3f64.ln()).abs() < 1e-15);
        assert!((sol.f0(&w("0"), 0.3).unwrap() - 0.3f64.ln()).abs() < 1e-15);
        assert!((sol.f1(&w("0"), 0.3).unwrap() - 0.7f64.ln()).abs() < 1e-15);
        assert!(sol.report(&SAMPLE_POINTS, 1e-7).unwrap().passed);
    }

    #[test]
    fn detects_duality_violation() {
        let ctx = EvalContext::default();
        let table = ctx
            .zeta_table(4)
            .unwrap()
            .perturbed(&w("011"), 1e-3)
            .unwrap();
        let sol = rh_solve_additive(4, &table).unwrap();
        let first = sol.first_violation(1e-7).unwrap();
        assert_eq!(first.word, w("001"));
        assert!((first.discrepancy - 1e-3).abs() < 1e-4, "{first:?}");
        assert!(!sol.report(&SAMPLE_POINTS, 1e-7).unwrap().passed);
    }

    #[test]
    fn errors() {
        let ctx = EvalContext::default();
        let sol = rh_solve_additive(2, &ctx.zeta_table(2).unwrap()).unwrap();
        assert!(sol.f0(&w("011"), 0.3).is_err());
        assert!(matches!(sol.f0(&w("01"), 1.0), Err(Error::Domain(_))));
        assert!(rh_solve_additive(3, &ctx.zeta_table(2).unwrap()).is_err());
    }
}
