use num_complex::Complex64;

use super::fundamental::{build_l0, kz_rhs};
use crate::error::{Error, Result};
use crate::ncseries::ComplexSeries;
use crate::numerics::EvalContext;

/// Closest a transport path may come to 0 or 1.
pub const POLE_MARGIN: f64 = 1e-3;

fn axpy(y: &ComplexSeries, h: Complex64, k: &ComplexSeries) -> Result<ComplexSeries> {
    y.try_add(&k.scale(&h))
}

/// Classical RK4 for dG/dz = (X0/z + X1/(1−z)) G along the segment
/// `z0 → z1`, starting from `g0`.
pub fn rk4_transport(
    g0: &ComplexSeries,
    z0: Complex64,
    z1: Complex64,
    steps: usize,
) -> Result<ComplexSeries> {
    check_path(z0, z1)?;
    if z0 == z1 {
        return Ok(g0.clone());
    }
    if steps == 0 {
        return Err(Error::Precondition("steps must be positive".into()));
    }
    let h = (z1 - z0) / steps as f64;
    let half = h / 2.0;
    let mut g = g0.clone();
    for i in 0..steps {
        let z = z0 + h * i as f64;
        let k1 = kz_rhs(z, &g)?;
        let k2 = kz_rhs(z + half, &axpy(&g, half, &k1)?)?;
        let k3 = kz_rhs(z + half, &axpy(&g, half, &k2)?)?;
        let k4 = kz_rhs(z + h, &axpy(&g, h, &k3)?)?;
        let incr = k1
            .try_add(&k2.scale(&Complex64::new(2.0, 0.0)))?
            .try_add(&k3.scale(&Complex64::new(2.0, 0.0)))?
            .try_add(&k4)?;
        g = axpy(&g, h / 6.0, &incr)?;
    }
    Ok(g)
}

/// Transports build_L0(z0) to z1.
pub fn ode_transport(
    z0: Complex64,
    z1: Complex64,
    steps: usize,
    order: usize,
    ctx: &EvalContext,
) -> Result<ComplexSeries> {
    check_path(z0, z1)?;
    rk4_transport(&build_l0(z0, order, ctx)?, z0, z1, steps)
}

fn check_path(z0: Complex64, z1: Complex64) -> Result<()> {
    // On a segment the distance to a point is minimized at the projection.
    let one = Complex64::new(1.0, 0.0);
    let dist = |p: Complex64| {
        let d = z1 - z0;
        let t = if d.norm_sqr() == 0.0 {
            0.0
        } else {
            ((p - z0) * d.conj()).re / d.norm_sqr()
        };
        (z0 + d * t.clamp(0.0, 1.0) - p).norm()
    };
    let m = dist(Complex64::new(0.0, 0.0)).min(dist(one));
    if !(m >= POLE_MARGIN) {
        return Err(Error::Pole(format!(
            "path comes within {m:e} of a singular point"
        )));
    }
    Ok(())
}
