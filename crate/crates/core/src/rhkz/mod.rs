//! Fundamental solutions of the KZ equation dG/dz = (X0/z + X1/(1−z)) G,
//! the Drinfel'd associator, and their reconstruction from multiple zeta
//! values alone.

mod additive;
mod fundamental;
mod multiplicative;
mod ode;
pub mod quadrature;

pub use additive::{rh_solve_additive, ConstantRecovery, RhSolution, LIMIT_OFFSETS, SAMPLE_POINTS};
pub use fundamental::{
    associator_from_table, build_associator, build_l0, build_l1, connection_defect,
    connection_residual, duality_residual, kz_rhs, one_minus_z_pow_neg_x1, z_pow_x0, Associator,
    FundamentalSolution, Which,
};
pub use multiplicative::{rh_solve_multiplicative, MultiplicativeSolution};
pub use ode::{ode_transport, rk4_transport, POLE_MARGIN};
