//! Spectra of power-law and logarithmic central potentials.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod eigen;
pub mod envelope;
pub mod error;
pub mod interpolation;
pub mod nbody;
pub mod ode;
pub mod optimize;
pub mod output;
pub mod p_representation;
pub mod potential;

pub use eigen::{
    scale_log_eigenvalue, scale_power_eigenvalue, solve_radial, solve_radial_with_kinetic,
    EigenResult, EigenSolveConfig, QuantumNumbers,
};
pub use error::{Error, Result};
pub use interpolation::{build_cubic, interpolated_energy, table1, AnchorSet, PCurve, Table1Row};
pub use p_representation::{
    energy_from_p, energy_from_p_log, p_from_energy, p_log_from_energy, semiclassical_energy,
    PNumber,
};
pub use potential::{PowerTerm, RadialPotential, Shape};
