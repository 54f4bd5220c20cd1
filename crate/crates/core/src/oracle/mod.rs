//! Brute-force references for the closed-form models.
//!
//! Nothing in here is used by the models themselves: stack node voltages are
//! found by bisection on the full device equations, the rectangle field by
//! adaptive cubature of the `1/r` kernel, and boundary flux by finite
//! differences of the superposed field.

mod bisect;
mod flux;
mod quadrature;
mod stack;

pub use flux::{
    boundary_flux_probe, boundary_flux_probe_with, peak_interior_gradient, Edge, FluxProbe, FluxProbeOptions,
};
pub use quadrature::{quadrature_rise, QuadratureEstimate, QuadratureSpec};
pub use stack::{
    exact_network_current, exact_pair_drop, exact_pair_root, exact_stack_current, StackSolution, MAX_STACK_DEPTH,
};
