//! Analytic electro-thermal estimation for digital ICs.
//!
//! * [`device`]: subthreshold current and threshold voltage of one transistor.
//! * [`leakage`]: OFF-chain collapsing and per-gate static power.
//! * [`thermal`]: closed-form surface temperature of rectangular heat sources
//!   with image-based boundary conditions.
//! * [`cosim`]: fixed-point coupling of leakage and temperature per block.
//! * [`oracle`]: brute-force references used to validate the closed forms.
//! * [`cli`]: project files, grid files and the `ptherm` command surface.
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the `*F64`
//! aliases below name the double-precision instantiations used by the CLI.

// Negated comparisons are how NaN inputs get rejected throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod cosim;
pub mod device;
mod error;
pub mod gates;
pub mod leakage;
pub mod oracle;
mod scalar;
pub mod thermal;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type DeviceParamsF64 = device::DeviceParams<f64>;
pub type OperatingPointF64 = device::OperatingPoint<f64>;
pub type TechnologyF64 = leakage::Technology<f64>;
pub type GateNetworkF64 = leakage::GateNetwork<f64>;
pub type HeatSourceF64 = thermal::HeatSource<f64>;
pub type ThermalSceneF64 = thermal::ThermalScene<f64>;
pub type ThermalGridF64 = thermal::ThermalGrid<f64>;
pub type BlockF64 = cosim::Block<f64>;
pub type CosimConfigF64 = cosim::CosimConfig<f64>;
pub type CosimReportF64 = cosim::CosimReport<f64>;

pub type DeviceParamsF32 = device::DeviceParams<f32>;
pub type HeatSourceF32 = thermal::HeatSource<f32>;
pub type ThermalSceneF32 = thermal::ThermalScene<f32>;
