//! Subthreshold device model.
//!
//! A single MOS transistor below threshold conducts
//!
//! ```text
//! I = (W/L)·I0·(T/Tref)²·exp[(Vgs − Vth)/(n·Vt)]·(1 − exp[−Vds/Vt])
//! Vth = Vt0 + γ·Vsb + Kt·(T − Tref) − σ·(Vds − Vdd)
//! ```
//!
//! `I0` is the prefactor of a device with `W = L` at `T = Tref`. The thermal
//! voltage `Vt = kB·T/q` is recomputed at every operating temperature.
//!
//! Both polarities share the same equations. pMOS devices are described by
//! their own [`DeviceParams`] with magnitudes (positive `v_t0`), and their
//! operating points are expressed in source-referenced magnitudes
//! (`Vsg`, `Vsd`, `Vbs`), which is what [`OperatingPoint::from_terminals`]
//! produces.
//!
//! The body-effect coefficient `gamma` is the same coefficient that appears
//! in the stack-collapsing exponents: for the top device of an nMOS OFF chain
//! (gate at 0, source at `V`, drain at `Vdd`, bulk at `Vb`) substitution gives
//! `Vgs − Vth = −Vt0 + γ·Vb − (1 + σ + γ)·V − Kt·(T − Tref)`.

use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// Boltzmann constant (J/K), CODATA 2018 exact.
pub const BOLTZMANN: f64 = 1.380649e-23;
/// Elementary charge (C), CODATA 2018 exact.
pub const ELEMENTARY_CHARGE: f64 = 1.602176634e-19;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Nmos,
    Pmos,
}

impl Polarity {
    /// Whether a logic input value makes a device of this polarity conduct.
    pub fn conducts(self, input_high: bool) -> bool {
        match self {
            Polarity::Nmos => input_high,
            Polarity::Pmos => !input_high,
        }
    }
}

impl std::fmt::Display for Polarity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Polarity::Nmos => "nmos",
            Polarity::Pmos => "pmos",
        })
    }
}

/// Process constants of one transistor polarity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceParams<S> {
    /// Current prefactor (A) for `W = L` at `t_ref`.
    pub i0: S,
    /// Subthreshold ideality factor.
    pub n: S,
    /// Zero-bias threshold voltage (V).
    pub v_t0: S,
    /// Linearized body-effect coefficient.
    pub gamma: S,
    /// DIBL coefficient.
    pub sigma: S,
    /// Threshold temperature sensitivity (V/K).
    pub k_t: S,
    /// Channel length (m).
    pub l: S,
    /// Substrate bias (V).
    pub v_b: S,
    /// Reference temperature (K).
    pub t_ref: S,
    pub polarity: Polarity,
}

impl<S: Scalar> DeviceParams<S> {
    /// Placeholder 0.12 µm-class parameter set used by examples and tests.
    ///
    /// These are calibration defaults: `Vt0 = 0.30 V`, `n = 1.4`,
    /// `σ = 0.08`, `γ = 0.20`, `Kt = −0.7 mV/K`, `I0 = 50 nA`,
    /// `L = 0.12 µm`, `Tref = 300 K`, `Vb = 0`.
    pub fn default_for(polarity: Polarity) -> Self {
        Self {
            i0: S::lit(50e-9),
            n: S::lit(1.4),
            v_t0: S::lit(0.30),
            gamma: S::lit(0.20),
            sigma: S::lit(0.08),
            k_t: S::lit(-0.7e-3),
            l: S::lit(0.12e-6),
            v_b: S::zero(),
            t_ref: S::lit(300.0),
            polarity,
        }
    }

    pub fn default_nmos() -> Self {
        Self::default_for(Polarity::Nmos)
    }

    pub fn default_pmos() -> Self {
        Self::default_for(Polarity::Pmos)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: S| v.is_finite();
        if !(ok(self.i0) && self.i0 > S::zero()) {
            return Err(domain(format!("i0 must be positive, got {}", self.i0)));
        }
        if !(ok(self.n) && self.n >= S::one()) {
            return Err(domain(format!("n must be >= 1, got {}", self.n)));
        }
        if !(ok(self.l) && self.l > S::zero()) {
            return Err(domain(format!("channel length must be positive, got {}", self.l)));
        }
        if !(ok(self.t_ref) && self.t_ref > S::zero()) {
            return Err(domain(format!("t_ref must be positive, got {}", self.t_ref)));
        }
        if !(ok(self.sigma) && self.sigma >= S::zero()) {
            return Err(domain(format!("sigma must be >= 0, got {}", self.sigma)));
        }
        if !(ok(self.gamma) && self.gamma >= S::zero()) {
            return Err(domain(format!("gamma must be >= 0, got {}", self.gamma)));
        }
        if !(ok(self.v_t0) && ok(self.k_t) && ok(self.v_b)) {
            return Err(domain("v_t0, k_t and v_b must be finite"));
        }
        Ok(())
    }

    /// Collapse exponent coefficient `1 + σ + γ`.
    pub fn stack_coefficient(&self) -> S {
        S::one() + self.sigma + self.gamma
    }

    /// Temperature factor `(T/Tref)²`.
    pub fn temperature_factor(&self, t: S) -> S {
        let r = t / self.t_ref;
        r * r
    }
}

/// Bias point of a single device, in polarity-normalized magnitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint<S> {
    pub v_gs: S,
    pub v_ds: S,
    pub v_sb: S,
    /// Temperature (K).
    pub t: S,
    /// Supply voltage (V).
    pub v_dd: S,
}

impl<S: Scalar> OperatingPoint<S> {
    /// Builds an operating point from absolute terminal voltages.
    ///
    /// For pMOS the source/drain/gate roles are dualized so that the
    /// returned values are `Vsg`, `Vsd` and `Vbs`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_terminals(polarity: Polarity, v_gate: S, v_drain: S, v_source: S, v_bulk: S, t: S, v_dd: S) -> Self {
        match polarity {
            Polarity::Nmos => {
                Self { v_gs: v_gate - v_source, v_ds: v_drain - v_source, v_sb: v_source - v_bulk, t, v_dd }
            }
            Polarity::Pmos => {
                Self { v_gs: v_source - v_gate, v_ds: v_source - v_drain, v_sb: v_bulk - v_source, t, v_dd }
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t.is_finite() && self.t > S::zero()) {
            return Err(domain(format!("temperature must be positive, got {}", self.t)));
        }
        if !(self.v_dd.is_finite() && self.v_dd > S::zero()) {
            return Err(domain(format!("supply voltage must be positive, got {}", self.v_dd)));
        }
        Ok(())
    }
}

/// `kB·T/q` in volts.
pub fn thermal_voltage<S: Scalar>(t: S) -> Result<S> {
    if !(t.is_finite() && t > S::zero()) {
        return Err(domain(format!("temperature must be positive, got {t}")));
    }
    Ok(S::lit(BOLTZMANN / ELEMENTARY_CHARGE) * t)
}

/// Threshold voltage including body effect, temperature shift and DIBL.
pub fn threshold_voltage<S: Scalar>(p: &DeviceParams<S>, op: &OperatingPoint<S>) -> S {
    p.v_t0 + p.gamma * op.v_sb + p.k_t * (op.t - p.t_ref) - p.sigma * (op.v_ds - op.v_dd)
}

/// Subthreshold drain current (A) of a device of width `w` (m).
pub fn subthreshold_current<S: Scalar>(p: &DeviceParams<S>, op: &OperatingPoint<S>, w: S) -> Result<S> {
    if !(w.is_finite() && w > S::zero()) {
        return Err(domain(format!("width must be positive, got {w}")));
    }
    op.validate()?;
    let vt = thermal_voltage(op.t)?;
    let vth = threshold_voltage(p, op);
    let gate = ((op.v_gs - vth) / (p.n * vt)).exp();
    let drain = -(-op.v_ds / vt).exp_m1();
    Ok(w / p.l * p.i0 * p.temperature_factor(op.t) * gate * drain)
}
