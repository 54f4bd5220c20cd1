//! Static (subthreshold) leakage of CMOS gates by chain collapsing.
//!
//! A gate is described by its pull-up and pull-down networks, each a list of
//! series branches running from the rail to the output. For an input vector,
//! a branch whose devices are all conducting is ON; any other branch is OFF
//! and contributes the current of its OFF devices only (conducting devices
//! are treated as part of the internal nodes).
//!
//! An OFF chain `T1 … TN` (T1 at the rail) is reduced from the output side:
//! the top pair is replaced by an equivalent device whose width shrinks
//! exponentially with the pair's drain-source drop, and the step repeats
//! until one device remains. Parallel OFF chains add their effective widths;
//! an OFF chain in parallel with an ON chain pins the network and is ignored.

use crate::device::{thermal_voltage, DeviceParams, Polarity};
use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Transistor<S> {
    pub id: String,
    /// Channel width (m).
    pub width: S,
    pub polarity: Polarity,
    /// Gate input driving this device.
    pub input_index: usize,
}

impl<S: Scalar> Transistor<S> {
    pub fn new(id: impl Into<String>, width: S, polarity: Polarity, input_index: usize) -> Self {
        Self { id: id.into(), width, polarity, input_index }
    }

    /// Whether the device conducts for the given input vector.
    pub fn is_on(&self, inputs: &[bool]) -> Result<bool> {
        inputs.get(self.input_index).map(|&v| self.polarity.conducts(v)).ok_or_else(|| {
            domain(format!(
                "transistor `{}` reads input {} but only {} inputs were given",
                self.id,
                self.input_index,
                inputs.len()
            ))
        })
    }
}

/// Series chain ordered from the rail-side device outward.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch<S> {
    transistors: Vec<Transistor<S>>,
}

impl<S: Scalar> Branch<S> {
    pub fn new(transistors: Vec<Transistor<S>>) -> Result<Self> {
        let first = transistors.first().ok_or_else(|| domain("branch must contain at least one transistor"))?;
        if transistors.iter().any(|t| t.polarity != first.polarity) {
            return Err(domain("all transistors of a branch must share one polarity"));
        }
        if let Some(t) = transistors.iter().find(|t| !(t.width.is_finite() && t.width > S::zero())) {
            return Err(domain(format!("transistor `{}` has non-positive width {}", t.id, t.width)));
        }
        Ok(Self { transistors })
    }

    pub fn transistors(&self) -> &[Transistor<S>] {
        &self.transistors
    }

    pub fn polarity(&self) -> Polarity {
        self.transistors[0].polarity
    }

    pub fn len(&self) -> usize {
        self.transistors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transistors.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    PullUp,
    PullDown,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::PullUp => "pull_up",
            Side::PullDown => "pull_down",
        })
    }
}

/// A static CMOS gate as two branch lists.
#[derive(Debug, Clone, PartialEq)]
pub struct GateNetwork<S> {
    name: String,
    num_inputs: usize,
    pull_up: Vec<Branch<S>>,
    pull_down: Vec<Branch<S>>,
}

impl<S: Scalar> GateNetwork<S> {
    pub fn new(
        name: impl Into<String>,
        num_inputs: usize,
        pull_up: Vec<Branch<S>>,
        pull_down: Vec<Branch<S>>,
    ) -> Result<Self> {
        let name = name.into();
        for (side, branches, polarity) in
            [(Side::PullUp, &pull_up, Polarity::Pmos), (Side::PullDown, &pull_down, Polarity::Nmos)]
        {
            if branches.is_empty() {
                return Err(domain(format!("gate `{name}`: {side} network is empty")));
            }
            for b in branches {
                if b.polarity() != polarity {
                    return Err(domain(format!("gate `{name}`: {side} branch must be {polarity}")));
                }
                if let Some(t) = b.transistors().iter().find(|t| t.input_index >= num_inputs) {
                    return Err(domain(format!(
                        "gate `{name}`: transistor `{}` uses input {} of {num_inputs}",
                        t.id, t.input_index
                    )));
                }
            }
        }
        Ok(Self { name, num_inputs, pull_up, pull_down })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn pull_up(&self) -> &[Branch<S>] {
        &self.pull_up
    }

    pub fn pull_down(&self) -> &[Branch<S>] {
        &self.pull_down
    }

    pub fn network(&self, side: Side) -> &[Branch<S>] {
        match side {
            Side::PullUp => &self.pull_up,
            Side::PullDown => &self.pull_down,
        }
    }
}

/// Supply and per-polarity device parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Technology<S> {
    pub nmos: DeviceParams<S>,
    pub pmos: DeviceParams<S>,
    pub v_dd: S,
}

impl<S: Scalar> Default for Technology<S> {
    fn default() -> Self {
        Self { nmos: DeviceParams::default_nmos(), pmos: DeviceParams::default_pmos(), v_dd: S::lit(1.2) }
    }
}

impl<S: Scalar> Technology<S> {
    pub fn params(&self, polarity: Polarity) -> &DeviceParams<S> {
        match polarity {
            Polarity::Nmos => &self.nmos,
            Polarity::Pmos => &self.pmos,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.nmos.validate()?;
        self.pmos.validate()?;
        if self.nmos.polarity != Polarity::Nmos || self.pmos.polarity != Polarity::Pmos {
            return Err(domain("technology parameter sets have swapped polarities"));
        }
        if !(self.v_dd.is_finite() && self.v_dd > S::zero()) {
            return Err(domain(format!("supply voltage must be positive, got {}", self.v_dd)));
        }
        Ok(())
    }
}

/// How the width ratio of each collapse step is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairWidthMode {
    /// Equivalent width accumulated so far over the next device down.
    #[default]
    RunningEquivalent,
    /// Adjacent original device widths at every level.
    OriginalWidths,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollapseResult<S> {
    /// Effective width of the single equivalent device (m).
    pub w_eff: S,
    /// Stepwise product of the per-pair width reductions; agrees with
    /// `w_eff` to round-off.
    pub w_eff_stepwise: S,
    /// Drain-source drop of T1 … T(N−1), rail side first (V).
    pub node_drops: Vec<S>,
    /// Voltage of the node under the top OFF device (V).
    pub v_top: S,
}

pub enum BranchState<'a, S> {
    On,
    /// OFF devices in rail-to-output order.
    Off(Vec<&'a Transistor<S>>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NetworkState<S> {
    /// At least one branch conducts.
    Pinned,
    Off {
        w_eff: S,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateLeakage<S> {
    pub side: Side,
    /// Effective width of the OFF network (m).
    pub w_eff: S,
    /// OFF current (A).
    pub i_off: S,
    /// Static power `Vdd·I_off` (W).
    pub p_static: S,
}

/// Empirical drain-source drop across the lower device of an OFF pair.
///
/// With `f = ln(w_top/w_bot) + σ·Vdd/(n·Vt)` and `α = n/(1 + γ + 2σ)`
/// returns `Vt·{1 + (α−1)·e^f/(α−1+e^f)}·ln(1 + e^f)`, which tends to
/// `α·Vt·f` for large `f` and to `Vt·e^f` for very negative `f`.
pub fn pair_vds<S: Scalar>(w_top: S, w_bot: S, p: &DeviceParams<S>, v_dd: S, t: S) -> Result<S> {
    if !(w_top > S::zero() && w_bot > S::zero()) {
        return Err(domain(format!("pair widths must be positive, got {w_top} and {w_bot}")));
    }
    let vt = thermal_voltage(t)?;
    let f = (w_top / w_bot).ln() + p.sigma * v_dd / (p.n * vt);
    let v = vt * pair_shape(f, pair_alpha(p));
    if !(v.is_finite() && v > S::zero()) {
        return Err(domain(format!("pair drop undefined at f = {f} (got {v})")));
    }
    Ok(v)
}

/// `α = n/(1 + γ + 2σ)`.
pub fn pair_alpha<S: Scalar>(p: &DeviceParams<S>) -> S {
    p.n / (S::one() + p.gamma + S::two() * p.sigma)
}

/// Dimensionless pair drop `{1 + (α−1)e^f/(α−1+e^f)}·ln(1+e^f)`.
pub fn pair_shape<S: Scalar>(f: S, alpha: S) -> S {
    let am1 = alpha - S::one();
    // Both factors are rewritten in e^{-f} for large f so nothing overflows.
    let (blend, softplus) = if f > S::zero() {
        let e = (-f).exp();
        (am1 / (am1 * e + S::one()), f + e.ln_1p())
    } else {
        let e = f.exp();
        (am1 * e / (am1 + e), e.ln_1p())
    };
    (S::one() + blend) * softplus
}

/// Collapses an all-OFF chain given its widths (rail side first).
pub fn collapse_widths<S: Scalar>(
    widths: &[S],
    p: &DeviceParams<S>,
    v_dd: S,
    t: S,
    mode: PairWidthMode,
) -> Result<CollapseResult<S>> {
    let (&w_top, lower) = widths.split_last().ok_or_else(|| domain("cannot collapse an empty chain"))?;
    if let Some(w) = widths.iter().find(|w| !(w.is_finite() && **w > S::zero())) {
        return Err(domain(format!("chain width must be positive, got {w}")));
    }
    let vt = thermal_voltage(t)?;
    let shrink = p.stack_coefficient() / (p.n * vt);

    let mut drops = vec![S::zero(); lower.len()];
    let mut w_eq = w_top;
    for i in (0..lower.len()).rev() {
        let upper = match mode {
            PairWidthMode::RunningEquivalent => w_eq,
            PairWidthMode::OriginalWidths => widths[i + 1],
        };
        let v = pair_vds(upper, lower[i], p, v_dd, t)?;
        drops[i] = v;
        w_eq = w_eq * (-shrink * v).exp();
    }
    let v_top = drops.iter().fold(S::zero(), |acc, &v| acc + v);
    Ok(CollapseResult { w_eff: w_top * (-shrink * v_top).exp(), w_eff_stepwise: w_eq, node_drops: drops, v_top })
}

/// Collapses a branch whose transistors are all OFF.
pub fn collapse_chain<S: Scalar>(
    branch: &[&Transistor<S>],
    p: &DeviceParams<S>,
    v_dd: S,
    t: S,
    mode: PairWidthMode,
) -> Result<CollapseResult<S>> {
    let widths: Vec<S> = branch.iter().map(|t| t.width).collect();
    collapse_widths(&widths, p, v_dd, t, mode)
}

pub fn classify_branch<'a, S: Scalar>(b: &'a Branch<S>, inputs: &[bool]) -> Result<BranchState<'a, S>> {
    let mut off = Vec::new();
    for t in b.transistors() {
        if !t.is_on(inputs)? {
            off.push(t);
        }
    }
    Ok(if off.is_empty() { BranchState::On } else { BranchState::Off(off) })
}

/// Effective width of a single-polarity network for an input vector.
pub fn network_effective_width<S: Scalar>(
    branches: &[Branch<S>],
    inputs: &[bool],
    p: &DeviceParams<S>,
    v_dd: S,
    t: S,
    mode: PairWidthMode,
) -> Result<NetworkState<S>> {
    if branches.is_empty() {
        return Err(domain("network has no branches"));
    }
    if branches.iter().any(|b| b.polarity() != p.polarity) {
        return Err(domain(format!("network mixes devices with {} parameters", p.polarity)));
    }
    let mut off_chains = Vec::with_capacity(branches.len());
    for b in branches {
        match classify_branch(b, inputs)? {
            BranchState::On => return Ok(NetworkState::Pinned),
            BranchState::Off(chain) => off_chains.push(chain),
        }
    }
    let mut w_eff = S::zero();
    for chain in &off_chains {
        w_eff = w_eff + collapse_chain(chain, p, v_dd, t, mode)?.w_eff;
    }
    Ok(NetworkState::Off { w_eff })
}

/// OFF current of a single equivalent device of width `w_eff` with the full
/// supply across it.
pub fn equivalent_off_current<S: Scalar>(w_eff: S, p: &DeviceParams<S>, t: S) -> Result<S> {
    let vt = thermal_voltage(t)?;
    let exponent = (-p.v_t0 - p.k_t * (t - p.t_ref) + p.gamma * p.v_b) / (p.n * vt);
    Ok(w_eff / p.l * p.i0 * p.temperature_factor(t) * exponent.exp())
}

pub fn gate_static_power<S: Scalar>(
    g: &GateNetwork<S>,
    inputs: &[bool],
    tech: &Technology<S>,
    t: S,
) -> Result<GateLeakage<S>> {
    gate_static_power_with_mode(g, inputs, tech, t, PairWidthMode::default())
}

pub fn gate_static_power_with_mode<S: Scalar>(
    g: &GateNetwork<S>,
    inputs: &[bool],
    tech: &Technology<S>,
    t: S,
    mode: PairWidthMode,
) -> Result<GateLeakage<S>> {
    if inputs.len() != g.num_inputs() {
        return Err(domain(format!("gate `{}` takes {} inputs, got {}", g.name(), g.num_inputs(), inputs.len())));
    }
    let up = network_effective_width(g.pull_up(), inputs, &tech.pmos, tech.v_dd, t, mode)?;
    let down = network_effective_width(g.pull_down(), inputs, &tech.nmos, tech.v_dd, t, mode)?;
    let topology = |reason: &str| Error::Topology {
        gate: g.name().to_string(),
        inputs: format_inputs(inputs),
        reason: reason.to_string(),
    };
    let (side, w_eff) = match (up, down) {
        (NetworkState::Pinned, NetworkState::Off { w_eff }) => (Side::PullDown, w_eff),
        (NetworkState::Off { w_eff }, NetworkState::Pinned) => (Side::PullUp, w_eff),
        (NetworkState::Pinned, NetworkState::Pinned) => {
            return Err(topology("both networks conduct (non-complementary gate)"))
        }
        (NetworkState::Off { .. }, NetworkState::Off { .. }) => {
            return Err(topology("neither network conducts (floating output)"))
        }
    };
    let p = match side {
        Side::PullUp => &tech.pmos,
        Side::PullDown => &tech.nmos,
    };
    let i_off = equivalent_off_current(w_eff, p, t)?;
    Ok(GateLeakage { side, w_eff, i_off, p_static: tech.v_dd * i_off })
}

/// Switching power `activity·f·C·Vdd²`.
pub fn transient_power<S: Scalar>(activity: S, frequency: S, capacitance: S, v_dd: S) -> S {
    activity * frequency * capacitance * v_dd * v_dd
}

/// Renders an input vector as a bit string, input 0 first.
pub fn format_inputs(inputs: &[bool]) -> String {
    inputs.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Parses a bit string written by [`format_inputs`].
pub fn parse_inputs(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(domain(format!("invalid input bit `{other}` in `{s}`"))),
        })
        .collect()
}

/// Every input vector of an `n`-input gate, in binary counting order
/// with input 0 as the most significant bit.
pub fn all_vectors(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1usize << n).map(move |k| (0..n).map(|i| (k >> (n - 1 - i)) & 1 == 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates;
    use approx::assert_relative_eq;

    const T: f64 = 300.0;
    const VDD: f64 = 1.2;

    fn p() -> DeviceParams<f64> {
        DeviceParams::default_nmos()
    }

    #[test]
    fn pair_vds_equal_widths_no_dibl() {
        let mut p = p();
        p.sigma = 0.0;
        let vt = thermal_voltage(T).unwrap();
        let alpha = p.n / (1.0 + p.gamma);
        let expected = vt * (2.0 * alpha - 1.0) / alpha * 2f64.ln();
        assert_relative_eq!(pair_vds(1e-6, 1e-6, &p, VDD, T).unwrap(), expected, max_relative = 1e-13);
    }

    #[test]
    fn pair_vds_asymptotes() {
        let p = p();
        let vt = thermal_voltage(T).unwrap();
        let dibl = p.sigma * VDD / (p.n * vt);
        let alpha = pair_alpha(&p);
        let ratio = 1e6;
        let f = f64::ln(ratio) + dibl;
        let v = pair_vds(ratio, 1.0, &p, VDD, T).unwrap();
        assert!((v / (alpha * vt * f) - 1.0).abs() < 0.01);

        let ratio = 1e-9;
        let f = f64::ln(ratio) + dibl;
        let v = pair_vds(ratio, 1.0, &p, VDD, T).unwrap();
        assert!((v / (vt * f.exp()) - 1.0).abs() < 0.01);
    }

    #[test]
    fn pair_shape_is_increasing_and_finite() {
        let alpha = pair_alpha(&p());
        let mut last = 0.0;
        for k in -400..=400 {
            let f = k as f64 * 0.1;
            let v = pair_shape(f, alpha);
            assert!(v.is_finite() && v > last, "not increasing at f = {f}");
            last = v;
        }
        assert!(pair_shape(800.0, alpha).is_finite());
        assert!(pair_shape(-800.0, alpha) >= 0.0);
    }

    #[test]
    fn single_device_chain() {
        let r = collapse_widths(&[0.5e-6], &p(), VDD, T, PairWidthMode::default()).unwrap();
        assert_eq!(r.w_eff, 0.5e-6);
        assert!(r.node_drops.is_empty());
        assert_eq!(r.v_top, 0.0);
        assert!(collapse_widths::<f64>(&[], &p(), VDD, T, PairWidthMode::default()).is_err());
    }

    #[test]
    fn two_device_chain_no_dibl() {
        let mut p = p();
        p.sigma = 0.0;
        let w = 0.3e-6;
        let vt = thermal_voltage(T).unwrap();
        let vds = pair_vds(w, w, &p, VDD, T).unwrap();
        let r = collapse_widths(&[w, w], &p, VDD, T, PairWidthMode::default()).unwrap();
        assert_relative_eq!(r.w_eff, w * (-(1.0 + p.gamma) * vds / (p.n * vt)).exp(), max_relative = 1e-14);
        assert_eq!(r.node_drops, vec![vds]);
    }

    #[test]
    fn stack_effect_equal_widths() {
        let w = 0.24e-6;
        let mut last = f64::INFINITY;
        for n in 1..=8 {
            let r = collapse_widths(&vec![w; n], &p(), VDD, T, PairWidthMode::default()).unwrap();
            assert!(r.w_eff < last);
            assert!(r.w_eff <= w);
            assert!(r.node_drops.iter().all(|&v| v >= 0.0));
            assert_relative_eq!(r.w_eff, r.w_eff_stepwise, max_relative = 1e-12);
            last = r.w_eff;
        }
    }

    #[test]
    fn width_modes_agree_for_two_devices() {
        let w = [0.2e-6, 0.8e-6];
        let a = collapse_widths(&w, &p(), VDD, T, PairWidthMode::RunningEquivalent).unwrap();
        let b = collapse_widths(&w, &p(), VDD, T, PairWidthMode::OriginalWidths).unwrap();
        assert_eq!(a, b);
        let w = [0.2e-6, 0.8e-6, 0.4e-6];
        let a = collapse_widths(&w, &p(), VDD, T, PairWidthMode::RunningEquivalent).unwrap();
        let b = collapse_widths(&w, &p(), VDD, T, PairWidthMode::OriginalWidths).unwrap();
        assert_eq!(a.node_drops[1], b.node_drops[1]);
        assert_ne!(a.node_drops[0], b.node_drops[0]);
    }

    #[test]
    fn branch_classification() {
        let a = Transistor::new("a", 1e-6, Polarity::Nmos, 0);
        let b = Transistor::new("b", 1e-6, Polarity::Nmos, 1);
        let br = Branch::new(vec![a, b]).unwrap();
        assert!(matches!(classify_branch(&br, &[true, true]).unwrap(), BranchState::On));
        match classify_branch(&br, &[true, false]).unwrap() {
            BranchState::Off(off) => {
                assert_eq!(off.len(), 1);
                assert_eq!(off[0].id, "b");
            }
            BranchState::On => panic!("expected OFF"),
        }
        assert!(classify_branch(&br, &[true]).is_err());

        let pa = Branch::new(vec![Transistor::new("pa", 1e-6, Polarity::Pmos, 0)]).unwrap();
        assert!(matches!(classify_branch(&pa, &[false]).unwrap(), BranchState::On));
    }

    #[test]
    fn branch_rejects_mixed_polarity() {
        let a = Transistor::new("a", 1e-6, Polarity::Nmos, 0);
        let b = Transistor::new("b", 1e-6, Polarity::Pmos, 0);
        assert!(Branch::new(vec![a, b]).is_err());
        assert!(Branch::<f64>::new(vec![]).is_err());
    }

    #[test]
    fn nand2_networks() {
        let tech = Technology::<f64>::default();
        let g = gates::nand(2, 0.24e-6, 0.48e-6).unwrap();
        let mode = PairWidthMode::default();
        let up = network_effective_width(g.pull_up(), &[true, true], &tech.pmos, VDD, T, mode).unwrap();
        assert_eq!(up, NetworkState::Off { w_eff: 0.96e-6 });
        let down = network_effective_width(g.pull_down(), &[true, true], &tech.nmos, VDD, T, mode).unwrap();
        assert_eq!(down, NetworkState::Pinned);
        let down = network_effective_width(g.pull_down(), &[false, false], &tech.nmos, VDD, T, mode).unwrap();
        let chain = collapse_widths(&[0.24e-6, 0.24e-6], &tech.nmos, VDD, T, mode).unwrap();
        assert_eq!(down, NetworkState::Off { w_eff: chain.w_eff });
        assert!(network_effective_width::<f64>(&[], &[true], &tech.nmos, VDD, T, mode).is_err());
    }

    #[test]
    fn inverter_leakage_linear_in_width() {
        let tech = Technology::<f64>::default();
        let a = gate_static_power(&gates::inverter(0.24e-6, 0.48e-6).unwrap(), &[true], &tech, T).unwrap();
        let b = gate_static_power(&gates::inverter(0.24e-6, 0.96e-6).unwrap(), &[true], &tech, T).unwrap();
        assert_eq!(a.side, Side::PullUp);
        assert_relative_eq!(b.i_off, 2.0 * a.i_off, max_relative = 1e-14);
        assert_relative_eq!(a.p_static, VDD * a.i_off, max_relative = 1e-15);
    }

    #[test]
    fn nand2_stack_effect() {
        let tech = Technology::<f64>::default();
        let g = gates::nand(2, 0.24e-6, 0.48e-6).unwrap();
        let i00 = gate_static_power(&g, &[false, false], &tech, T).unwrap();
        let i10 = gate_static_power(&g, &[true, false], &tech, T).unwrap();
        let i01 = gate_static_power(&g, &[false, true], &tech, T).unwrap();
        assert_eq!(i00.side, Side::PullDown);
        assert!(i00.i_off < i10.i_off);
        assert_eq!(i10.i_off, i01.i_off);
    }

    #[test]
    fn temperature_factor_of_single_device() {
        let tech = Technology::<f64>::default();
        let g = gates::inverter(0.24e-6, 0.48e-6).unwrap();
        let cold = gate_static_power(&g, &[false], &tech, 300.0).unwrap();
        let hot = gate_static_power(&g, &[false], &tech, 325.0).unwrap();
        let p = &tech.nmos;
        let ratio = |t: f64| {
            let vt = thermal_voltage(t).unwrap();
            (t / 300.0).powi(2) * ((-p.v_t0 - p.k_t * (t - 300.0)) / (p.n * vt)).exp()
        };
        assert_relative_eq!(hot.i_off / cold.i_off, ratio(325.0) / ratio(300.0), max_relative = 1e-12);

        let g = gates::nand(3, 0.24e-6, 0.48e-6).unwrap();
        let v = [false; 3];
        let mut last = 0.0;
        for t in [280.0, 300.0, 325.0, 350.0, 400.0] {
            let i = gate_static_power(&g, &v, &tech, t).unwrap().i_off;
            assert!(i > last);
            last = i;
        }
    }

    #[test]
    fn non_complementary_gate_is_rejected() {
        let tech = Technology::<f64>::default();
        let up = vec![Branch::new(vec![Transistor::new("p", 0.5e-6, Polarity::Pmos, 0)]).unwrap()];
        // Pull-down driven by the same polarity sense as the pull-up: both conduct at a=0.
        let down = vec![Branch::new(vec![Transistor::new("n", 0.5e-6, Polarity::Nmos, 1)]).unwrap()];
        let g = GateNetwork::new("bad", 2, up, down).unwrap();
        assert!(matches!(gate_static_power(&g, &[false, true], &tech, T), Err(Error::Topology { .. })));
        assert!(matches!(gate_static_power(&g, &[true, false], &tech, T), Err(Error::Topology { .. })));
        assert!(gate_static_power(&g, &[false], &tech, T).is_err());
    }

    #[test]
    fn gate_construction_checks() {
        let n = || vec![Branch::new(vec![Transistor::new("n", 1e-6, Polarity::Nmos, 0)]).unwrap()];
        let p = || vec![Branch::new(vec![Transistor::new("p", 1e-6, Polarity::Pmos, 0)]).unwrap()];
        assert!(GateNetwork::new("swap", 1, n(), p()).is_err());
        assert!(GateNetwork::new("range", 0, p(), n()).is_err());
        assert!(GateNetwork::new("ok", 1, p(), n()).is_ok());
    }

    #[test]
    fn transient_power_arithmetic() {
        assert_eq!(transient_power(0.0, 1e9, 100e-15, 1.2), 0.0);
        assert_relative_eq!(transient_power(0.1, 1e9, 100e-15, 1.2), 14.4e-6, max_relative = 1e-12);
        assert_relative_eq!(
            transient_power(0.1, 2e9, 100e-15, 1.2),
            2.0 * transient_power(0.1, 1e9, 100e-15, 1.2),
            max_relative = 1e-15
        );
    }

    #[test]
    fn input_strings() {
        assert_eq!(parse_inputs("0110").unwrap(), vec![false, true, true, false]);
        assert!(parse_inputs("01x").is_err());
        let v: Vec<String> = all_vectors(2).map(|v| format_inputs(&v)).collect();
        assert_eq!(v, ["00", "01", "10", "11"]);
    }
}
