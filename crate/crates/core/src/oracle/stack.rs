use crate::device::{subthreshold_current, thermal_voltage, DeviceParams, OperatingPoint};
use crate::error::{domain, Error, Result};
use crate::leakage::{classify_branch, Branch, BranchState};
use crate::scalar::Scalar;

use super::bisect::{bisect_decreasing, solve_drop};

/// Deepest chain the stack solver accepts.
pub const MAX_STACK_DEPTH: usize = 8;

/// Node voltage `V(N−1)` of an OFF pair with the lower device's source at
/// `v_lower_node`, from equating the top-device current (drain factor
/// dropped) with the lower-device current (drain factor kept).
pub fn exact_pair_root<S: Scalar>(
    w_top: S,
    w_bot: S,
    p: &DeviceParams<S>,
    v_dd: S,
    t: S,
    v_lower_node: S,
) -> Result<S> {
    Ok(v_lower_node + exact_pair_drop(w_top, w_bot, p, v_dd, t, v_lower_node)?)
}

/// Drop `V(N−1) − V(N−2)` satisfying the pair current balance.
pub fn exact_pair_drop<S: Scalar>(
    w_top: S,
    w_bot: S,
    p: &DeviceParams<S>,
    v_dd: S,
    t: S,
    v_lower_node: S,
) -> Result<S> {
    if !(w_top > S::zero() && w_bot > S::zero()) {
        return Err(domain("pair widths must be positive"));
    }
    let bracket_err = |context: &str| Error::Bracket {
        lo: v_lower_node.to_f64().unwrap_or(f64::NAN),
        hi: v_dd.to_f64().unwrap_or(f64::NAN),
        context: context.to_string(),
    };
    if !(v_dd > v_lower_node) {
        return Err(bracket_err("supply must exceed the lower node voltage"));
    }
    let vt = thermal_voltage(t)?;
    let nvt = p.n * vt;
    let c = p.stack_coefficient();
    let width_term = (w_bot / w_top).ln();
    // ln(I_lower) − ln(I_top) as a function of the drop.
    let g = |dv: S| width_term + (c * dv + p.sigma * (v_lower_node + dv - v_dd)) / nvt + (-(-dv / vt).exp_m1()).ln();
    solve_drop(g, v_dd - v_lower_node).ok_or_else(|| bracket_err("lower device cannot match the top device current"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct StackSolution<S> {
    /// Common current through every device (A).
    pub current: S,
    /// Internal node voltages V1 … V(N−1), rail side first (V).
    pub node_voltages: Vec<S>,
    /// Largest relative deviation of any device current from `current`.
    pub residual: S,
}

fn device_current<S: Scalar>(p: &DeviceParams<S>, w: S, v_s: S, v_d: S, v_dd: S, t: S) -> Result<S> {
    let op = OperatingPoint { v_gs: -v_s, v_ds: v_d - v_s, v_sb: v_s - p.v_b, t, v_dd };
    subthreshold_current(p, &op, w)
}

enum Propagation<S> {
    Nodes(Vec<S>),
    /// Some internal node would have to rise above the supply.
    Overshoot,
}

/// Node voltages forced by pushing `current` up from the rail through all
/// but the top device.
fn propagate<S: Scalar>(widths: &[S], p: &DeviceParams<S>, v_dd: S, t: S, current: S) -> Result<Propagation<S>> {
    let ln_i = current.ln();
    let mut nodes = Vec::with_capacity(widths.len() - 1);
    let mut v_src = S::zero();
    for &w in &widths[..widths.len() - 1] {
        // Every probe lies in (v_src, v_dd], so the device call cannot fail.
        let g = |dv: S| match device_current(p, w, v_src, v_src + dv, v_dd, t) {
            Ok(i) => i.ln() - ln_i,
            Err(_) => S::nan(),
        };
        match solve_drop(g, v_dd - v_src) {
            Some(dv) => {
                v_src = v_src + dv;
                nodes.push(v_src);
            }
            None => return Ok(Propagation::Overshoot),
        }
    }
    Ok(Propagation::Nodes(nodes))
}

/// Exact current of an all-OFF series chain (widths rail side first) with
/// the full device equation applied to every transistor.
pub fn exact_stack_current<S: Scalar>(widths: &[S], p: &DeviceParams<S>, v_dd: S, t: S) -> Result<StackSolution<S>> {
    if widths.is_empty() {
        return Err(domain("stack must contain at least one device"));
    }
    if widths.len() > MAX_STACK_DEPTH {
        return Err(Error::Resource(format!(
            "stack depth {} exceeds the solver limit of {MAX_STACK_DEPTH}",
            widths.len()
        )));
    }
    if !(v_dd > S::zero()) {
        return Err(Error::Bracket {
            lo: 0.0,
            hi: v_dd.to_f64().unwrap_or(f64::NAN),
            context: "non-positive supply".into(),
        });
    }
    let top = widths[widths.len() - 1];
    let i_hi = device_current(p, widths[0], S::zero(), v_dd, v_dd, t)?;
    if widths.len() == 1 {
        return Ok(StackSolution { current: i_hi, node_voltages: Vec::new(), residual: S::zero() });
    }

    // h(ln I) = ln I_top(nodes(I)) − ln I, decreasing in I.
    let h = |ln_i: S| -> S {
        match propagate(widths, p, v_dd, t, ln_i.exp()) {
            Ok(Propagation::Nodes(nodes)) => {
                let v = *nodes.last().expect("at least one internal node");
                match device_current(p, top, v, v_dd, v_dd, t) {
                    Ok(i) => i.ln() - ln_i,
                    Err(_) => S::nan(),
                }
            }
            Ok(Propagation::Overshoot) => -S::one(),
            Err(_) => S::nan(),
        }
    };
    let hi = i_hi.ln();
    let lo = hi - S::lit(200.0);
    let h_lo = h(lo);
    if !(h_lo > S::zero()) {
        return Err(Error::Bracket {
            lo: lo.exp().to_f64().unwrap_or(0.0),
            hi: i_hi.to_f64().unwrap_or(f64::NAN),
            context: "stack current not bracketed".into(),
        });
    }
    let ln_i = bisect_decreasing(h, lo, hi, S::epsilon() * S::lit(4.0));
    let current = ln_i.exp();
    let nodes = match propagate(widths, p, v_dd, t, current)? {
        Propagation::Nodes(n) => n,
        Propagation::Overshoot => {
            return Err(Error::Convergence {
                reason: "stack solution collapsed onto the supply".into(),
                residual: f64::INFINITY,
            })
        }
    };

    let mut residual = S::zero();
    let mut v_src = S::zero();
    for (k, &w) in widths.iter().enumerate() {
        let v_d = nodes.get(k).copied().unwrap_or(v_dd);
        let i = device_current(p, w, v_src, v_d, v_dd, t)?;
        residual = residual.max(((i - current) / current).abs());
        v_src = v_d;
    }
    let limit = S::lit(1e-6).max(S::epsilon() * S::lit(1e4));
    if !(residual <= limit) {
        return Err(Error::Convergence {
            reason: "current continuity not met".into(),
            residual: residual.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(StackSolution { current, node_voltages: nodes, residual })
}

/// Exact OFF current of a single-polarity network: the sum over OFF
/// branches of their exact stack currents, or `None` when a branch conducts.
pub fn exact_network_current<S: Scalar>(
    branches: &[Branch<S>],
    inputs: &[bool],
    p: &DeviceParams<S>,
    v_dd: S,
    t: S,
) -> Result<Option<S>> {
    let mut total = S::zero();
    for b in branches {
        match classify_branch(b, inputs)? {
            BranchState::On => return Ok(None),
            BranchState::Off(chain) => {
                let widths: Vec<S> = chain.iter().map(|t| t.width).collect();
                total = total + exact_stack_current(&widths, p, v_dd, t)?.current;
            }
        }
    }
    Ok(Some(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leakage::pair_vds;
    use approx::assert_relative_eq;

    const T: f64 = 300.0;
    const VDD: f64 = 1.2;

    fn p() -> DeviceParams<f64> {
        DeviceParams::default_nmos()
    }

    #[test]
    fn single_device_is_direct_evaluation() {
        let s = exact_stack_current(&[0.3e-6], &p(), VDD, T).unwrap();
        let op = OperatingPoint { v_gs: 0.0, v_ds: VDD, v_sb: 0.0, t: T, v_dd: VDD };
        assert_eq!(s.current, subthreshold_current(&p(), &op, 0.3e-6).unwrap());
        assert!(s.node_voltages.is_empty());
    }

    #[test]
    fn two_device_continuity() {
        let s = exact_stack_current(&[0.24e-6, 0.24e-6], &p(), VDD, T).unwrap();
        assert!(s.residual < 1e-6);
        assert_eq!(s.node_voltages.len(), 1);
        assert!(s.node_voltages[0] > 0.0 && s.node_voltages[0] < VDD);
    }

    #[test]
    fn stack_currents_decrease() {
        let mut last = f64::INFINITY;
        for n in 1..=MAX_STACK_DEPTH {
            let s = exact_stack_current(&vec![0.24e-6; n], &p(), VDD, T).unwrap();
            assert!(s.current < last);
            assert!(s.node_voltages.windows(2).all(|w| w[0] < w[1]));
            last = s.current;
        }
        assert!(exact_stack_current(&[0.24e-6; MAX_STACK_DEPTH + 1], &p(), VDD, T).is_err());
    }

    #[test]
    fn pair_root_composition_matches_stack() {
        for (wt, wb) in [(0.24e-6, 0.24e-6), (1e-6, 0.25e-6), (0.1e-6, 1.6e-6)] {
            let v1 = exact_pair_root(wt, wb, &p(), VDD, T, 0.0).unwrap();
            let op = OperatingPoint { v_gs: 0.0, v_ds: v1, v_sb: 0.0, t: T, v_dd: VDD };
            let i = subthreshold_current(&p(), &op, wb).unwrap();
            let s = exact_stack_current(&[wb, wt], &p(), VDD, T).unwrap();
            assert_relative_eq!(i, s.current, max_relative = 1e-9);
            assert_relative_eq!(v1, s.node_voltages[0], max_relative = 1e-9);
        }
    }

    #[test]
    fn pair_root_near_empirical_value() {
        let mut p = p();
        p.sigma = 0.0;
        let exact = exact_pair_drop(1e-6, 1e-6, &p, VDD, T, 0.0).unwrap();
        let model = pair_vds(1e-6, 1e-6, &p, VDD, T).unwrap();
        assert!((model / exact - 1.0).abs() < 0.2);
    }

    #[test]
    fn pair_root_grows_with_log_ratio() {
        // In the large-drop regime the drop is linear in ln(ratio).
        let d = |r: f64| exact_pair_drop(r, 1.0, &p(), VDD, T, 0.0).unwrap();
        let (a, b, c) = (d(1e3), d(1e4), d(1e5));
        assert!(b > a && c > b);
        assert!(((c - b) / (b - a) - 1.0).abs() < 0.01);
    }

    #[test]
    fn pair_root_bracket_errors() {
        assert!(matches!(exact_pair_root(1.0, 1.0, &p(), 0.0, T, 0.0), Err(Error::Bracket { .. })));
        assert!(matches!(exact_pair_root(1.0, 1.0, &p(), -1.0, T, 0.0), Err(Error::Bracket { .. })));
        // A bottom device far too narrow to carry the top current within the supply.
        assert!(matches!(exact_pair_root(1e30, 1.0, &p(), VDD, T, 0.0), Err(Error::Bracket { .. })));
    }
}
