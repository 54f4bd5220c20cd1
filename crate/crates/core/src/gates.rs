//! Standard static CMOS cells expressed as rail-to-output branch lists.

use crate::device::Polarity;
use crate::error::{domain, Result};
use crate::leakage::{Branch, GateNetwork, Transistor};
use crate::scalar::Scalar;

fn single<S: Scalar>(id: String, w: S, polarity: Polarity, input: usize) -> Result<Branch<S>> {
    Branch::new(vec![Transistor::new(id, w, polarity, input)])
}

fn series<S: Scalar>(prefix: &str, k: usize, w: S, polarity: Polarity) -> Result<Branch<S>> {
    Branch::new((0..k).map(|i| Transistor::new(format!("{prefix}{i}"), w, polarity, i)).collect())
}

pub fn inverter<S: Scalar>(w_n: S, w_p: S) -> Result<GateNetwork<S>> {
    GateNetwork::new(
        "inv",
        1,
        vec![single("mp0".into(), w_p, Polarity::Pmos, 0)?],
        vec![single("mn0".into(), w_n, Polarity::Nmos, 0)?],
    )
}

/// `k`-input NAND: one series nMOS chain (input 0 at ground), `k` parallel pMOS.
pub fn nand<S: Scalar>(k: usize, w_n: S, w_p: S) -> Result<GateNetwork<S>> {
    if k == 0 {
        return Err(domain("NAND needs at least one input"));
    }
    let up = (0..k).map(|i| single(format!("mp{i}"), w_p, Polarity::Pmos, i)).collect::<Result<Vec<_>>>()?;
    GateNetwork::new(format!("nand{k}"), k, up, vec![series("mn", k, w_n, Polarity::Nmos)?])
}

/// `k`-input NOR: `k` parallel nMOS, one series pMOS chain (input 0 at supply).
pub fn nor<S: Scalar>(k: usize, w_n: S, w_p: S) -> Result<GateNetwork<S>> {
    if k == 0 {
        return Err(domain("NOR needs at least one input"));
    }
    let down = (0..k).map(|i| single(format!("mn{i}"), w_n, Polarity::Nmos, i)).collect::<Result<Vec<_>>>()?;
    GateNetwork::new(format!("nor{k}"), k, vec![series("mp", k, w_p, Polarity::Pmos)?], down)
}
