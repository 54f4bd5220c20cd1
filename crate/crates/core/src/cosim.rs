//! Self-consistent leakage/temperature solve over circuit blocks.
//!
//! Each block is a rectangular heat source whose power is its dynamic power
//! plus the static power of its gates evaluated at the block temperature.
//! Block temperatures are read at footprint centers and iterated with
//! optional under-relaxation until they stop moving.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::leakage::{gate_static_power, GateNetwork, Technology};
use crate::scalar::Scalar;
use crate::thermal::{HeatSource, ThermalField, ThermalScene};

#[derive(Debug, Clone, PartialEq)]
pub struct GateInstance<S> {
    pub gate: Arc<GateNetwork<S>>,
    pub inputs: Vec<bool>,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Block<S> {
    pub id: String,
    /// Footprint on the die; its power field is ignored.
    pub footprint: HeatSource<S>,
    /// Dynamic power (W).
    pub dynamic_power: S,
    pub gates: Vec<GateInstance<S>>,
}

impl<S: Scalar> Block<S> {
    /// Static power (W) of all gate instances at temperature `t`.
    pub fn static_power(&self, tech: &Technology<S>, t: S) -> Result<S> {
        let mut total = S::zero();
        for g in &self.gates {
            let leak = gate_static_power(&g.gate, &g.inputs, tech, t)?;
            let m = S::from_u64(g.multiplicity).expect("multiplicity representable");
            total = total + leak.p_static * m;
        }
        Ok(total)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosimConfig<S> {
    /// Convergence threshold on the largest block-temperature change (K).
    pub tol: S,
    pub max_iter: usize,
    /// Relaxation factor in (0, 1].
    pub damping: S,
    /// Largest admissible rise above the sink before declaring runaway (K).
    pub runaway_limit: S,
}

impl<S: Scalar> Default for CosimConfig<S> {
    fn default() -> Self {
        Self { tol: S::lit(0.01), max_iter: 50, damping: S::one(), runaway_limit: S::lit(500.0) }
    }
}

impl<S: Scalar> CosimConfig<S> {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol.is_finite() && self.tol > S::zero()) {
            return Err(Error::Config(format!("tol must be positive, got {}", self.tol)));
        }
        if !(self.damping > S::zero() && self.damping <= S::one()) {
            return Err(Error::Config(format!("damping must lie in (0, 1], got {}", self.damping)));
        }
        if !(self.runaway_limit > S::zero()) {
            return Err(Error::Config(format!("runaway limit must be positive, got {}", self.runaway_limit)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosimStatus {
    Converged,
    MaxIterReached,
    ThermalRunaway,
}

impl CosimStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CosimStatus::Converged => "converged",
            CosimStatus::MaxIterReached => "max_iter_reached",
            CosimStatus::ThermalRunaway => "thermal_runaway",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord<S> {
    pub iteration: usize,
    /// Block temperatures (K).
    pub temperatures: Vec<S>,
    /// Static power per block at those temperatures (W).
    pub static_power: Vec<S>,
    /// Dynamic plus static power over all blocks (W).
    pub total_power: S,
    /// Largest change one more thermal update would make (K); absent when
    /// the run stopped before evaluating it.
    pub residual: Option<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CosimReport<S> {
    pub records: Vec<IterationRecord<S>>,
    pub status: CosimStatus,
}

impl<S: Scalar> CosimReport<S> {
    /// Number of temperature updates applied.
    pub fn iterations(&self) -> usize {
        self.records.len() - 1
    }

    pub fn last(&self) -> &IterationRecord<S> {
        self.records.last().expect("report has the cold-start record")
    }

    pub fn temperatures(&self) -> &[S] {
        &self.last().temperatures
    }
}

/// Scene with one source per block carrying the given powers.
pub fn block_scene<S: Scalar>(template: &ThermalScene<S>, blocks: &[Block<S>], powers: &[S]) -> ThermalScene<S> {
    ThermalScene {
        sources: blocks.iter().zip(powers).map(|(b, &p)| b.footprint.with_power(p)).collect(),
        ..template.clone()
    }
}

fn block_temperatures<S: Scalar>(field: &ThermalField<S>, blocks: &[Block<S>]) -> Vec<S> {
    blocks.iter().map(|b| field.t_sink() + field.rise_unchecked(b.footprint.x, b.footprint.y)).collect()
}

/// One thermal update: block temperatures produced by the powers that the
/// given temperatures imply.
pub fn thermal_update<S: Scalar>(
    template: &ThermalScene<S>,
    blocks: &[Block<S>],
    tech: &Technology<S>,
    temperatures: &[S],
) -> Result<Vec<S>> {
    let powers = blocks
        .iter()
        .zip(temperatures)
        .map(|(b, &t)| Ok(b.dynamic_power + b.static_power(tech, t)?))
        .collect::<Result<Vec<S>>>()?;
    let field = block_scene(template, blocks, &powers).field()?;
    Ok(block_temperatures(&field, blocks))
}

fn max_abs_diff<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |m, (&x, &y)| {
        let d = (x - y).abs();
        if d.is_nan() {
            S::infinity()
        } else {
            m.max(d)
        }
    })
}

pub fn solve<S: Scalar>(
    template: &ThermalScene<S>,
    blocks: &[Block<S>],
    tech: &Technology<S>,
    config: &CosimConfig<S>,
) -> Result<CosimReport<S>> {
    config.validate()?;
    tech.validate()?;
    for b in blocks {
        if !(b.dynamic_power.is_finite() && b.dynamic_power >= S::zero()) {
            return Err(Error::Config(format!("block `{}` has invalid dynamic power", b.id)));
        }
        if b.gates.iter().any(|g| g.multiplicity == 0) {
            return Err(Error::Config(format!("block `{}` has a zero-multiplicity gate", b.id)));
        }
    }
    // Validates geometry once up front.
    block_scene(template, blocks, &vec![S::zero(); blocks.len()]).validate()?;

    let t_sink = template.t_sink;
    let statics =
        |temps: &[S]| -> Result<Vec<S>> { blocks.iter().zip(temps).map(|(b, &t)| b.static_power(tech, t)).collect() };
    let dynamic: S = blocks.iter().fold(S::zero(), |a, b| a + b.dynamic_power);
    let record = |iteration: usize, temperatures: Vec<S>, static_power: Vec<S>| IterationRecord {
        iteration,
        total_power: static_power.iter().fold(dynamic, |a, &p| a + p),
        temperatures,
        static_power,
        residual: None,
    };

    let mut temps = vec![t_sink; blocks.len()];
    let mut records = vec![record(0, temps.clone(), statics(&temps)?)];
    let runaway = |temps: &[S]| temps.iter().any(|&t| !(t - t_sink <= config.runaway_limit));

    let status = loop {
        let current = records.last().expect("non-empty");
        if current.static_power.iter().any(|p| !p.is_finite()) {
            break CosimStatus::ThermalRunaway;
        }
        let powers: Vec<S> = blocks.iter().zip(&current.static_power).map(|(b, &p)| b.dynamic_power + p).collect();
        let field = block_scene(template, blocks, &powers).field()?;
        let target = block_temperatures(&field, blocks);
        let residual = max_abs_diff(&target, &temps);
        records.last_mut().expect("non-empty").residual = Some(residual);

        if residual <= config.tol {
            break CosimStatus::Converged;
        }
        if !residual.is_finite() {
            break CosimStatus::ThermalRunaway;
        }
        if records.len() > config.max_iter {
            break CosimStatus::MaxIterReached;
        }
        temps = temps.iter().zip(&target).map(|(&t, &n)| t + config.damping * (n - t)).collect();
        let k = records.len();
        if runaway(&temps) {
            records.push(record(k, temps.clone(), vec![S::nan(); blocks.len()]));
            break CosimStatus::ThermalRunaway;
        }
        let s = statics(&temps)?;
        records.push(record(k, temps.clone(), s));
    };
    Ok(CosimReport { records, status })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates;

    fn template() -> ThermalScene<f64> {
        ThermalScene::new(1e-3, 1e-3, 0.5e-3, 300.0)
    }

    fn blocks(multiplicity: u64) -> Vec<Block<f64>> {
        let nand = Arc::new(gates::nand(2, 0.24e-6, 0.48e-6).unwrap());
        let inv = Arc::new(gates::inverter(0.24e-6, 0.48e-6).unwrap());
        let g = |m| {
            vec![
                GateInstance { gate: nand.clone(), inputs: vec![false, true], multiplicity: m },
                GateInstance { gate: inv.clone(), inputs: vec![true], multiplicity: m },
            ]
        };
        vec![
            Block {
                id: "a".into(),
                footprint: HeatSource::new(0.3e-3, 0.7e-3, 200e-6, 150e-6, 0.0).unwrap(),
                dynamic_power: 1.0,
                gates: g(multiplicity),
            },
            Block {
                id: "b".into(),
                footprint: HeatSource::new(0.7e-3, 0.6e-3, 150e-6, 150e-6, 0.0).unwrap(),
                dynamic_power: 0.5,
                gates: g(multiplicity),
            },
        ]
    }

    #[test]
    fn no_gates_converges_after_one_update() {
        let mut b = blocks(1);
        for blk in &mut b {
            blk.gates.clear();
        }
        let r = solve(&template(), &b, &Technology::default(), &CosimConfig::default()).unwrap();
        assert_eq!(r.status, CosimStatus::Converged);
        assert_eq!(r.iterations(), 1);
        let direct = thermal_update(&template(), &b, &Technology::default(), &[300.0, 300.0]).unwrap();
        assert_eq!(r.temperatures(), &direct[..]);
    }

    #[test]
    fn leakage_raises_fixed_point() {
        let tech = Technology::default();
        let cfg = CosimConfig::default();
        let base = solve(&template(), &blocks(1), &tech, &cfg).unwrap();
        let leaky = solve(&template(), &blocks(20_000_000), &tech, &cfg).unwrap();
        assert_eq!(leaky.status, CosimStatus::Converged);
        assert!(leaky.iterations() > 1);
        for (a, b) in base.temperatures().iter().zip(leaky.temperatures()) {
            assert!(b > a);
        }
        assert!(leaky.last().residual.unwrap() <= cfg.tol);
        // Cold start heats monotonically on the first update.
        assert!(leaky.records[1].temperatures.iter().all(|&t| t >= 300.0));
    }

    #[test]
    fn zero_iteration_budget() {
        let cfg = CosimConfig { max_iter: 0, ..CosimConfig::default() };
        let r = solve(&template(), &blocks(1), &Technology::default(), &cfg).unwrap();
        assert_eq!(r.status, CosimStatus::MaxIterReached);
        assert_eq!(r.iterations(), 0);
    }

    #[test]
    fn config_validation() {
        let tech = Technology::default();
        for cfg in [
            CosimConfig { tol: 0.0, ..CosimConfig::default() },
            CosimConfig { damping: 0.0, ..CosimConfig::default() },
            CosimConfig { damping: 1.5, ..CosimConfig::default() },
        ] {
            assert!(matches!(solve(&template(), &blocks(1), &tech, &cfg), Err(Error::Config(_))));
        }
        let mut b = blocks(1);
        b[0].footprint.x = 0.99e-3;
        assert!(solve(&template(), &b, &tech, &CosimConfig::default()).is_err());
    }
}
