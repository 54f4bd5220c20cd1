//! Project file schema and its conversion to model types.
//!
//! Geometry is given in micrometers and powers in milliwatts; everything is
//! converted to SI on load. See `docs/project-schema.md` for the field list.

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cosim::{Block, CosimConfig, GateInstance};
use crate::device::{DeviceParams, Polarity};
use crate::leakage::{gate_static_power, parse_inputs, Branch, GateNetwork, Technology, Transistor};
use crate::thermal::{HeatSource, ThermalScene, DEFAULT_IMAGE_ORDER, DEFAULT_K_SI, MAX_IMAGE_ORDER};

const UM: f64 = 1e-6;
const MW: f64 = 1e-3;

#[derive(Debug, thiserror::Error)]
pub enum ProjectError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl std::fmt::Display) -> ProjectError {
    ProjectError::Invalid { field: field.into(), message: message.to_string() }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceSection {
    /// Prefactor for W = L (A).
    pub i0: Option<f64>,
    pub n: Option<f64>,
    /// Threshold magnitude (V).
    pub v_t0: Option<f64>,
    pub gamma: Option<f64>,
    pub sigma: Option<f64>,
    /// Threshold temperature coefficient (V/K).
    pub k_t: Option<f64>,
    pub l_um: Option<f64>,
    /// Substrate bias (V).
    pub v_b: Option<f64>,
}

impl DeviceSection {
    fn resolve(&self, polarity: Polarity, t_ref: f64) -> DeviceParams<f64> {
        let d = DeviceParams::default_for(polarity);
        DeviceParams {
            i0: self.i0.unwrap_or(d.i0),
            n: self.n.unwrap_or(d.n),
            v_t0: self.v_t0.unwrap_or(d.v_t0),
            gamma: self.gamma.unwrap_or(d.gamma),
            sigma: self.sigma.unwrap_or(d.sigma),
            k_t: self.k_t.unwrap_or(d.k_t),
            l: self.l_um.map_or(d.l, |l| l * UM),
            v_b: self.v_b.unwrap_or(d.v_b),
            t_ref,
            polarity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TechnologySection {
    #[serde(default = "default_vdd")]
    pub v_dd: f64,
    #[serde(default = "default_t_ref")]
    pub t_ref: f64,
    #[serde(default = "default_k_si")]
    pub k_si: f64,
    #[serde(default)]
    pub nmos: DeviceSection,
    #[serde(default)]
    pub pmos: DeviceSection,
}

fn default_vdd() -> f64 {
    1.2
}
fn default_t_ref() -> f64 {
    300.0
}
fn default_k_si() -> f64 {
    DEFAULT_K_SI
}
fn default_image_order() -> usize {
    DEFAULT_IMAGE_ORDER
}

impl Default for TechnologySection {
    fn default() -> Self {
        Self {
            v_dd: default_vdd(),
            t_ref: default_t_ref(),
            k_si: default_k_si(),
            nmos: DeviceSection::default(),
            pmos: DeviceSection::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DieSection {
    pub width_um: f64,
    pub height_um: f64,
    pub thickness_um: f64,
    /// Heat-sink temperature (K).
    pub t_sink: f64,
    #[serde(default = "default_image_order")]
    pub image_order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceSpec {
    pub width_um: f64,
    pub input: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateSpec {
    pub name: String,
    pub num_inputs: usize,
    /// Parallel branches, each a series chain listed from the supply rail
    /// toward the output.
    pub pull_up: Vec<Vec<DeviceSpec>>,
    pub pull_down: Vec<Vec<DeviceSpec>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub gate: String,
    /// Bit string, input 0 first.
    pub inputs: String,
    #[serde(default = "one")]
    pub multiplicity: u64,
}

fn one() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    pub id: String,
    /// Footprint center (µm).
    pub x_um: f64,
    pub y_um: f64,
    pub width_um: f64,
    pub height_um: f64,
    #[serde(default)]
    pub dynamic_mw: f64,
    #[serde(default)]
    pub gates: Vec<InstanceSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosimSection {
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub damping: Option<f64>,
    pub runaway_limit: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectFile {
    #[serde(default)]
    pub technology: TechnologySection,
    pub die: DieSection,
    #[serde(default)]
    pub gates: Vec<GateSpec>,
    #[serde(default)]
    pub blocks: Vec<BlockSpec>,
    pub cosim: Option<CosimSection>,
}

/// A validated project in SI units.
#[derive(Debug, Clone)]
pub struct Project {
    pub technology: Technology<f64>,
    /// Die geometry and boundary settings; sources are left empty.
    pub scene: ThermalScene<f64>,
    /// Gate library in file order.
    pub gates: Vec<Arc<GateNetwork<f64>>>,
    pub blocks: Vec<Block<f64>>,
    pub cosim: CosimConfig<f64>,
}

impl Project {
    pub fn t_ref(&self) -> f64 {
        self.technology.nmos.t_ref
    }

    /// Scene with every block dissipating its dynamic power only.
    pub fn dynamic_scene(&self) -> ThermalScene<f64> {
        ThermalScene {
            sources: self.blocks.iter().map(|b| b.footprint.with_power(b.dynamic_power)).collect(),
            ..self.scene.clone()
        }
    }
}

pub fn load_project(path: &Path) -> Result<Project, ProjectError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ProjectError::Io { path: path.display().to_string(), source })?;
    parse_project(&text, &path.display().to_string())
}

/// Parses and validates project JSON; `origin` labels parse diagnostics.
pub fn parse_project(text: &str, origin: &str) -> Result<Project, ProjectError> {
    let file: ProjectFile = serde_json::from_str(text).map_err(|e| ProjectError::Parse {
        path: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    build_project(&file)
}

fn positive(field: &str, v: f64) -> Result<(), ProjectError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(field, format!("must be positive, got {v}")))
    }
}

fn build_gate(i: usize, g: &GateSpec) -> Result<GateNetwork<f64>, ProjectError> {
    let field = format!("gates[{i}] (`{}`)", g.name);
    let side = |branches: &[Vec<DeviceSpec>], polarity: Polarity, tag: &str| {
        branches
            .iter()
            .enumerate()
            .map(|(b, chain)| {
                let devices = chain
                    .iter()
                    .enumerate()
                    .map(|(k, d)| {
                        let f = format!("{field}.{tag}[{b}][{k}]");
                        positive(&format!("{f}.width_um"), d.width_um)?;
                        if d.input >= g.num_inputs {
                            return Err(invalid(
                                format!("{f}.input"),
                                format!("input {} out of range for {} inputs", d.input, g.num_inputs),
                            ));
                        }
                        Ok(Transistor::new(format!("{tag}{b}.{k}"), d.width_um * UM, polarity, d.input))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Branch::new(devices).map_err(|e| invalid(format!("{field}.{tag}[{b}]"), e))
            })
            .collect::<Result<Vec<_>, ProjectError>>()
    };
    let up = side(&g.pull_up, Polarity::Pmos, "pull_up")?;
    let down = side(&g.pull_down, Polarity::Nmos, "pull_down")?;
    GateNetwork::new(g.name.clone(), g.num_inputs, up, down).map_err(|e| invalid(field, e))
}

pub fn build_project(file: &ProjectFile) -> Result<Project, ProjectError> {
    let t = &file.technology;
    positive("technology.t_ref", t.t_ref)?;
    positive("technology.v_dd", t.v_dd)?;
    positive("technology.k_si", t.k_si)?;
    let technology = Technology {
        nmos: t.nmos.resolve(Polarity::Nmos, t.t_ref),
        pmos: t.pmos.resolve(Polarity::Pmos, t.t_ref),
        v_dd: t.v_dd,
    };
    technology.nmos.validate().map_err(|e| invalid("technology.nmos", e))?;
    technology.pmos.validate().map_err(|e| invalid("technology.pmos", e))?;

    let d = &file.die;
    positive("die.width_um", d.width_um)?;
    positive("die.height_um", d.height_um)?;
    positive("die.thickness_um", d.thickness_um)?;
    positive("die.t_sink", d.t_sink)?;
    if d.image_order > MAX_IMAGE_ORDER {
        return Err(invalid("die.image_order", format!("{} exceeds the cap of {MAX_IMAGE_ORDER}", d.image_order)));
    }
    let mut scene = ThermalScene::new(d.width_um * UM, d.height_um * UM, d.thickness_um * UM, d.t_sink)
        .with_image_order(d.image_order);
    scene.k_si = t.k_si;

    let mut names = BTreeSet::new();
    let mut gates = Vec::with_capacity(file.gates.len());
    for (i, g) in file.gates.iter().enumerate() {
        if !names.insert(g.name.as_str()) {
            return Err(invalid(format!("gates[{i}].name"), format!("duplicate gate `{}`", g.name)));
        }
        gates.push(Arc::new(build_gate(i, g)?));
    }

    let mut ids = BTreeSet::new();
    let mut blocks = Vec::with_capacity(file.blocks.len());
    for (i, b) in file.blocks.iter().enumerate() {
        let field = format!("blocks[{i}] (`{}`)", b.id);
        if !ids.insert(b.id.as_str()) {
            return Err(invalid(format!("blocks[{i}].id"), format!("duplicate block `{}`", b.id)));
        }
        positive(&format!("{field}.width_um"), b.width_um)?;
        positive(&format!("{field}.height_um"), b.height_um)?;
        if !(b.dynamic_mw.is_finite() && b.dynamic_mw >= 0.0) {
            return Err(invalid(format!("{field}.dynamic_mw"), format!("must be >= 0, got {}", b.dynamic_mw)));
        }
        let footprint = HeatSource::new(b.x_um * UM, b.y_um * UM, b.width_um * UM, b.height_um * UM, 0.0)
            .map_err(|e| invalid(&field, e))?;
        if !scene.contains_footprint(&footprint) {
            return Err(invalid(&field, "footprint extends beyond the die"));
        }
        let mut instances = Vec::with_capacity(b.gates.len());
        for (k, inst) in b.gates.iter().enumerate() {
            let f = format!("{field}.gates[{k}]");
            let gate = gates
                .iter()
                .find(|g| g.name() == inst.gate)
                .ok_or_else(|| invalid(format!("{f}.gate"), format!("unknown gate `{}`", inst.gate)))?;
            let inputs = parse_inputs(&inst.inputs).map_err(|e| invalid(format!("{f}.inputs"), e))?;
            if inputs.len() != gate.num_inputs() {
                return Err(invalid(
                    format!("{f}.inputs"),
                    format!("gate `{}` takes {} inputs, got {}", inst.gate, gate.num_inputs(), inputs.len()),
                ));
            }
            if inst.multiplicity == 0 {
                return Err(invalid(format!("{f}.multiplicity"), "must be at least 1"));
            }
            // Catches non-complementary vectors before any solve starts.
            gate_static_power(gate, &inputs, &technology, t.t_ref).map_err(|e| invalid(&f, e))?;
            instances.push(GateInstance { gate: gate.clone(), inputs, multiplicity: inst.multiplicity });
        }
        blocks.push(Block { id: b.id.clone(), footprint, dynamic_power: b.dynamic_mw * MW, gates: instances });
    }

    let mut cosim = CosimConfig::default();
    if let Some(c) = &file.cosim {
        cosim.tol = c.tol.unwrap_or(cosim.tol);
        cosim.max_iter = c.max_iter.unwrap_or(cosim.max_iter);
        cosim.damping = c.damping.unwrap_or(cosim.damping);
        cosim.runaway_limit = c.runaway_limit.unwrap_or(cosim.runaway_limit);
    }
    cosim.validate().map_err(|e| invalid("cosim", e))?;

    Ok(Project { technology, scene, gates, blocks, cosim })
}
